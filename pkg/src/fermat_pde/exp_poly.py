"""Exponential polynomials in two complex variables.

An :class:`ExpPoly` is a finite sum ``sum_j P_j(z1, z2) * exp(Q_j(z1, z2))``
with sparse bivariate polynomials ``P_j`` and ``Q_j``.  Every value is kept in
canonical form:

* exponent polynomials carry no constant term (it is folded into ``P_j``),
* exponents are pairwise distinct up to ``EPS_FREQ``,
* terms are sorted by a deterministic order on the exponent,
* no coefficient polynomial is zero.

Scalars are double precision complex numbers, so all comparisons are made
under the relative tolerances ``EPS_ZERO`` (coefficient pruning) and
``EPS_FREQ`` (exponent identification).
"""
from __future__ import annotations

import cmath
import functools
import math
from typing import Iterable, Mapping, Sequence

import numpy as np

EPS_ZERO = 1e-12
EPS_FREQ = 1e-9

Monomial = tuple  # (i, j): exponent of z1, exponent of z2


class EvaluationOverflow(ArithmeticError):
    """Raised when a numeric evaluation leaves the double precision range."""


def _check_finite(c: complex) -> complex:
    c = complex(c)
    if not (math.isfinite(c.real) and math.isfinite(c.imag)):
        raise ValueError(f"non-finite scalar {c!r}")
    return c


class Poly2:
    """Sparse polynomial in z1, z2 with complex coefficients.

    ``scale`` is the magnitude that pruning is relative to; it defaults to the
    largest stored coefficient.  Arithmetic passes the operand magnitudes so
    that cancellation down to roundoff level yields an exact zero.
    """

    __slots__ = ("_terms", "_maxabs")

    def __init__(self, terms: Mapping[Monomial, complex] | None = None, scale: float = 0.0):
        raw = {}
        for (i, j), c in (terms or {}).items():
            if i < 0 or j < 0:
                raise ValueError(f"negative exponent in monomial {(i, j)}")
            c = _check_finite(c)
            if c != 0:
                raw[(int(i), int(j))] = c
        top = max((abs(c) for c in raw.values()), default=0.0)
        cut = EPS_ZERO * max(top, scale)
        self._terms = {k: raw[k] for k in sorted(raw) if abs(raw[k]) > cut}
        self._maxabs = max((abs(c) for c in self._terms.values()), default=0.0)

    @classmethod
    def const(cls, c: complex) -> "Poly2":
        return cls({(0, 0): c})

    @classmethod
    def z1(cls) -> "Poly2":
        return cls({(1, 0): 1})

    @classmethod
    def z2(cls) -> "Poly2":
        return cls({(0, 1): 1})

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def get(self, mono: Monomial, default: complex = 0) -> complex:
        return self._terms.get(mono, default)

    @property
    def maxabs(self) -> float:
        return self._maxabs

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(k == (0, 0) for k in self._terms)

    @property
    def constant_term(self) -> complex:
        return self._terms.get((0, 0), 0j)

    def without_constant(self) -> "Poly2":
        return Poly2({k: c for k, c in self._terms.items() if k != (0, 0)})

    def degree(self) -> float:
        """Total degree; ``-inf`` for the zero polynomial."""
        if not self._terms:
            return -math.inf
        return max(i + j for i, j in self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __repr__(self) -> str:
        return f"Poly2({self._terms!r})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poly2):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(tuple(self._terms.items()))

    def __add__(self, other: "Poly2") -> "Poly2":
        return poly_add(self, other)

    def __sub__(self, other: "Poly2") -> "Poly2":
        return poly_add(self, -other)

    def __neg__(self) -> "Poly2":
        return Poly2({k: -c for k, c in self._terms.items()})

    def __mul__(self, other: "Poly2") -> "Poly2":
        return poly_mul(self, other)

    def scaled(self, c: complex) -> "Poly2":
        return Poly2({k: c * v for k, v in self._terms.items()})

    def __call__(self, z1: complex, z2: complex) -> complex:
        return sum((c * z1**i * z2**j for (i, j), c in self._terms.items()), 0j)

    def eval_many(self, z1: np.ndarray, z2: np.ndarray) -> np.ndarray:
        out = np.zeros(np.broadcast(z1, z2).shape, dtype=complex)
        for (i, j), c in self._terms.items():
            out += c * z1**i * z2**j
        return out


def poly_add(p: Poly2, q: Poly2) -> Poly2:
    out = dict(p.items())
    for k, c in q.items():
        out[k] = out.get(k, 0) + c
    return Poly2(out, scale=max(p.maxabs, q.maxabs))


def poly_mul(p: Poly2, q: Poly2) -> Poly2:
    out: dict = {}
    for (i1, j1), c1 in p.items():
        for (i2, j2), c2 in q.items():
            k = (i1 + i2, j1 + j2)
            out[k] = out.get(k, 0) + c1 * c2
    return Poly2(out, scale=p.maxabs * q.maxabs)


def poly_partial_z1(p: Poly2) -> Poly2:
    return Poly2({(i - 1, j): i * c for (i, j), c in p.items() if i > 0})


def poly_partial_z2(p: Poly2) -> Poly2:
    return Poly2({(i, j - 1): j * c for (i, j), c in p.items() if j > 0})


def _freq_tol(p: Poly2, q: Poly2) -> float:
    return EPS_FREQ * (1.0 + max(p.maxabs, q.maxabs))


def exponents_close(p: Poly2, q: Poly2) -> bool:
    tol = _freq_tol(p, q)
    keys = set(k for k, _ in p.items()) | set(k for k, _ in q.items())
    return all(abs(p.get(k) - q.get(k)) <= tol for k in keys)


def _exponent_cmp(p: Poly2, q: Poly2) -> int:
    # Lexicographic over monomials, then (re, im); values within tolerance tie.
    tol = _freq_tol(p, q)
    keys = sorted(set(k for k, _ in p.items()) | set(k for k, _ in q.items()))
    for k in keys:
        a, b = complex(p.get(k)), complex(q.get(k))
        if abs(a - b) <= tol:
            continue
        if abs(a.real - b.real) > tol / 2:
            return -1 if a.real < b.real else 1
        return -1 if a.imag < b.imag else 1
    return 0


class ExpTerm:
    """A single ``coeff * exp(exponent)`` with a constant-free exponent."""

    __slots__ = ("coeff", "exponent")

    def __init__(self, coeff: Poly2, exponent: Poly2):
        self.coeff = coeff
        self.exponent = exponent

    def __repr__(self) -> str:
        return f"ExpTerm({self.coeff!r}, {self.exponent!r})"


def _fold(coeff: Poly2, exponent: Poly2) -> tuple[Poly2, Poly2]:
    c0 = exponent.constant_term
    if c0 == 0:
        return coeff, exponent
    try:
        factor = cmath.exp(c0)
    except OverflowError as exc:
        raise EvaluationOverflow(f"exp({c0}) overflows") from exc
    return coeff.scaled(factor), exponent.without_constant()


def _canonicalize(raw: Iterable[tuple[Poly2, Poly2]]) -> tuple:
    items = []
    for coeff, exponent in raw:
        coeff, exponent = _fold(coeff, exponent)
        if not coeff.is_zero():
            items.append((coeff, exponent, coeff.maxabs))
    key = functools.cmp_to_key(lambda a, b: _exponent_cmp(a[1], b[1]))
    while True:
        items.sort(key=key)
        merged = []
        changed = False
        for coeff, exponent, scale in items:
            if merged and exponents_close(merged[-1][1], exponent):
                prev_coeff, prev_exp, prev_scale = merged[-1]
                s = max(prev_scale, scale)
                total = dict(prev_coeff.items())
                for k, c in coeff.items():
                    total[k] = total.get(k, 0) + c
                merged[-1] = (Poly2(total, scale=s), prev_exp, s)
                changed = True
            else:
                merged.append((coeff, exponent, scale))
        items = [m for m in merged if not m[0].is_zero()]
        if not changed:
            break
    return tuple(ExpTerm(c, e) for c, e, _ in items)


class ExpPoly:
    """Canonical exponential polynomial; immutable."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Iterable = ()):
        raw = []
        for t in terms:
            if isinstance(t, ExpTerm):
                raw.append((t.coeff, t.exponent))
            else:
                raw.append(tuple(t))
        self._terms = _canonicalize(raw)

    @classmethod
    def _from_canonical(cls, terms: tuple) -> "ExpPoly":
        obj = cls.__new__(cls)
        obj._terms = terms
        return obj

    @classmethod
    def zero(cls) -> "ExpPoly":
        return cls._from_canonical(())

    @classmethod
    def const(cls, c: complex) -> "ExpPoly":
        return cls([(Poly2.const(c), Poly2())])

    @classmethod
    def poly(cls, p: Poly2) -> "ExpPoly":
        return cls([(p, Poly2())])

    @classmethod
    def exp(cls, exponent: Poly2, coeff: complex | Poly2 = 1) -> "ExpPoly":
        if not isinstance(coeff, Poly2):
            coeff = Poly2.const(coeff)
        return cls([(coeff, exponent)])

    @property
    def terms(self) -> tuple:
        return self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self):
        return iter(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def as_poly(self) -> Poly2 | None:
        """The underlying polynomial if there is no exponential factor."""
        if not self._terms:
            return Poly2()
        if len(self._terms) == 1 and self._terms[0].exponent.is_zero():
            return self._terms[0].coeff
        return None

    def as_constant(self) -> complex | None:
        p = self.as_poly()
        if p is None or not p.is_constant():
            return None
        return p.constant_term

    def __repr__(self) -> str:
        from .parser import format_expr

        return f"ExpPoly({format_expr(self)!r})"

    def __add__(self, other):
        return ep_add(self, _lift(other))

    __radd__ = __add__

    def __sub__(self, other):
        return ep_add(self, -_lift(other))

    def __rsub__(self, other):
        return ep_add(_lift(other), -self)

    def __neg__(self) -> "ExpPoly":
        return self.scaled(-1)

    def __mul__(self, other):
        if isinstance(other, (int, float, complex)):
            return self.scaled(other)
        return ep_mul(self, other)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, n: int) -> "ExpPoly":
        return ep_pow(self, n)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExpPoly):
            try:
                other = _lift(other)
            except TypeError:
                return NotImplemented
        return canonical_equal(self, other)

    __hash__ = None

    def scaled(self, c: complex) -> "ExpPoly":
        if c == 0:
            return ExpPoly.zero()
        return ExpPoly._from_canonical(
            tuple(ExpTerm(t.coeff.scaled(c), t.exponent) for t in self._terms)
        )

    def partial_z1(self) -> "ExpPoly":
        return ep_partial_z1(self)

    def __call__(self, z1: complex, z2: complex) -> complex:
        return ep_eval(self, (z1, z2))

    def eval_many(self, z1: np.ndarray, z2: np.ndarray) -> np.ndarray:
        """Vectorised evaluation; overflowing points come back non-finite."""
        z1 = np.asarray(z1, dtype=complex)
        z2 = np.asarray(z2, dtype=complex)
        out = np.zeros(np.broadcast(z1, z2).shape, dtype=complex)
        with np.errstate(over="ignore", invalid="ignore"):
            for t in self._terms:
                out += t.coeff.eval_many(z1, z2) * np.exp(t.exponent.eval_many(z1, z2))
        return out

    def magnitude_scale(self, z1: complex, z2: complex) -> float:
        """Sum of the absolute values of the individual terms at a point."""
        total = 0.0
        for t in self._terms:
            q = t.exponent(z1, z2)
            try:
                total += abs(t.coeff(z1, z2)) * math.exp(q.real)
            except OverflowError as exc:
                raise EvaluationOverflow(str(exc)) from exc
        return total


def _lift(x) -> ExpPoly:
    if isinstance(x, ExpPoly):
        return x
    if isinstance(x, Poly2):
        return ExpPoly.poly(x)
    if isinstance(x, (int, float, complex)):
        return ExpPoly.const(x)
    raise TypeError(f"cannot use {type(x).__name__} as an ExpPoly")


def ep_add(f: ExpPoly, g: ExpPoly) -> ExpPoly:
    return ExpPoly(f.terms + g.terms)


def ep_sum(fs: Sequence[ExpPoly]) -> ExpPoly:
    """Sum of several ExpPolys, merged in one pass so cancellation is judged
    against the largest contribution rather than a partial sum."""
    return ExpPoly(t for f in fs for t in f.terms)


def ep_mul(f: ExpPoly, g: ExpPoly) -> ExpPoly:
    return ExpPoly(
        (poly_mul(s.coeff, t.coeff), poly_add(s.exponent, t.exponent))
        for s in f.terms
        for t in g.terms
    )


def ep_pow(f: ExpPoly, n: int) -> ExpPoly:
    if n < 1 or int(n) != n:
        raise ValueError(f"power must be a positive integer, got {n!r}")
    result = None
    base = f
    n = int(n)
    while True:
        if n & 1:
            result = base if result is None else ep_mul(result, base)
        n >>= 1
        if not n:
            return result
        base = ep_mul(base, base)


def ep_partial_z1(f: ExpPoly) -> ExpPoly:
    return ExpPoly(
        (
            poly_add(poly_partial_z1(t.coeff), poly_mul(t.coeff, poly_partial_z1(t.exponent))),
            t.exponent,
        )
        for t in f.terms
    )


def ep_is_zero(f: ExpPoly) -> bool:
    return not f.terms


def ep_eval(f: ExpPoly, point: tuple[complex, complex]) -> complex:
    z1, z2 = point
    total = 0j
    try:
        for t in f.terms:
            total += t.coeff(z1, z2) * cmath.exp(t.exponent(z1, z2))
    except OverflowError as exc:
        raise EvaluationOverflow(f"overflow evaluating at {point}") from exc
    if not (math.isfinite(total.real) and math.isfinite(total.imag)):
        raise EvaluationOverflow(f"non-finite value at {point}")
    return total


def canonical_equal(f: ExpPoly, g: ExpPoly) -> bool:
    """Equality as values: the canonical difference vanishes."""
    return ep_is_zero(ep_add(f, -g))


def rep_equal(f: ExpPoly, g: ExpPoly, rel_tol: float = 1e-9) -> bool:
    """Term-by-term equality of representations.

    Exponents must be identified under ``EPS_FREQ`` and coefficient
    polynomials must share their support with coefficients agreeing to
    ``rel_tol`` relative to the larger polynomial.
    """
    if len(f) != len(g):
        return False
    for s, t in zip(f.terms, g.terms):
        if not exponents_close(s.exponent, t.exponent):
            return False
        if set(k for k, _ in s.coeff.items()) != set(k for k, _ in t.coeff.items()):
            return False
        scale = max(s.coeff.maxabs, t.coeff.maxabs)
        if any(abs(c - t.coeff.get(k)) > rel_tol * scale for k, c in s.coeff.items()):
            return False
    return True


Z1 = ExpPoly.poly(Poly2.z1())
Z2 = ExpPoly.poly(Poly2.z2())
ONE = ExpPoly.const(1)
