"""Parameter sets for ``a1*(df/dz1)^n + a2*f^n = p1*exp(r) + p2*exp(s)``."""
from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from typing import Union

from .exp_poly import ExpPoly, Poly2

EPS_CASE = 1e-9


class ProblemError(ValueError):
    """Invalid PDE parameters."""


@dataclass(frozen=True)
class LinearRhs:
    """Right-hand side exponents ``lambda_k*z1 + gamma_k*z2``."""

    lambda1: complex
    gamma1: complex
    lambda2: complex
    gamma2: complex

    def exponents(self) -> tuple[Poly2, Poly2]:
        r = Poly2({(1, 0): self.lambda1, (0, 1): self.gamma1})
        s = Poly2({(1, 0): self.lambda2, (0, 1): self.gamma2})
        return r, s


@dataclass(frozen=True)
class GeneralRhs:
    """Right-hand side exponents given as arbitrary polynomials."""

    r: Poly2
    s: Poly2

    def exponents(self) -> tuple[Poly2, Poly2]:
        return self.r, self.s


Rhs = Union[LinearRhs, GeneralRhs]


@dataclass(frozen=True)
class PdeProblem:
    n: int
    a1: complex
    a2: complex
    p1: complex
    p2: complex
    rhs: Rhs

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise ProblemError(f"n must be a positive integer, got {self.n!r}")
        for name in ("a1", "a2", "p1", "p2"):
            value = complex(getattr(self, name))
            if value == 0:
                raise ProblemError(f"{name} must be non-zero")
            object.__setattr__(self, name, value)
        object.__setattr__(self, "n", int(self.n))
        if isinstance(self.rhs, LinearRhs):
            rhs = LinearRhs(*(complex(v) for v in dataclasses.astuple(self.rhs)))
            object.__setattr__(self, "rhs", rhs)
            l1, l2 = rhs.lambda1, rhs.lambda2
            if abs(l1 - l2) <= EPS_CASE * max(abs(l1), abs(l2)):
                raise ProblemError("lambda1 and lambda2 must differ")

    def with_a1(self, a1: complex) -> "PdeProblem":
        return dataclasses.replace(self, a1=a1)

    def rhs_function(self) -> ExpPoly:
        r, s = self.rhs.exponents()
        return ExpPoly([(Poly2.const(self.p1), r), (Poly2.const(self.p2), s)])

    def swapped(self) -> "PdeProblem":
        """Same equation with the two right-hand terms listed in the other order."""
        if isinstance(self.rhs, LinearRhs):
            rhs = LinearRhs(self.rhs.lambda2, self.rhs.gamma2, self.rhs.lambda1, self.rhs.gamma1)
        else:
            rhs = GeneralRhs(self.rhs.s, self.rhs.r)
        return dataclasses.replace(self, p1=self.p2, p2=self.p1, rhs=rhs)

    def as_general(self) -> "PdeProblem":
        if isinstance(self.rhs, GeneralRhs):
            return self
        return dataclasses.replace(self, rhs=GeneralRhs(*self.rhs.exponents()))

    def as_linear(self) -> "PdeProblem":
        """Rewrite polynomial exponents of the form ``l*z1 + g*z2 + c`` as a
        linear right-hand side, absorbing ``exp(c)`` into the amplitude."""
        if isinstance(self.rhs, LinearRhs):
            return self
        p = [self.p1, self.p2]
        coeffs = []
        for k, poly in enumerate(self.rhs.exponents()):
            if any(m not in ((0, 0), (1, 0), (0, 1)) for m, _ in poly.items()):
                raise ProblemError("right-hand exponents are not linear")
            p[k] = p[k] * ExpPoly.exp(Poly2.const(poly.constant_term)).as_constant()
            coeffs.append((poly.get((1, 0)), poly.get((0, 1))))
        (l1, g1), (l2, g2) = coeffs
        return PdeProblem(self.n, self.a1, self.a2, p[0], p[1], LinearRhs(l1, g1, l2, g2))
