"""Case classification and explicit entire solutions.

For ``3 <= n <= 4`` with linear right-hand exponents the admissible relations
between ``lambda1`` and ``lambda2`` are ``lambda2 = -3*lambda1``,
``lambda2 = w*lambda1`` with ``w = (1 +- sqrt(3) i)/2`` and
``lambda1 + lambda2 = 0``.  Each relation has a two-exponential solution
family ``c1(z2)*exp(alpha*z1) + c2(z2)*exp(beta*z1)`` whose amplitudes obey a
pair of multiplicative constraints; those are solved here with exponential
monomials ``c = kappa*exp(delta*z2)``, enumerating every root-of-unity and
sign branch.

For ``n >= 5`` the only solutions are ``c1*exp(s/n)`` with ``r - s`` constant
and ``s = a*z1 + g(z2)``.
"""
from __future__ import annotations

import cmath
import enum
import math
import sys
import warnings
from dataclasses import dataclass, field

from .exp_poly import ExpPoly, Poly2
from .problem import EPS_CASE, GeneralRhs, LinearRhs, PdeProblem, ProblemError
from .verifier import verify

SQRT3 = math.sqrt(3.0)
OMEGA_PLUS = 0.5 * (1 + SQRT3 * 1j)
OMEGA_MINUS = 0.5 * (1 - SQRT3 * 1j)


class CaseTag(str, enum.Enum):
    NegThreeLambda = "NegThreeLambda"
    OmegaPlus = "OmegaPlus"
    OmegaMinus = "OmegaMinus"
    SumZero = "SumZero"
    ConstantDifference = "ConstantDifference"
    NoCase = "NoCase"


class SolverError(ValueError):
    pass


class DegenerateParameterError(SolverError):
    pass


class TheoremExcludedError(SolverError):
    """No entire solution of the admissible shape exists for these parameters."""


class InconsistentCoefficientsError(SolverError):
    pass


class CoefficientMismatchWarning(UserWarning):
    def __init__(self, given: complex, required: complex):
        super().__init__(f"a1 = {given} but this family requires a1 = {required}")
        self.given = given
        self.required = required


@dataclass(frozen=True)
class SolutionBranch:
    f: ExpPoly
    case: CaseTag
    branch_indices: tuple
    required_a1: complex
    verified: bool
    notes: tuple = field(default=())

    def to_json(self) -> dict:
        from .parser import format_complex, format_expr

        return {
            "case": self.case.value,
            "branch_indices": list(self.branch_indices),
            "required_a1": format_complex(self.required_a1),
            "f": format_expr(self.f),
            "verified": self.verified,
            "notes": list(self.notes),
        }


def nth_roots(w: complex, n: int) -> list[complex]:
    """All n-th roots of ``w``, principal root first, then rotated by
    successive powers of ``exp(2*pi*i/n)``."""
    w = complex(w)
    if w == 0:
        return [0j] * n
    principal = abs(w) ** (1.0 / n) * cmath.exp(1j * cmath.phase(w) / n)
    return [_snap(principal * cmath.exp(2j * math.pi * k / n)) for k in range(n)]


def _snap(c: complex) -> complex:
    # drop roundoff-level real/imaginary parts left by the rotation
    tiny = 8 * sys.float_info.epsilon * abs(c)
    return complex(0.0 if abs(c.real) <= tiny else c.real, 0.0 if abs(c.imag) <= tiny else c.imag)


def _matches(l1: complex, l2: complex) -> CaseTag:
    tol = EPS_CASE * abs(l1)
    if abs(l2 + 3 * l1) <= tol:
        return CaseTag.NegThreeLambda
    if abs(l2 - OMEGA_PLUS * l1) <= tol:
        return CaseTag.OmegaPlus
    if abs(l2 - OMEGA_MINUS * l1) <= tol:
        return CaseTag.OmegaMinus
    if abs(l1 + l2) <= tol:
        return CaseTag.SumZero
    return CaseTag.NoCase


def classify_lambdas(lambda1: complex, lambda2: complex) -> tuple[CaseTag, bool]:
    """Return the case and whether the two right-hand terms had to be
    exchanged to match it (only ``lambda1 = -3*lambda2`` needs this; the
    other relations are closed under the exchange)."""
    lambda1, lambda2 = complex(lambda1), complex(lambda2)
    if lambda1 == 0:
        raise DegenerateParameterError("lambda1 must be non-zero")
    tag = _matches(lambda1, lambda2)
    if tag is CaseTag.NoCase and lambda2 != 0:
        swapped = _matches(lambda2, lambda1)
        if swapped is CaseTag.NegThreeLambda:
            return swapped, True
    return tag, False


def classify(problem: PdeProblem) -> CaseTag:
    rhs = problem.rhs
    if not isinstance(rhs, LinearRhs):
        raise TypeError("classify needs a problem with a linear right-hand side")
    return classify_lambdas(rhs.lambda1, rhs.lambda2)[0]


def check_a1(problem: PdeProblem, required: complex) -> CoefficientMismatchWarning | None:
    if abs(problem.a1 - required) > EPS_CASE * abs(required):
        return CoefficientMismatchWarning(problem.a1, required)
    return None


def _two_exponential(k1, d1, alpha, k2, d2, beta) -> ExpPoly:
    return ExpPoly([
        (Poly2.const(k1), Poly2({(1, 0): alpha, (0, 1): d1})),
        (Poly2.const(k2), Poly2({(1, 0): beta, (0, 1): d2})),
    ])


def _finish(problem, raw, case, required_a1, notes=()) -> list[SolutionBranch]:
    mismatch = check_a1(problem, required_a1)
    if mismatch is not None:
        warnings.warn(mismatch, stacklevel=3)
    target = problem.with_a1(required_a1)
    branches = []
    for indices, f in raw:
        report = verify(f, target)
        branches.append(SolutionBranch(f, case, indices, required_a1, report.symbolic_zero, tuple(notes)))
    return branches


def _linear_setup(problem: PdeProblem, n: int, expected: CaseTag):
    if problem.n != n:
        raise SolverError(f"this constructor handles n = {n}, got n = {problem.n}")
    if isinstance(problem.rhs, GeneralRhs):
        problem = problem.as_linear()
    tag, swapped = classify_lambdas(problem.rhs.lambda1, problem.rhs.lambda2)
    if tag is not expected:
        raise TheoremExcludedError(f"lambda relation is {tag.value}, not {expected.value}")
    work = problem.swapped() if swapped else problem
    notes = ("right-hand terms exchanged",) if swapped else ()
    return problem, work, notes


def construct_n3_case_i(problem: PdeProblem) -> list[SolutionBranch]:
    """``lambda2 = -3*lambda1``: ``f = c1*exp(l*z1) + c2*exp(-l*z1)`` with
    ``a2*c1^2*c2 = p1/6*exp(g1*z2)``, ``a2*c2^3 = p2/2*exp(g2*z2)``."""
    problem, work, notes = _linear_setup(problem, 3, CaseTag.NegThreeLambda)
    rhs = work.rhs
    lam = rhs.lambda1
    d2 = rhs.gamma2 / 3
    d1 = (rhs.gamma1 - d2) / 2
    raw = []
    for k, k2 in enumerate(nth_roots(work.p2 / (2 * work.a2), 3)):
        for sign, k1 in enumerate(nth_roots(work.p1 / (6 * work.a2 * k2), 2)):
            raw.append(((k, sign), _two_exponential(k1, d1, lam, k2, d2, -lam)))
    return _finish(problem, raw, CaseTag.NegThreeLambda, -work.a2 / lam**3, notes)


def _omega_case(problem, expected, alpha_factor, beta_factor, u_factor, v_factor, a1_sign):
    problem, work, notes = _linear_setup(problem, 3, expected)
    rhs = work.rhs
    lam = rhs.lambda1
    alpha, beta = alpha_factor * lam, beta_factor * lam
    # c1*c2^2 = u*exp(g1*z2), c1^2*c2 = v*exp(g2*z2)
    u = work.p1 * u_factor / work.a2
    v = work.p2 * v_factor / work.a2
    d1 = (2 * rhs.gamma2 - rhs.gamma1) / 3
    d2 = (2 * rhs.gamma1 - rhs.gamma2) / 3
    raw = []
    for k, prod in enumerate(nth_roots(u * v, 3)):
        raw.append(((k,), _two_exponential(v / prod, d1, alpha, u / prod, d2, beta)))
    required = a1_sign * 3 * SQRT3 * work.a2 * 1j / lam**3
    return _finish(problem, raw, expected, required, notes)


def construct_n3_case_ii(problem: PdeProblem) -> list[SolutionBranch]:
    """``lambda2 = (1+sqrt(3)i)/2*lambda1``."""
    return _omega_case(
        problem, CaseTag.OmegaPlus,
        1j * SQRT3 / 3, (3 - 1j * SQRT3) / 6,
        (3 + SQRT3 * 1j) / 18, (3 - SQRT3 * 1j) / 18,
        -1,
    )


def construct_n3_case_iii(problem: PdeProblem) -> list[SolutionBranch]:
    """``lambda2 = (1-sqrt(3)i)/2*lambda1``."""
    return _omega_case(
        problem, CaseTag.OmegaMinus,
        -1j * SQRT3 / 3, (3 + 1j * SQRT3) / 6,
        (3 - SQRT3 * 1j) / 18, (3 + SQRT3 * 1j) / 18,
        +1,
    )


def construct_n4(problem: PdeProblem) -> list[SolutionBranch]:
    """``lambda1 + lambda2 = 0``: ``f = c1*exp(l/2*z1) + c2*exp(-l/2*z1)`` with
    ``8*a2*c1^3*c2 = p1*exp(g1*z2)``, ``8*a2*c1*c2^3 = p2*exp(g2*z2)``."""
    problem, work, notes = _linear_setup(problem, 4, CaseTag.SumZero)
    rhs = work.rhs
    lam = rhs.lambda1
    u = work.p1 / (8 * work.a2)
    v = work.p2 / (8 * work.a2)
    d1 = (3 * rhs.gamma1 - rhs.gamma2) / 8
    d2 = (3 * rhs.gamma2 - rhs.gamma1) / 8
    raw = []
    for k, prod in enumerate(nth_roots(u * v, 4)):
        for sign, k1 in enumerate(nth_roots(u / prod, 2)):
            k2 = prod / k1
            # the product/ratio split can admit spurious pairs; keep exact solutions
            if abs(k1**3 * k2 - u) > 1e-9 * abs(u) or abs(k1 * k2**3 - v) > 1e-9 * abs(v):
                continue
            raw.append(((k, sign), _two_exponential(k1, d1, lam / 2, k2, d2, -lam / 2)))
    required = -16 * work.a2 / lam**4
    return _finish(problem, raw, CaseTag.SumZero, required, notes)


def _is_zero(value: complex, *parts: complex) -> bool:
    return abs(value) <= EPS_CASE * sum(abs(p) for p in parts)


def construct_n5plus(problem: PdeProblem) -> list[SolutionBranch]:
    """``f = c1*exp(s/n)`` with ``c1^n*(a1/a2*(a/n)^n + 1) = p1/a2*exp(c) + p2/a2``."""
    n = problem.n
    if n < 5:
        raise SolverError(f"this constructor handles n >= 5, got n = {n}")
    problem = problem.as_general()
    r, s = problem.rhs.r, problem.rhs.s
    diff = r - s
    if not diff.is_constant():
        raise TheoremExcludedError(
            "no entire solution family of this shape exists: r - s must reduce to a constant"
        )
    if any(i >= 1 and (i, j) != (1, 0) for (i, j), _ in s.items()):
        raise TheoremExcludedError("s must have the form a*z1 + g(z2)")
    a = s.get((1, 0))
    if a == 0:
        raise DegenerateParameterError("s does not depend on z1 (a = 0)")
    c = diff.constant_term
    ahat = problem.a1 / problem.a2
    lhs_head = ahat * (a / n) ** n
    lhs = lhs_head + 1
    p1e = problem.p1 / problem.a2 * cmath.exp(c)
    p2h = problem.p2 / problem.a2
    rhs = p1e + p2h
    lhs_zero = _is_zero(lhs, lhs_head, 1)
    rhs_zero = _is_zero(rhs, p1e, p2h)
    exponent = s.scaled(1 / n)
    case = CaseTag.ConstantDifference
    if lhs_zero and not rhs_zero:
        raise InconsistentCoefficientsError(
            "a1/a2*(a/n)^n + 1 vanishes while p1/a2*exp(c) + p2/a2 does not"
        )
    if lhs_zero and rhs_zero:
        raw = [((0,), ExpPoly.exp(exponent))]
        notes = ("indeterminate amplitude: every c1 solves; witness c1 = 1",)
    elif rhs_zero:
        raw = [((0,), ExpPoly.zero())]
        notes = ("right-hand side vanishes identically; only f = 0",)
    else:
        raw = [((k,), ExpPoly.exp(exponent, c1)) for k, c1 in enumerate(nth_roots(rhs / lhs, n))]
        notes = ()
    return _finish(problem, raw, case, problem.a1, notes)


def solve(problem: PdeProblem) -> list[SolutionBranch]:
    """Dispatch to the constructor for the problem's ``n`` and case."""
    n = problem.n
    if n >= 5:
        return construct_n5plus(problem)
    if n not in (3, 4):
        raise ProblemError(f"n = {n} is outside the classified range (n = 3, 4 or n >= 5)")
    if isinstance(problem.rhs, GeneralRhs):
        try:
            problem = problem.as_linear()
        except ProblemError as exc:
            raise ProblemError(f"for n = {n} the right-hand exponents must be linear: {exc}") from exc
    tag = classify(problem)
    if n == 4:
        if tag is not CaseTag.SumZero:
            raise TheoremExcludedError(f"for n = 4 only lambda1 + lambda2 = 0 admits solutions ({tag.value})")
        return construct_n4(problem)
    constructors = {
        CaseTag.NegThreeLambda: construct_n3_case_i,
        CaseTag.OmegaPlus: construct_n3_case_ii,
        CaseTag.OmegaMinus: construct_n3_case_iii,
    }
    if tag not in constructors:
        raise TheoremExcludedError(f"for n = 3 the lambda relation {tag.value} admits no entire solution")
    return constructors[tag](problem)
