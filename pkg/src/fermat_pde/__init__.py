"""Entire solutions of Fermat-type PDEs ``a1*(df/dz1)^n + a2*f^n = p1*exp(r) + p2*exp(s)``."""
from .exp_poly import ExpPoly, Poly2, ep_add, ep_eval, ep_is_zero, ep_mul, ep_partial_z1, ep_pow
from .nevanlinna import characteristic, order_fit, proximity, sample_sphere
from .parser import ParseError, format_expr, parse_expr
from .problem import GeneralRhs, LinearRhs, PdeProblem
from .solver import CaseTag, SolutionBranch, classify, solve
from .verifier import ResidualReport, residual, verify

__all__ = [
    "CaseTag", "ExpPoly", "GeneralRhs", "LinearRhs", "ParseError", "PdeProblem", "Poly2",
    "ResidualReport", "SolutionBranch", "characteristic", "classify", "ep_add", "ep_eval",
    "ep_is_zero", "ep_mul", "ep_partial_z1", "ep_pow", "format_expr", "order_fit",
    "parse_expr", "proximity", "residual", "sample_sphere", "solve", "verify",
]
