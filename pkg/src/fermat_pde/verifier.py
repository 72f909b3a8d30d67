"""Substitution of a candidate solution into the PDE.

The symbolic residual is the canonical ExpPoly
``a1*(df/dz1)^n + a2*f^n - p1*exp(r) - p2*exp(s)``.  The numeric check
evaluates ``f`` and ``df/dz1`` directly at random points of the bidisk
``|z1|, |z2| <= 2`` and raises them to the n-th power there, so it does not
go through the symbolic expansion.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exp_poly import ExpPoly, ep_partial_z1, ep_pow, ep_sum
from .problem import PdeProblem

SAMPLE_RADIUS = 2.0
SOUNDNESS_BOUND = 1e-6
UNRELIABLE_FRACTION = 0.1


class VerificationInconsistency(RuntimeError):
    """The symbolic and numeric checks disagree about a zero residual."""


@dataclass(frozen=True)
class ResidualReport:
    symbolic_zero: bool
    residual: ExpPoly
    max_relative_numeric_residual: float
    sample_count: int
    seed: int
    skipped: int = 0
    unreliable: bool = False

    def __post_init__(self):
        if self.symbolic_zero and self.max_relative_numeric_residual > SOUNDNESS_BOUND:
            raise VerificationInconsistency(
                f"canonical residual is zero but numeric residual is "
                f"{self.max_relative_numeric_residual:.3g}"
            )

    def to_json(self) -> dict:
        from .parser import format_expr

        return {
            "symbolic_zero": self.symbolic_zero,
            "residual": format_expr(self.residual),
            "max_relative_numeric_residual": self.max_relative_numeric_residual,
            "sample_count": self.sample_count,
            "seed": self.seed,
            "skipped": self.skipped,
            "unreliable": self.unreliable,
        }


def residual(f: ExpPoly, problem: PdeProblem) -> ExpPoly:
    n = problem.n
    lhs1 = ep_pow(ep_partial_z1(f), n).scaled(problem.a1)
    lhs2 = ep_pow(f, n).scaled(problem.a2)
    return ep_sum([lhs1, lhs2, -problem.rhs_function()])


def sample_bidisk(count: int, seed: int, radius: float = SAMPLE_RADIUS) -> tuple[np.ndarray, np.ndarray]:
    """Uniform points in the closed bidisk ``|z1|, |z2| <= radius``."""
    rng = np.random.default_rng(seed)
    u = rng.random((2, count))
    phase = rng.random((2, count))
    z = radius * np.sqrt(u) * np.exp(2j * np.pi * phase)
    return z[0], z[1]


def numeric_residuals(f: ExpPoly, problem: PdeProblem, z1: np.ndarray, z2: np.ndarray) -> np.ndarray:
    """Relative residual per point; NaN where evaluation overflowed."""
    n = problem.n
    with np.errstate(over="ignore", invalid="ignore"):
        df = ep_partial_z1(f).eval_many(z1, z2)
        fv = f.eval_many(z1, z2)
        a = problem.a1 * df**n
        b = problem.a2 * fv**n
        rhs = problem.rhs_function().eval_many(z1, z2)
        scale = 1.0 + np.abs(a) + np.abs(b) + np.abs(rhs)
        rel = np.abs(a + b - rhs) / scale
    rel[~np.isfinite(rel) | ~np.isfinite(scale)] = np.nan
    return rel


def verify(f: ExpPoly, problem: PdeProblem, samples: int = 256, seed: int = 0) -> ResidualReport:
    if samples < 1:
        raise ValueError("samples must be at least 1")
    res = residual(f, problem)
    z1, z2 = sample_bidisk(samples, seed)
    rel = numeric_residuals(f, problem, z1, z2)
    ok = ~np.isnan(rel)
    skipped = int(samples - ok.sum())
    return ResidualReport(
        symbolic_zero=res.is_zero(),
        residual=res,
        max_relative_numeric_residual=float(rel[ok].max()) if ok.any() else 0.0,
        sample_count=samples,
        seed=seed,
        skipped=skipped,
        unreliable=skipped > UNRELIABLE_FRACTION * samples,
    )
