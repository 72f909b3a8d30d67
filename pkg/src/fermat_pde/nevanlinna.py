"""Monte Carlo growth characteristics of entire exponential polynomials.

The proximity function is the average of ``log+ |f|`` over the sphere
``|z1|^2 + |z2|^2 = r^2`` against the unitarily invariant probability
measure.  For entire ``f`` there are no poles, so the characteristic equals
the proximity function.  The order is read off as a log-log slope.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .exp_poly import ExpPoly


@dataclass(frozen=True)
class SpherePoint:
    z1: complex
    z2: complex
    radius: float

    def __post_init__(self):
        norm = math.hypot(abs(self.z1), abs(self.z2))
        if abs(norm - self.radius) > 1e-12 * self.radius:
            raise ValueError(f"point has norm {norm}, expected {self.radius}")


@dataclass(frozen=True)
class GrowthCurve:
    points: tuple  # (r, m_estimate, stderr) triples
    order_estimate: float
    order_ci_halfwidth: float
    raw_slope: float
    growth_class: str  # "power", "logarithmic" or "bounded"

    @property
    def degenerate(self) -> bool:
        return math.isinf(self.order_ci_halfwidth)


def sphere_arrays(r: float, count: int, seed: int) -> tuple[np.ndarray, np.ndarray]:
    """``count`` points of the sphere of radius ``r`` in C^2 as two arrays."""
    if count < 1:
        raise ValueError("count must be at least 1")
    if not r > 0:
        raise ValueError("radius must be positive")
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((4, count))
    g *= r / np.sqrt(np.sum(g * g, axis=0))
    return g[0] + 1j * g[1], g[2] + 1j * g[3]


def sample_sphere(r: float, count: int, seed: int) -> list[SpherePoint]:
    z1, z2 = sphere_arrays(r, count, seed)
    return [SpherePoint(complex(a), complex(b), float(r)) for a, b in zip(z1, z2)]


def log_abs(f: ExpPoly, z1: np.ndarray, z2: np.ndarray) -> np.ndarray:
    """``log |f|`` computed term-wise in log space, so huge exponents such as
    ``exp(z1^2)`` at ``r = 100`` never overflow."""
    z1 = np.asarray(z1, dtype=complex)
    z2 = np.asarray(z2, dtype=complex)
    if f.is_zero():
        return np.full(z1.shape, -np.inf)
    logs = []
    phases = []
    with np.errstate(divide="ignore"):
        for t in f.terms:
            p = t.coeff.eval_many(z1, z2)
            q = t.exponent.eval_many(z1, z2)
            logs.append(np.log(np.abs(p)) + q.real)
            phases.append(np.angle(p) + q.imag)
    logs = np.array(logs)
    phases = np.array(phases)
    top = logs.max(axis=0)
    finite_top = np.where(np.isfinite(top), top, 0.0)
    with np.errstate(invalid="ignore", divide="ignore"):
        total = np.sum(np.exp(logs - finite_top) * np.exp(1j * phases), axis=0)
        out = finite_top + np.log(np.abs(total))
    out[~np.isfinite(top)] = -np.inf
    return out


def proximity(f: ExpPoly, r: float, count: int, seed: int) -> tuple[float, float]:
    """Mean and standard error of ``log+ |f|`` over the sphere of radius r."""
    if f.is_zero():
        raise ValueError("proximity of the zero function is undefined")
    z1, z2 = sphere_arrays(r, count, seed)
    values = np.maximum(log_abs(f, z1, z2), 0.0)
    mean = float(np.mean(values))
    stderr = float(np.std(values, ddof=1) / math.sqrt(count)) if count > 1 else 0.0
    return mean, stderr


def characteristic(f: ExpPoly, r: float, count: int, seed: int) -> tuple[float, float]:
    # entire functions have no poles, so the counting term is zero
    return proximity(f, r, count, seed)


def _line_fit(x: np.ndarray, y: np.ndarray) -> tuple[float, float, float]:
    """Least-squares slope, intercept and slope standard error."""
    n = len(x)
    xm, ym = x.mean(), y.mean()
    sxx = float(np.sum((x - xm) ** 2))
    slope = float(np.sum((x - xm) * (y - ym)) / sxx)
    intercept = float(ym - slope * xm)
    resid = y - (intercept + slope * x)
    se = math.sqrt(float(np.sum(resid**2)) / (n - 2) / sxx) if n > 2 else math.inf
    return slope, intercept, se


def _logarithmic(log_r, m, stderr) -> bool:
    # m = A + B log r within noise plus 2% means T(r) = O(log r): order zero
    slope, intercept, _ = _line_fit(log_r, m)
    resid = np.abs(m - (intercept + slope * log_r))
    return slope >= 0 and bool(np.all(resid <= 3 * stderr + 0.02 * np.abs(m)))


def order_fit(f: ExpPoly, r_grid, count: int, seed: int) -> GrowthCurve:
    """Estimate the order from ``m(r)`` on ``r_grid``.

    The order is the least-squares slope of ``log m`` against ``log r`` over
    the upper half of the grid.  When ``m`` is affine in ``log r`` there (the
    polynomial case) the order is reported as 0 and the raw slope is kept.
    """
    radii = [float(r) for r in r_grid]
    if len(radii) < 6:
        raise ValueError("r_grid needs at least 6 values")
    if any(b <= a for a, b in zip(radii, radii[1:])) or radii[0] <= 0:
        raise ValueError("r_grid must be positive and strictly increasing")
    if radii[-1] / radii[0] < 10:
        raise ValueError("r_grid must span at least a factor of 10")
    points = tuple((r, *proximity(f, r, count, seed)) for r in radii)
    upper = points[len(points) // 2:]
    r_up = np.array([p[0] for p in upper])
    m_up = np.array([p[1] for p in upper])
    se_up = np.array([p[2] for p in upper])
    keep = m_up > 0
    if keep.sum() < 3:
        return GrowthCurve(points, 0.0, math.inf, 0.0, "bounded")
    log_r = np.log(r_up[keep])
    slope, _, slope_se = _line_fit(log_r, np.log(m_up[keep]))
    # propagate the Monte Carlo error of log m into the slope
    rel = se_up[keep] / m_up[keep]
    mc_se = float(np.sqrt(np.sum(rel**2)) / np.sqrt(np.sum((log_r - log_r.mean()) ** 2)))
    halfwidth = 2.0 * math.hypot(slope_se, mc_se)
    if _logarithmic(log_r, m_up[keep], se_up[keep]):
        return GrowthCurve(points, 0.0, halfwidth, slope, "logarithmic")
    return GrowthCurve(points, slope, halfwidth, slope, "power")
