"""Random small exponential polynomials shared by the property tests."""
import random

import numpy as np

from fermat_pde.exp_poly import ExpPoly, Poly2
from fermat_pde.verifier import sample_bidisk

EXPONENT_POOL = [-2, -1, -0.5, 0.5, 1, 2, 1j, -1j, 1 + 1j, 0.25 - 0.75j]
EXPONENT_MONOMIALS = [(1, 0), (0, 1), (2, 0), (1, 1)]
COEFF_MONOMIALS = [(0, 0), (1, 0), (0, 1)]


def random_scalar(rng: random.Random) -> complex:
    if rng.random() < 0.5:
        return rng.choice([-3, -2, -1, 1, 2, 3, 1j, -1j])
    return complex(round(rng.uniform(-2, 2), 3), round(rng.uniform(-2, 2), 3))


def random_poly(rng: random.Random, monomials, pool=None, max_terms=2) -> Poly2:
    k = rng.randint(1, max_terms)
    picks = rng.sample(monomials, k)
    return Poly2({m: (rng.choice(pool) if pool else random_scalar(rng)) for m in picks})


def random_exppoly(rng: random.Random, max_terms: int = 3) -> ExpPoly:
    terms = []
    for _ in range(rng.randint(0, max_terms)):
        coeff = random_poly(rng, COEFF_MONOMIALS)
        exponent = Poly2() if rng.random() < 0.2 else random_poly(rng, EXPONENT_MONOMIALS, EXPONENT_POOL)
        terms.append((coeff, exponent))
    return ExpPoly(terms)


def numerically_nonzero(f: ExpPoly, seed: int = 7, count: int = 64) -> bool:
    """Some point of the radius-2 bidisk where |f| clearly exceeds roundoff."""
    z1, z2 = sample_bidisk(count, seed)
    for a, b in zip(z1, z2):
        if abs(f(complex(a), complex(b))) > 1e-12 * f.magnitude_scale(complex(a), complex(b)):
            return True
    return False


def bidisk_points(count: int, seed: int):
    z1, z2 = sample_bidisk(count, seed)
    return [(complex(a), complex(b)) for a, b in zip(z1, z2)]


__all__ = ["random_exppoly", "numerically_nonzero", "bidisk_points", "np"]
