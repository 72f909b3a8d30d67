import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fermat_pde.exp_poly import ExpPoly, Poly2, canonical_equal, ep_partial_z1, ep_pow, rep_equal
from fermat_pde.parser import parse_expr, parse_poly
from fermat_pde.problem import GeneralRhs, LinearRhs, PdeProblem
from fermat_pde.solver import construct_n3_case_i
from fermat_pde.verifier import (
    ResidualReport,
    VerificationInconsistency,
    residual,
    sample_bidisk,
    verify,
)
from helpers import random_exppoly

CASE_I = PdeProblem(3, -1, 1, 6, 2, LinearRhs(1, 0, -3, 0))
SINE = "(1/(2i))*(exp(i*(z1+z2^2)) - exp(-i*(z1+z2^2)))"


def test_case_i_fixture_residual_zero():
    assert residual(parse_expr("exp(z1) + exp(-z1)"), CASE_I).is_zero()


def test_sine_solves_unit_rhs():
    problem = PdeProblem(2, 1, 1, 0.5, 0.5, GeneralRhs(Poly2(), Poly2()))
    assert residual(parse_expr(SINE), problem).is_zero()


def test_wrong_candidate_residual_by_hand():
    # f = e^{z1}: -(e^{z1})^3 + (e^{z1})^3 cancels, leaving -6e^{z1} - 2e^{-3z1}
    res = residual(parse_expr("exp(z1)"), CASE_I)
    expected = ExpPoly.exp(Poly2.z1(), -6) + ExpPoly.exp(Poly2({(1, 0): -3}), -2)
    assert rep_equal(res, expected)


def test_verified_branch_numeric_residual():
    branch = construct_n3_case_i(CASE_I)[0]
    report = verify(branch.f, CASE_I, samples=256, seed=3)
    assert report.symbolic_zero
    assert report.max_relative_numeric_residual <= 1e-9
    assert report.sample_count == 256 and report.skipped == 0 and not report.unreliable


def test_zero_candidate_fails():
    report = verify(ExpPoly.zero(), CASE_I)
    assert not report.symbolic_zero
    assert canonical_equal(report.residual, -CASE_I.rhs_function())


def test_damped_sine_fixture():
    f = parse_expr("exp(z2)*(1/(2i))*(exp(i*(z1+z2)) - exp(-i*(z1+z2)))")
    problem = PdeProblem(2, 1, 1, 0.5, 0.5, GeneralRhs(parse_poly("2*z2"), parse_poly("2*z2")))
    report = verify(f, problem)
    assert report.symbolic_zero
    assert report.max_relative_numeric_residual <= 1e-9


def test_verify_deterministic():
    f = parse_expr("exp(z1) + 2*exp(z2)")
    a = verify(f, CASE_I, samples=50, seed=9)
    b = verify(f, CASE_I, samples=50, seed=9)
    assert a.max_relative_numeric_residual == b.max_relative_numeric_residual
    assert a.to_json() == b.to_json()


def test_overflowing_points_are_skipped():
    f = parse_expr("exp(400*z1)")
    report = verify(f, CASE_I, samples=200, seed=1)
    assert report.skipped > 0
    assert report.unreliable == (report.skipped > 20)


def test_verify_rejects_no_samples():
    with pytest.raises(ValueError):
        verify(ExpPoly.zero(), CASE_I, samples=0)


def test_report_soundness_invariant():
    with pytest.raises(VerificationInconsistency):
        ResidualReport(True, ExpPoly.zero(), 0.5, 10, 0)


def test_sample_bidisk_inside_radius():
    z1, z2 = sample_bidisk(1000, 2)
    assert np.all(np.abs(z1) <= 2) and np.all(np.abs(z2) <= 2)


@given(st.integers(0, 2**32 - 1), st.complex_numbers(min_magnitude=0.1, max_magnitude=10))
@settings(max_examples=50, deadline=None)
def test_residual_linear_in_a1(seed, t):
    f = random_exppoly(random.Random(seed), max_terms=2)
    base = residual(f, CASE_I)
    scaled = residual(f, CASE_I.with_a1(t * CASE_I.a1))
    extra = ep_pow(ep_partial_z1(f), 3).scaled((t - 1) * CASE_I.a1)
    assert canonical_equal(scaled, base + extra)
