"""Framework tests: triangular solving, measurement, verification, delta checks."""

import json
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from charmatch import exprs, specfun
from charmatch.errors import DomainError, FamilyMismatchError, SingularSystemError
from charmatch.matching import (
    CharNumbers,
    Derivative,
    EndpointDiff,
    Moments,
    Nonlinear,
    NONLINEAR_TRANSFORMS,
    TriMatrix,
    ValueNodes,
    delta_check,
    derivative_chars,
    measure,
    tri_forward_solve,
    verify_matching,
)
from charmatch.poly import Poly, monomial
from charmatch.expansions import taylor_approx


F = Fraction


# -- triangular systems ----------------------------------------------------------


def test_tri_solve_identity():
    t = TriMatrix([[1], [0, 1], [0, 0, 1]])
    c = (3, -2, 5)
    assert tri_forward_solve(t, c).values == c


def test_tri_solve_all_ones():
    t = TriMatrix([[1], [1, 1], [1, 1, 1]])
    assert tri_forward_solve(t, (1, 2, 4)).values == (1, 1, 2)


def test_tri_solve_zero_diagonal():
    t = TriMatrix([[1], [1, 0]])
    with pytest.raises(SingularSystemError):
        tri_forward_solve(t, (1, 1))


def test_trimatrix_validation():
    with pytest.raises(DomainError):
        TriMatrix([[1], [2, 3, 4]])


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=1, max_value=50), st.integers(min_value=0, max_value=10_000))
def test_tri_solve_round_trip(order, seed):
    import random

    rng = random.Random(seed)
    rows = [[rng.randint(-9, 9) for _ in range(n)] + [rng.choice([-3, -1, 1, 2, 5])]
            for n in range(order + 1)]
    t = TriMatrix(rows)
    c = [rng.randint(-50, 50) for _ in range(order + 1)]
    sol = tri_forward_solve(t, c)
    back = t.multiply(sol.values)
    assert all(a == b for a, b in zip(back, c))


# -- measurement and verification ---------------------------------------------------


def test_taylor_self_verification_is_exact():
    f = exprs.parse("exp(x)")
    c = derivative_chars(f, 0, 6)
    report = verify_matching(taylor_approx(c), c)
    assert report.passed
    assert all(r == 0 for r in report.residuals)


def test_verify_fails_on_perturbed_numbers():
    f = exprs.parse("exp(x)")
    c = derivative_chars(f, 0, 4)
    wrong = CharNumbers(c.values[:-1] + (c.values[-1] + F(1, 100),), c.family)
    report = verify_matching(taylor_approx(c), wrong)
    assert not report.passed


def test_report_json_shape():
    f = exprs.parse("sin(x)")
    c = derivative_chars(f, 0, 4)
    report = verify_matching(taylor_approx(c), c)
    data = json.loads(report.to_json())
    assert set(data) == {"kind", "order", "family", "residuals", "max_residual", "pass"}
    assert data["pass"] is True and data["order"] == 4


def test_measure_moments_exact_and_quadrature():
    p = Poly([0, 0, 1])  # x^2
    vals = measure(p, Moments(-1, 1), range(3))
    assert vals == [F(2, 3), 0, F(2, 5)]
    f = exprs.parse("sin(x)")
    got = measure(f, Moments(-1, 1), [1])[0]
    want = 2 * (math.sin(1) - math.cos(1))  # integral of x sin x over (-1,1)
    assert abs(got - want) < 1e-12


def test_measure_values_family():
    p = Poly([0, 1])
    vals = measure(p, ValueNodes((0, 2, 5)), range(3))
    assert vals == [0, 2, 5]


def test_family_mismatch_for_non_jet_target():
    class Opaque:
        def __call__(self, x):
            return 0.0

    with pytest.raises(FamilyMismatchError):
        measure(Opaque(), Derivative(0), range(3))


# -- delta checks ----------------------------------------------------------------------


def test_taylor_basis_is_delta_under_derivatives():
    basis = [monomial(n, F(1, math.factorial(n))) for n in range(6)]
    m = delta_check(basis, Derivative(0), 6)
    for i in range(6):
        for j in range(6):
            assert m[i][j] == (1 if i == j else 0)


def test_legendre_basis_is_triangular_under_moments():
    basis = [specfun.legendre_coeffs(n) for n in range(8)]
    m = delta_check(basis, Moments(-1, 1), 8)
    for i in range(8):
        for j in range(8):
            if j > i:
                assert m[i][j] == 0
        assert m[i][i] != 0


def test_bernoulli_basis_is_delta_under_endpoint_family():
    basis = [specfun.bernoulli_poly(n) * F(1, math.factorial(n)) for n in range(11)]
    m = delta_check(basis, EndpointDiff(0, 1, zeroth="integral"), 11)
    for i in range(11):
        for j in range(11):
            assert m[i][j] == (1 if i == j else 0)


# -- nonlinear transforms ----------------------------------------------------------------


def test_nonlinear_registry_roundtrips():
    for name in ("identity", "ln", "sqrt", "cube"):
        tr = NONLINEAR_TRANSFORMS[name]
        for y in (0.3, 1.7, 4.0):
            assert abs(tr.omega(tr.lam(y)) - y) < 1e-12


def test_cube_transform_on_negatives():
    tr = NONLINEAR_TRANSFORMS["cube"]
    assert tr.omega(-8.0) == -2.0


def test_nonlinear_family_measurement():
    f = exprs.parse("exp(x)")
    vals = measure(f, Nonlinear("ln", 0), range(4))
    assert vals == [0, 1, 0, 0]


def test_endpoint_family_validation():
    with pytest.raises(DomainError):
        EndpointDiff(0, 1, zeroth="nope")
    fam = EndpointDiff(0, 1, zeroth="value")
    assert fam.anchor == 0
