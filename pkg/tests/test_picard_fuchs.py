from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from quintic_mirror.constants import ConstScalar
from quintic_mirror.errors import AmbiguityError
from quintic_mirror.picard_fuchs import (
    ThetaOperator,
    frobenius_jets,
    frobenius_solutions,
    quintic_operator,
    solve_inhomogeneous,
)
from quintic_mirror.series import HalfLogSeries

from oracles import frobenius_jet_oracle


def test_operator_shape():
    L = quintic_operator()
    assert L.theta_degree == 4 and L.z_degree == 1
    assert L.theta_polynomial(0) == [0, 0, 0, 0, 1]
    # -5 (5t+1)(5t+2)(5t+3)(5t+4) at t = 0 and t = 1
    assert L.indicial(1, 0) == -5 * 24
    assert L.indicial(1, 1) == -5 * 6 * 7 * 8 * 9


def test_theta_operator_is_euler_derivative():
    th = ThetaOperator.theta()
    f = HalfLogSeries.from_integer_coeffs([3, 1, 4, 1, 5])
    assert th(f) == f.theta()


def test_jets_match_symbolic_expansion():
    assert frobenius_jets(6) == frobenius_jet_oracle(6)


def test_known_series_values():
    b = frobenius_solutions(3)
    assert [b.f[0].coeff(2 * n) for n in range(4)] == [1, 120, 113400, 168168000]
    assert b.f[1].coeff(2) == 770
    # f_2 = 2 [rho^2] c_n
    assert b.f[2].coeff(2) == 2 * 575


@pytest.mark.parametrize("order", [1, 4, 12])
def test_annihilation(order):
    L = quintic_operator()
    for y in frobenius_solutions(order).y:
        assert L(y).is_zero()


@pytest.mark.parametrize("j", range(4))
def test_log_degree(j):
    y = frobenius_solutions(4).y[j]
    assert y.degree == j
    assert y.coeff(0, j) == Fraction(1, [1, 1, 2, 6][j])


def test_leading_terms_are_log_powers():
    b = frobenius_solutions(2)
    ell = HalfLogSeries.log()
    assert b.y[1].part(1) == b.f[0]
    assert b.y[2].part(2) == b.f[0].scale(Fraction(1, 2))
    assert b.y[3].part(0) == b.f[3].scale(Fraction(1, 6))


def test_inhomogeneous_tension_source():
    L = quintic_operator()
    rhs = HalfLogSeries.monomial(1, 0, 1, "z", 11)
    a = solve_inhomogeneous(L, rhs)
    assert L(a) == rhs
    assert a.is_half_odd()
    # leading coefficient: (1/2)^4 a_1 = 1
    assert a.coeff(1) == 16


@pytest.mark.parametrize("bad", [
    HalfLogSeries.monomial(2, 0, 1, "z", 6),
    HalfLogSeries.monomial(1, 1, 1, "z", 6),
])
def test_inhomogeneous_rejects_ambiguous_sources(bad):
    with pytest.raises(AmbiguityError):
        solve_inhomogeneous(quintic_operator(), bad)


@given(st.lists(st.fractions(-5, 5, max_denominator=6), min_size=1, max_size=4),
       st.integers(1, 4))
def test_inhomogeneous_round_trip(coeffs, degree):
    rhs = HalfLogSeries({(2 * i + 1, 0): c for i, c in enumerate(coeffs)}, 2 * degree + 7)
    L = quintic_operator()
    assert L(solve_inhomogeneous(L, rhs)) == rhs


def test_order_validation():
    with pytest.raises(ValueError):
        frobenius_solutions(0)
