import pytest
from hypothesis import given

from quintic_mirror.constants import TWO_PI_I
from quintic_mirror.mirror_map import (
    build_mirror_map,
    delta_z,
    from_q_coordinates,
    mirror_map,
    q_after_z,
    to_q_coordinates,
    z_after_q,
)
from quintic_mirror.picard_fuchs import frobenius_solutions
from quintic_mirror.series import HalfLogSeries, UPoly, series_invert

from oracles import mirror_map_oracle
from strategies import series


@pytest.fixture(scope="module")
def mm():
    return mirror_map(8)


def test_inverse_series_matches_fixed_point_oracle(mm):
    z, _, _ = mirror_map_oracle(8)
    assert [mm.z_of_q.coeff(2 * k) for k in range(9)] == z


def test_leading_coefficients(mm):
    assert mm.z_of_q.coeff(4) == -770
    assert mm.q_series.coeff(2) == 1
    assert mm.q_series.coeff(4) == 770


def test_round_trips(mm):
    assert z_after_q(mm) == HalfLogSeries.monomial(2, 0, 1, "z", 16)
    assert q_after_z(mm) == HalfLogSeries.monomial(2, 0, 1, "q", 16)


def test_log_z_becomes_u(mm):
    basis = frobenius_solutions(8)
    # y1 / y0 = 2 pi i u exactly
    ratio = to_q_coordinates(basis.y[1] * series_invert(basis.y[0]), mm)
    assert ratio == UPoly.u().scale(TWO_PI_I).truncate(16)


def test_half_exponent_substitution(mm):
    r = HalfLogSeries.monomial(1, 0, 1, "z", 9)
    p = to_q_coordinates(r, mm)
    assert p.coeff(1, 0) == 1
    # z^(1/2) = q^(1/2) (1 - 770 q + ...)^(1/2)
    assert p.coeff(3, 0) == -385


def test_from_q_inverts_to_q(mm):
    basis = frobenius_solutions(8)
    for y in basis.y:
        assert from_q_coordinates(to_q_coordinates(y, mm), mm) == y


@given(series(order2=12, max_log=2))
def test_delta_commutes_with_substitution(f):
    mm = mirror_map(6)
    lhs = to_q_coordinates(delta_z(f, mm), mm)
    rhs = to_q_coordinates(f, mm).delta()
    assert lhs.agrees_with(rhs)


def test_u_degree_bounded():
    mm = mirror_map(6)
    for y in frobenius_solutions(6).y:
        assert to_q_coordinates(y, mm).degree <= 3


def test_build_rejects_higher_order():
    from quintic_mirror.errors import TruncationError
    with pytest.raises(TruncationError):
        build_mirror_map(frobenius_solutions(3), 5)
