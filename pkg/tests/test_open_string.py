from fractions import Fraction

import pytest
import sympy

from quintic_mirror import open_string as o
from quintic_mirror.constants import ConstScalar, TWO_PI_I
from quintic_mirror.errors import ConsistencyError
from quintic_mirror.frames import FrameVector
from quintic_mirror.picard_fuchs import quintic_operator
from quintic_mirror.series import HalfLogSeries, UPoly

from oracles import open_invariant_oracle, tension_tau_oracle

RAW = {
    1: Fraction(30),
    3: Fraction(4600, 3),
    5: Fraction(5441256, 5),
    7: Fraction(47823842250, 49),
    9: Fraction(28973369597500, 27),
    11: Fraction(160812279574853640, 121),
    13: Fraction(301152359429255569200, 169),
}
DISK = [30, 1530, 1088250, 975996780, 1073087762700, 1329027103924410,
        1781966623841748930, 2528247216911976589500]


def test_source_constant():
    # 15/(16 pi^2) = -(15/4) (2 pi i)^-2
    assert o.TENSION_SOURCE == ConstScalar.two_pi_i(-2, Fraction(-15, 4))
    assert o.A0 == ConstScalar.two_pi_i(-2, -60)


def test_tau_against_recurrence_oracle():
    t = o.tension_B(11)
    tau = tension_tau_oracle(11)
    assert all(t.tau.coeff(m) == tau[m] for m in range(1, 12, 2))


@pytest.mark.parametrize("orientation", [o.PLUS, o.MINUS])
def test_tension_equation(orientation):
    t = o.tension_B(15, orientation)
    rhs = o.tension_rhs(15).scale(t.sigma)
    assert quintic_operator()(t.full) == rhs


def test_branch_and_turn_relations():
    report = o.verify_tension_monodromy(13)
    assert report.ok
    assert report.n_of_ratio == HalfLogSeries.constant(-1, "z", 13)


def test_open_invariants_match_oracle():
    assert o.open_invariants(13) == RAW
    assert o.open_invariants(9) == open_invariant_oracle(9)


def test_minus_orientation_gives_same_invariants():
    assert o.open_invariants(9, o.MINUS) == o.open_invariants(9, o.PLUS)


def test_stability_across_orders():
    low, high = o.open_invariants(9), o.open_invariants(15)
    assert all(high[d] == v for d, v in low.items())


def test_disk_invariants_are_integers():
    disk = o.disk_invariants(o.open_invariants(15))
    assert [disk[d] for d in range(1, 16, 2)] == DISK


def test_disk_invariants_reject_non_integral():
    with pytest.raises(ConsistencyError):
        o.disk_invariants({1: Fraction(1, 2)})
    assert o.disk_invariants({1: Fraction(1, 2)}, check=False) == {1: Fraction(1, 2)}


def test_tension_a_shape():
    ta = o.tension_A(9)
    assert ta.coefficient_series(1) == HalfLogSeries.constant(Fraction(1, 2), "q", 9)
    assert ta.coefficient_series(0).constant_term() == Fraction(1, 4)


def test_normal_function_data():
    data = o.normal_function(12)
    assert o.transversality_residual(data, 12).is_zero()
    assert o.monodromy_extended(data.one_Z).agrees_with(
        FrameVector(o.EXTENDED_FRAME, [1, 0, 0, 0, 0]))
    assert o.monodromy_extended(data.one_Z_spl).is_zero()


def test_extended_monodromy_matrix():
    R = sympy.Rational
    assert o.extended_monodromy_matrix() == sympy.Matrix([
        [0, -2, 15, R(20, 3), 1],
        [0, 0, -10, -5, 0],
        [0, 0, 0, -2, 0],
        [0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0],
    ])


def test_relative_filtration_dimensions():
    m = o.extended_relative_filtration()
    assert m.dimensions(range(0, 7)) == (1, 1, 2, 2, 4, 4, 5)


def test_log_point():
    lp = o.log_point_restriction()
    v = UPoly.u()
    expected = -v.scale(Fraction(1, 2)) - UPoly.constant(Fraction(1, 4)) + UPoly.constant(o.A0)
    assert lp.tension == expected
    assert lp.one_F_minus_one_Z[1] == UPoly.constant(Fraction(-1, 2))


def test_orientation_validation():
    with pytest.raises(ValueError):
        o.tension_B(5, "sideways")
    with pytest.raises(ValueError):
        o.tension_B(0)
