"""Domainwall tension on the z^(1/2) double cover, open invariants,
tension monodromy and the normal-function (extension) data.

Orientation ``sigma`` in {+1, -1} selects the branch

    T_sigma = -eta_1/2 + sigma (a_0 tau - eta_0/4),   L T_sigma = sigma (15/16 pi^2) z^(1/2),

with a_0 = 15/pi^2 and tau normalized as z^(1/2)(1 + O(z)).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict

import sympy

from .constants import INV_PI_SQUARED, PI_SQUARED, TWO_PI_I, ConstScalar
from .errors import ConsistencyError
from .filtration import Filtration, relative_weight_filtration
from .frames import (
    FrameVector,
    connection,
    double_cover_monodromy_log,
    full_turn,
    integral_periods,
    log_double_turn,
    monodromy_on_s,
    period_data,
)
from .mirror_map import to_q_coordinates
from .picard_fuchs import quintic_operator, solve_inhomogeneous
from .series import HalfLogSeries, UPoly, series_invert

PLUS, MINUS = "plus", "minus"
ORIENTATIONS = {PLUS: 1, MINUS: -1}

A0 = INV_PI_SQUARED * 15  # a_0 = 15 / pi^2
TENSION_SOURCE = INV_PI_SQUARED * Fraction(15, 16)  # 15 / (16 pi^2)
TWO_PI_SQUARED = PI_SQUARED * 2


def _sigma(orientation) -> int:
    if isinstance(orientation, int) and orientation in (1, -1):
        return orientation
    try:
        return ORIENTATIONS[orientation]
    except KeyError:
        raise ValueError(f"orientation must be one of {sorted(ORIENTATIONS)}") from None


def _frobenius_order(order2: int) -> int:
    return (order2 + 1) // 2


def tension_rhs(order2: int) -> HalfLogSeries:
    return HalfLogSeries.monomial(1, 0, TENSION_SOURCE, "z", order2)


@dataclass(frozen=True)
class Tension:
    particular: HalfLogSeries  # a_0 tau
    full: HalfLogSeries
    etas: tuple
    order2: int
    sigma: int

    @property
    def tau(self) -> HalfLogSeries:
        return self.particular.scale(A0.invert())

    @property
    def a0(self) -> ConstScalar:
        return self.particular.coeff(1)


def tension_B(order2: int, orientation=PLUS) -> Tension:
    """Tension as a z-series through z^(order2/2)."""
    if order2 < 1:
        raise ValueError("order2 must be >= 1")
    sigma = _sigma(orientation)
    data = period_data(_frobenius_order(order2))
    etas = tuple(e.truncate(order2) for e in integral_periods(data.basis))
    particular = solve_inhomogeneous(quintic_operator(), tension_rhs(order2), order2)
    full = etas[1].scale(Fraction(-1, 2)) + (particular - etas[0].scale(Fraction(1, 4))).scale(sigma)
    return Tension(particular, full, etas, order2, sigma)


def tension_A(order2: int, orientation=PLUS) -> UPoly:
    """u/2 + sigma (1/4 + X) in q-coordinates, where
    y_0 T_A = T_sigma + eta_1 + sigma eta_0 / 2 and X = a_0 tau / y_0."""
    t = tension_B(order2, orientation)
    data = period_data(_frobenius_order(order2))
    shifted = t.full + t.etas[1] + t.etas[0].scale(Fraction(t.sigma, 2))
    ratio = shifted * series_invert(data.basis.y[0].truncate(order2))
    ta = to_q_coordinates(ratio, data.mirror)
    _check_tension_shape(ta, t.sigma)
    return ta


def _check_tension_shape(ta: UPoly, sigma: int) -> None:
    if ta.degree > 1 or ta.coefficient_series(1) != HalfLogSeries.constant(
            Fraction(1, 2), "q", ta.order2):
        raise ConsistencyError("u-dependence of the A-side tension is not exactly u/2")
    rest = ta.coefficient_series(0)
    if rest.constant_term() != Fraction(sigma, 4):
        raise ConsistencyError("constant term of the A-side tension is not +-1/4")
    if any(m % 2 == 0 and m for (m, _), _ in rest.items()):
        raise ConsistencyError("A-side tension has integer q-exponents")


def open_invariants(order2: int, orientation=PLUS) -> Dict[int, Fraction]:
    """n_d = 2 pi^2 [q^(d/2)] (sigma (T_A - u/2) - 1/4) for odd d <= order2.

    These are the (rational) open Gromov-Witten invariants; see
    :func:`disk_invariants` for their integral multiple-cover reduction.
    """
    sigma = _sigma(orientation)
    ta = tension_A(order2, orientation)
    x = ta.coefficient_series(0).scale(sigma)
    out: Dict[int, Fraction] = {}
    for d in range(1, order2 + 1, 2):
        c = x.coeff(d) * TWO_PI_SQUARED
        if not c.is_rational():
            raise ConsistencyError(f"open invariant n_{d} is not rational: {c}")
        out[d] = c.to_fraction()
    return out


def disk_invariants(raw: Dict[int, Fraction], check: bool = True) -> Dict[int, Fraction]:
    """Invert n_d = sum_{k odd, k | d} m_(d/k) / k^2 for the disk counts m_d.

    With ``check`` a non-integral m_d raises ConsistencyError (it would
    signal a wrong branch or a broken pipeline).
    """
    out: Dict[int, Fraction] = {}
    for d in sorted(raw):
        if d % 2 == 0:
            raise ValueError("open invariants live in odd degree only")
        v = raw[d] - sum((out[d // k] * Fraction(1, k * k)
                          for k in range(3, d + 1, 2) if d % k == 0), Fraction(0))
        if check and v.denominator != 1:
            raise ConsistencyError(f"disk invariant m_{d} = {v} is not an integer")
        out[d] = v
    return out


# ---------------------------------------------------------------------------
# Monodromy
# ---------------------------------------------------------------------------

def monodromy_full_turn(x: HalfLogSeries) -> HalfLogSeries:
    return full_turn(x)


@dataclass(frozen=True)
class TensionMonodromyReport:
    turn_residual: HalfLogSeries  # T_inf(T) + T + eta_1 + eta_0
    branch_residual: HalfLogSeries  # T_+ + T_- + eta_1
    n_of_ratio: HalfLogSeries  # N(T / eta_0), expected -1
    unipotent: bool  # T_inf^2 - 1 nilpotent on the span of T and the periods

    @property
    def ok(self) -> bool:
        return (self.turn_residual.is_zero() and self.branch_residual.is_zero()
                and self.n_of_ratio == HalfLogSeries.constant(-1, "z", self.n_of_ratio.order2)
                and self.unipotent)


def verify_tension_monodromy(order2: int = 10) -> TensionMonodromyReport:
    tp = tension_B(order2, PLUS)
    tm = tension_B(order2, MINUS)
    eta0, eta1 = tp.etas[0], tp.etas[1]
    turn = full_turn(tp.full) + tp.full + eta1 + eta0
    branch = tp.full + tm.full + eta1
    ratio = tp.full * series_invert(eta0)
    n_ratio = log_double_turn(ratio)
    # (T^2 - 1)^5 kills T: the double turn is unipotent
    cur = tp.full
    for _ in range(5):
        cur = full_turn(full_turn(cur)) - cur
    return TensionMonodromyReport(turn, branch, n_ratio, cur.is_zero())


# ---------------------------------------------------------------------------
# Extension data
# ---------------------------------------------------------------------------

#: coordinates of the extended space: s^0, s^1, s^2, s^3 and the unit 1
EXTENDED_FRAME = "s+1"


@dataclass(frozen=True)
class ExtensionData:
    ratio: UPoly  # T / eta_0 in q-coordinates
    one_Z: FrameVector
    one_F_minus_one_Z: FrameVector
    one_Z_spl: FrameVector


def tension_ratio(order2: int, orientation=PLUS) -> UPoly:
    """T / eta_0 as a u-polynomial over q^(1/2)-series."""
    t = tension_B(order2, orientation)
    data = period_data(_frobenius_order(order2))
    return to_q_coordinates(t.full * series_invert(t.etas[0]), data.mirror)


def normal_function(order2: int, orientation=PLUS) -> ExtensionData:
    ratio = tension_ratio(order2, orientation)
    unit = UPoly.constant(TWO_PI_I ** -2)
    zero = UPoly.zero()
    one_z = FrameVector(EXTENDED_FRAME, [-ratio, zero, zero, zero, unit])
    diff = FrameVector("e", [-ratio, ratio.delta(), zero, zero])
    half_s1 = FrameVector(EXTENDED_FRAME, [0, Fraction(1, 2), 0, 0, 0])
    data = ExtensionData(ratio, one_z, diff, one_z + half_s1)
    residual = transversality_residual(data, order2)
    if not residual.is_zero():
        raise ConsistencyError(f"Griffiths transversality fails: {residual}")
    return data


def transversality_residual(data: ExtensionData, order2: int) -> UPoly:
    """e^0-coefficient of nabla_delta (1_F - 1_Z)."""
    y = period_data(_frobenius_order(order2)).yukawa
    return connection(data.one_F_minus_one_Z, y)[0]


def monodromy_extended(v: FrameVector) -> FrameVector:
    """N on the extended space: the unit vector is invariant, s^p transform
    by the double-cover matrix, coefficients by 2 d/du."""
    return monodromy_on_s(v)


def extended_monodromy_matrix(order2: int = 3, orientation=PLUS) -> sympy.Matrix:
    """N on the basis (s^0, s^1, s^2, s^3, 1_Z); columns are images.

    The last column is N(1_Z) computed from the tension, which must be a
    constant combination of the s^p."""
    n = sympy.zeros(5)
    n[:4, :4] = double_cover_monodromy_log()
    image = monodromy_extended(normal_function(order2, orientation).one_Z)
    for i in range(5):
        c = image[i]
        if any(key != (0, 0) for key, _ in c.items()):
            raise ConsistencyError(f"N(1_Z) has a non-constant coordinate: {c}")
        f = c.constant_term().to_fraction()
        n[i, 4] = sympy.Rational(f.numerator, f.denominator)
    return n


def extended_weight_filtration() -> Filtration:
    """W_3 = span(s^0..s^3), W_4 = everything."""
    e = lambda i: [1 if j == i else 0 for j in range(5)]
    return Filtration.from_vectors({3: [e(i) for i in range(4)], 4: [e(i) for i in range(5)]}, 5)


def extended_relative_filtration() -> Filtration:
    return relative_weight_filtration(extended_monodromy_matrix(), extended_weight_filtration())


# ---------------------------------------------------------------------------
# Log point
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LogPointData:
    tension: UPoly  # polynomial in v (stored in the u slot)
    one_F_minus_one_Z: FrameVector


def restrict_to_log_point(ratio: UPoly, tau_ratio: UPoly, sigma: int = 1) -> UPoly:
    """u -> v, q-series -> constant terms; the tau part is replaced by the
    leading coefficient of tau / q^(1/2)."""
    non_tau = ratio - tau_ratio.scale(A0 * sigma)
    lead = tau_ratio.coefficient_series(0).shift2(-1).constant_term()
    return non_tau.q_constant_terms() + UPoly.constant(A0 * lead * sigma)


def log_point_restriction(order2: int = 3, orientation=PLUS) -> LogPointData:
    sigma = _sigma(orientation)
    t = tension_B(order2, orientation)
    data = period_data(_frobenius_order(order2))
    inv_y0 = series_invert(t.etas[0])
    ratio = to_q_coordinates(t.full * inv_y0, data.mirror)
    tau_ratio = to_q_coordinates(t.tau * inv_y0, data.mirror)
    t0 = restrict_to_log_point(ratio, tau_ratio, sigma)
    diff = FrameVector("e", [-t0, t0.d_du(), 0, 0])
    return LogPointData(t0, diff)
