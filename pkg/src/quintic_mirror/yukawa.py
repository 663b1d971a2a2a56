"""Yukawa coupling, Gauss-Manin and Gromov-Witten potentials, instanton numbers."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Optional

from .constants import ConstScalar, TWO_PI_I
from .errors import ConsistencyError
from .mirror_map import MirrorMap, build_mirror_map, to_q_coordinates
from .picard_fuchs import FrobeniusBasis, frobenius_solutions
from .series import HalfLogSeries, UPoly, series_invert

STANDARD_MINUS = "standard-minus"
PAPER_PLUS = "paper-plus"
SIGN_CONVENTIONS = (STANDARD_MINUS, PAPER_PLUS)


def discriminant(sign: str = STANDARD_MINUS) -> HalfLogSeries:
    """1 - 3125 z (standard) or 1 + 3125 z (as printed in the literature source)."""
    if sign not in SIGN_CONVENTIONS:
        raise ValueError(f"unknown sign convention {sign!r}")
    return HalfLogSeries.from_integer_coeffs([1, -3125 if sign == STANDARD_MINUS else 3125])


def yukawa_z(basis: FrobeniusBasis, mm: MirrorMap, order: Optional[int] = None,
             sign: str = STANDARD_MINUS) -> HalfLogSeries:
    """5 / (disc * y0^2) * (q dz / z dq)^3 as a series in z."""
    order = min(basis.order, mm.order) if order is None else order
    N2 = 2 * order
    y0 = basis.y[0].truncate(N2)
    denom = discriminant(sign) * y0 * y0
    r = mm.theta_factor.truncate(N2)
    return (series_invert(denom) * r * r * r).scale(5)


def yukawa_q(basis: FrobeniusBasis, mm: MirrorMap, order: Optional[int] = None,
             sign: str = STANDARD_MINUS) -> HalfLogSeries:
    """The Yukawa coupling as an integer-exponent series in q."""
    y = to_q_coordinates(yukawa_z(basis, mm, order, sign), mm)
    if y.degree > 0:
        raise ConsistencyError("Yukawa coupling acquired u-dependence")
    return y.coefficient_series(0)


@dataclass(frozen=True)
class InstantonTable:
    n: Dict[int, Fraction]
    N: Dict[int, Fraction]
    order: int

    def is_integral(self) -> bool:
        return all(v.denominator == 1 for v in self.n.values())

    def divisor_sum_holds(self) -> bool:
        return all(self.N[d] == divisor_sum(self.n, d) for d in self.N)


def divisor_sum(n: Dict[int, Fraction], d: int) -> Fraction:
    """sum over k | d of n_{d/k} k^-3."""
    return sum((n.get(d // k, Fraction(0)) * Fraction(1, k ** 3)
                for k in range(1, d + 1) if d % k == 0), Fraction(0))


def extract_instantons(yq: HalfLogSeries) -> InstantonTable:
    """Read off N_d = Y_d / d^3 and peel the multiple-cover sum for n_d."""
    if yq.order2 is None:
        raise ValueError("need a truncated series")
    order = yq.order2 // 2
    N: Dict[int, Fraction] = {}
    n: Dict[int, Fraction] = {}
    for d in range(1, order + 1):
        c = yq.coeff(2 * d)
        if not c.is_rational():
            raise ConsistencyError(f"Yukawa coefficient of q^{d} is not rational: {c}")
        N[d] = c.to_fraction() / d ** 3
        n[d] = N[d] - sum((n[d // k] * Fraction(1, k ** 3)
                           for k in range(2, d + 1) if d % k == 0), Fraction(0))
    return InstantonTable(n, N, order)


def instanton_table(order: int, sign: str = STANDARD_MINUS) -> InstantonTable:
    basis = frobenius_solutions(order)
    return extract_instantons(yukawa_q(basis, build_mirror_map(basis), order, sign))


def gm_potential(basis: FrobeniusBasis) -> HalfLogSeries:
    """(5/2) (y1 y2 / y0^2 - y3 / y0)."""
    y0, y1, y2, y3 = basis.y
    inv = series_invert(y0)
    return ((y1 * y2 * inv - y3) * inv).scale(Fraction(5, 2))


def gw_potential(table: InstantonTable, order: Optional[int] = None) -> UPoly:
    """(5/6)(2 pi i)^3 u^3 + sum_d N_d q^d."""
    order = table.order if order is None else order
    coeffs = {(0, 3): TWO_PI_I ** 3 * Fraction(5, 6)}
    for d, v in table.N.items():
        if d <= order:
            coeffs[(2 * d, 0)] = ConstScalar.rational(v)
    return UPoly(coeffs, 2 * order)


def third_derivative(p: UPoly) -> UPoly:
    """delta^3 p / (2 pi i)^3."""
    return p.delta().delta().delta().scale(TWO_PI_I ** -3)
