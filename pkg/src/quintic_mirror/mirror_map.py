"""Mirror map: t = y1/y0, u = t/(2 pi i), q = exp(t), its inverse z(q), and
the derivation delta = d/du in both coordinates."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Optional, Tuple

from .constants import ONE, TWO_PI_I, ZERO, ConstScalar
from .errors import TruncationError
from .picard_fuchs import FrobeniusBasis, frobenius_solutions
from .series import (
    HalfLogSeries,
    UPoly,
    compose_half,
    series_exp,
    series_invert,
    series_log,
    series_reversion,
)


@dataclass(frozen=True)
class MirrorMap:
    """``q_of_z`` is q/z as a series in z; ``z_of_q`` is z(q).

    Derived series kept for substitutions: ``g = f1/f0`` (so q = z e^g),
    ``w = z(q)/q``, ``log_w = log w`` and ``w_half = w^(1/2)``.
    """

    q_of_z: HalfLogSeries
    z_of_q: HalfLogSeries
    order: int
    g: HalfLogSeries
    w: HalfLogSeries
    log_w: HalfLogSeries
    w_half: HalfLogSeries
    theta_factor: HalfLogSeries  # 1 / (1 + theta g)

    @property
    def q_series(self) -> HalfLogSeries:
        """q(z) = z * (q/z)."""
        return self.q_of_z.shift2(2)


def build_mirror_map(basis: FrobeniusBasis, order: Optional[int] = None) -> MirrorMap:
    order = basis.order if order is None else order
    if order > basis.order:
        raise TruncationError(f"basis order {basis.order} < requested {order}")
    N2 = 2 * order
    f0, f1 = basis.f[0].truncate(N2), basis.f[1].truncate(N2)
    g = f1 * series_invert(f0)
    q_over_z = series_exp(g)
    z_of_q = series_reversion(q_over_z.shift2(2), var="q")
    w = z_of_q.shift2(-2)
    log_w = series_log(w)
    w_half = series_exp(log_w.scale(Fraction(1, 2)))
    theta_factor = series_invert(1 + g.theta())
    return MirrorMap(q_over_z, z_of_q, order, g, w, log_w, w_half, theta_factor)


def mirror_map(order: int) -> MirrorMap:
    return build_mirror_map(frobenius_solutions(order), order)


def to_q_coordinates(f: HalfLogSeries, mm: MirrorMap) -> UPoly:
    """Rewrite a z-series in (u, q): log z -> 2 pi i u + log(z(q)/q) and
    z^(m/2) -> q^(m/2) (z(q)/q)^(m/2)."""
    if f.var != "z":
        raise ValueError("expected a series in z")
    ell = UPoly({(0, 1): TWO_PI_I}) + UPoly.from_series(mm.log_w)
    result = UPoly.zero("q", _order_bound(f, mm))
    ell_pow = UPoly.constant(1, "q")
    for k, part in enumerate(f.parts()):
        if k:
            ell_pow = ell_pow * ell
        if part.is_zero():
            continue
        part_q = compose_half(part.truncate(_order_bound(f, mm)), mm.w_half, "q")
        result = result + UPoly.from_series(part_q) * ell_pow
    return result


def _order_bound(f: HalfLogSeries, mm: MirrorMap) -> int:
    bound = 2 * mm.order
    return bound if f.order2 is None else min(bound, f.order2)


def from_q_coordinates(p: UPoly, mm: MirrorMap) -> HalfLogSeries:
    """Inverse of :func:`to_q_coordinates`: u -> (log z + g)/(2 pi i) and
    q^(m/2) -> z^(m/2) exp(m g / 2)."""
    inv = TWO_PI_I.invert()
    u_z = (HalfLogSeries.log() + mm.g).scale(inv)
    half_g = mm.g.scale(Fraction(1, 2))
    e_half = series_exp(half_g)
    bound = 2 * mm.order if p.order2 is None else min(2 * mm.order, p.order2)
    result = HalfLogSeries.zero("z", bound)
    u_pow = HalfLogSeries.constant(1)
    for k in range(p.degree + 1):
        if k:
            u_pow = u_pow * u_z
        series_k = p.coefficient_series(k).truncate(bound)
        if series_k.is_zero():
            continue
        as_z = HalfLogSeries(dict(series_k.items()), series_k.order2, "z")
        part = compose_half(as_z, e_half, "z")
        result = result + part * u_pow
    return result.truncate(bound)


def delta(f: UPoly) -> UPoly:
    return f.delta()


def delta_z(f: HalfLogSeries, mm: MirrorMap) -> HalfLogSeries:
    """d/du on z-series: 2 pi i * theta / (1 + theta g)."""
    return (mm.theta_factor * f.theta()).scale(TWO_PI_I)


def z_after_q(mm: MirrorMap) -> HalfLogSeries:
    """z(q(z)) as a series in z (should be z)."""
    return compose_half(mm.z_of_q, series_exp(mm.g.scale(Fraction(1, 2))), "z")


def q_after_z(mm: MirrorMap) -> HalfLogSeries:
    """q(z(q)) as a series in q (should be q)."""
    return compose_half(mm.q_series, mm.w_half, "q")
