"""One-shot invariant suite: every structural property the package promises,
checked exactly at a given order."""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List, Tuple

import sympy

from . import cohomology, frames, open_string
from .constants import ConstScalar, ONE
from .errors import QuinticMirrorError
from .mirror_map import (
    build_mirror_map,
    delta_z,
    q_after_z,
    to_q_coordinates,
    z_after_q,
)
from .picard_fuchs import frobenius_solutions, quintic_operator, solve_inhomogeneous
from .series import (
    HalfLogSeries,
    UPoly,
    series_exp,
    series_invert,
    series_log,
    series_reversion,
)
from .yukawa import extract_instantons, gm_potential, third_derivative, yukawa_q


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name}" + (f": {self.detail}" if self.detail else "")


def _random_scalar(rng: random.Random, zeta: bool = True) -> ConstScalar:
    terms = {}
    for _ in range(rng.randint(1, 3)):
        terms[(rng.randint(-3, 3), rng.randint(0, 1) if zeta else 0)] = Fraction(
            rng.randint(-9, 9), rng.randint(1, 5))
    return ConstScalar(terms)


def _random_series(rng: random.Random, order2: int, logs: int = 1, zeta: bool = False) -> HalfLogSeries:
    coeffs = {}
    for _ in range(rng.randint(1, 5)):
        coeffs[(rng.randint(0, order2), rng.randint(0, logs))] = _random_scalar(rng, zeta)
    return HalfLogSeries(coeffs, order2)


def _unit_series(rng: random.Random, order2: int) -> HalfLogSeries:
    coeffs = {(0, 0): ONE}
    for m in range(2, order2 + 1, 2):
        coeffs[(m, 0)] = ConstScalar.rational(Fraction(rng.randint(-5, 5), rng.randint(1, 3)))
    return HalfLogSeries(coeffs, order2)


# -- core arithmetic ------------------------------------------------------------

def check_ring_axioms(order: int) -> bool:
    rng = random.Random(20240601)
    for _ in range(10):
        a, b, c = (_random_scalar(rng, zeta=False) for _ in range(3))
        d = _random_scalar(rng)
        if (a * b) * c != a * (b * c) or a * (b + c) != a * b + a * c or a * d != d * a:
            return False
        f, g, h = (_random_series(rng, order) for _ in range(3))
        if (f * g) * h != f * (g * h) or f * (g + h) != f * g + f * h or f * g != g * f:
            return False
    return True


def check_invert(order: int) -> bool:
    rng = random.Random(7)
    for _ in range(5):
        f = _unit_series(rng, 2 * order)
        if f * series_invert(f) != HalfLogSeries.constant(1, "z", 2 * order):
            return False
    return True


def check_reversion(order: int) -> bool:
    rng = random.Random(11)
    for _ in range(3):
        f = _unit_series(rng, 2 * order).shift2(2).truncate(2 * order)
        g = series_reversion(f)
        # f(g(x)): substitute x = g into f via powers
        lhs = _compose_integer(f, g)
        rhs = _compose_integer(g, f)
        x = HalfLogSeries.monomial(2, 0, 1, "z", 2 * order)
        if not (lhs.agrees_with(x) and rhs.agrees_with(x)):
            return False
    return True


def _compose_integer(f: HalfLogSeries, g: HalfLogSeries) -> HalfLogSeries:
    """f(g(x)) for integer-exponent f and g with g(0) = 0."""
    order2 = min(f.order2, g.order2)
    out = HalfLogSeries.zero("z", order2)
    power = HalfLogSeries.constant(1, "z")
    for n in range(order2 // 2 + 1):
        c = f.coeff(2 * n)
        if c:
            out = out + power.scale(c)
        power = (power * g).truncate(order2)
    return out


def check_exp_log(order: int) -> bool:
    rng = random.Random(13)
    for _ in range(5):
        f = _unit_series(rng, 2 * order)
        if series_exp(series_log(f)) != f:
            return False
        h = f - 1
        if series_log(series_exp(h)) != h:
            return False
    return True


def check_truncation_monotonicity(order: int) -> bool:
    low, high = frobenius_solutions(order), frobenius_solutions(order + 2)
    if not all(a.agrees_with(b) for a, b in zip(low.y, high.y)):
        return False
    y_low = yukawa_q(low, build_mirror_map(low))
    y_high = yukawa_q(high, build_mirror_map(high))
    return y_low.agrees_with(y_high)


# -- Picard-Fuchs -------------------------------------------------------------

def check_annihilation(order: int) -> bool:
    L = quintic_operator()
    for n in sorted({5, 10, order}):
        if not all(L(y).is_zero() for y in frobenius_solutions(n).y):
            return False
    return True


def check_log_degrees(order: int) -> bool:
    basis = frobenius_solutions(order)
    return all(y.degree == j and y.coeff(0, j) != 0 for j, y in enumerate(basis.y))


def check_inhomogeneous(order: int) -> bool:
    L = quintic_operator()
    rhs = open_string.tension_rhs(2 * order + 1)
    return L(solve_inhomogeneous(L, rhs)) == rhs


def check_closed_form(order: int) -> bool:
    from math import factorial
    y0 = frobenius_solutions(order).y[0]
    return all(y0.coeff(2 * n) == Fraction(factorial(5 * n), factorial(n) ** 5)
               for n in range(order + 1))


# -- mirror map ---------------------------------------------------------------

def check_mirror_round_trip(order: int) -> bool:
    mm = build_mirror_map(frobenius_solutions(order))
    z = HalfLogSeries.monomial(2, 0, 1, "z", 2 * order)
    q = HalfLogSeries.monomial(2, 0, 1, "q", 2 * order)
    return z_after_q(mm) == z and q_after_z(mm) == q


def check_delta_commutes(order: int) -> bool:
    basis = frobenius_solutions(order)
    mm = build_mirror_map(basis)
    rng = random.Random(17)
    tests = list(basis.y) + [HalfLogSeries.log()] + [
        _random_series(rng, 2 * order, logs=2) for _ in range(3)]
    for f in tests:
        if not to_q_coordinates(delta_z(f, mm), mm).agrees_with(to_q_coordinates(f, mm).delta()):
            return False
    return True


def check_u_degree(order: int) -> bool:
    data = frames.period_data(order)
    values = [data.phi, data.yukawa]
    values += [to_q_coordinates(e, data.mirror) for e in frames.integral_periods(data.basis)]
    values += [c for v in frames.e_frame(order) for c in v.coords]
    return all(v.degree <= 3 for v in values)


# -- Yukawa / GW ----------------------------------------------------------------

def _table(order: int):
    basis = frobenius_solutions(order)
    return basis, extract_instantons(yukawa_q(basis, build_mirror_map(basis)))


def check_instanton_integrality(order: int) -> bool:
    return _table(order)[1].is_integral()


def check_divisor_sum(order: int) -> bool:
    return _table(order)[1].divisor_sum_holds()


def check_potential_identity(order: int) -> bool:
    basis = frobenius_solutions(order)
    mm = build_mirror_map(basis)
    phi = to_q_coordinates(gm_potential(basis), mm)
    return third_derivative(phi).agrees_with(UPoly.from_series(yukawa_q(basis, mm)))


def check_yukawa_constant(order: int) -> bool:
    for n in (1, 2, order):
        basis = frobenius_solutions(n)
        if yukawa_q(basis, build_mirror_map(basis)).constant_term() != 5:
            return False
    return True


# -- frames -------------------------------------------------------------------

def check_frame_round_trip(order: int) -> bool:
    A, B, C = frames.period_data(order).abc
    m = frames.mat_mul(frames.mat_mul(frames.tilde_s_in_e_matrix(A, B, C),
                                      [[x for x in r] for r in _e_in_s(order)]),
                       frames.s_in_tilde_s_matrix())
    return frames.is_identity(m)


def _e_in_s(order: int):
    return [list(v.coords) for v in frames.e_frame(order)]


def check_pairing_invariance(order: int) -> bool:
    """S(s~^p, s~^q) computed through the e-frame is u- and q-independent and
    the symplectic Gram matrix is standard."""
    A, B, C = frames.period_data(order).abc
    rows = frames.mat_mul(frames.tilde_s_in_e_matrix(A, B, C), _e_in_s(order))
    st = [frames.FrameVector("s", r) for r in rows]
    const = frames.tilde_s_in_s_matrix()
    for i, a in enumerate(st):
        for j, b in enumerate(st):
            expected = frames._bilinear(const[i], const[j], cohomology.pairing_matrix())
            value = frames.pairing_of(a, b)
            if any(k != (0, 0) for k, _ in value.items()) or value.constant_term() != expected:
                return False
    gram = frames.symplectic_gram()
    target = [[0, 0, -1, 0], [0, 0, 0, -1], [1, 0, 0, 0], [0, 1, 0, 0]]
    return all(gram[i][j] == target[i][j] for i in range(4) for j in range(4))


def check_monodromy(order: int) -> bool:
    n = frames.monodromy_log()
    e = frames.matrix_exp_nilpotent(n)
    return (frames.nilpotency_index(n) == 4
            and all(x.is_integer for x in e)
            and frames.monodromy_by_substitution() == n)


def check_hodge_orthogonality(order: int) -> bool:
    e = frames.e_frame(order)
    return frames.pairing_of(e[3], e[1]).is_zero()


def check_cjk(order: int) -> bool:
    return frames.derive_cjk() == frames.TABULATED_CJK


def check_flatness(order: int) -> bool:
    y = frames.period_data(order).yukawa
    return all(frames.connection(v, y).is_zero() for v in frames.tilde_s_frame(order))


# -- open string --------------------------------------------------------------

def check_tension_equation(order: int) -> bool:
    L = quintic_operator()
    order2 = 2 * order + 1
    for orient in (open_string.PLUS, open_string.MINUS):
        t = open_string.tension_B(order2, orient)
        rhs = open_string.tension_rhs(order2).scale(t.sigma)
        a_side = t.full + t.etas[1] + t.etas[0].scale(Fraction(t.sigma, 2))  # y0 T_A in z
        if L(t.full) != rhs or L(a_side) != rhs:
            return False
    return True


def check_tension_monodromy(order: int) -> bool:
    return open_string.verify_tension_monodromy(order).ok


def check_transversality(order: int) -> bool:
    data = open_string.normal_function(order)
    return open_string.transversality_residual(data, order).is_zero()


def check_splitting(order: int) -> bool:
    data = open_string.normal_function(order)
    return (open_string.monodromy_extended(data.one_Z_spl).is_zero()
            and open_string.monodromy_extended(data.one_Z).agrees_with(
                frames.FrameVector(open_string.EXTENDED_FRAME, [1, 0, 0, 0, 0])))


def check_open_invariants(order: int) -> bool:
    low = open_string.open_invariants(order)
    high = open_string.open_invariants(order + 4)
    open_string.disk_invariants(high)  # raises unless integral
    return all(high[d] == v for d, v in low.items())


def check_relative_filtration(order: int) -> bool:
    m = open_string.extended_relative_filtration()
    if m.dimensions((0, 2, 4, 6)) != (1, 2, 4, 5):
        return False
    e = lambda i: sympy.Matrix([1 if j == i else 0 for j in range(5)])
    from .filtration import span, same_space
    expected = {0: [e(0)], 2: [e(0), e(1)], 4: [e(0), e(1), e(2), e(4)],
                6: [e(i) for i in range(5)]}
    return all(same_space(m[k], span(sympy.Matrix.hstack(*v))) for k, v in expected.items())


CHECKS: List[Tuple[str, Callable[[int], bool]]] = [
    ("core-arith.ring-axioms", check_ring_axioms),
    ("core-arith.invert-round-trip", check_invert),
    ("core-arith.reversion-round-trip", check_reversion),
    ("core-arith.exp-log-round-trip", check_exp_log),
    ("core-arith.truncation-monotonicity", check_truncation_monotonicity),
    ("picard-fuchs.annihilation", check_annihilation),
    ("picard-fuchs.log-degrees", check_log_degrees),
    ("picard-fuchs.inhomogeneous-solve", check_inhomogeneous),
    ("picard-fuchs.closed-form", check_closed_form),
    ("mirror-map.round-trip", check_mirror_round_trip),
    ("mirror-map.delta-commutes", check_delta_commutes),
    ("mirror-map.u-degree", check_u_degree),
    ("yukawa-gw.instanton-integrality", check_instanton_integrality),
    ("yukawa-gw.divisor-sum", check_divisor_sum),
    ("yukawa-gw.potential-identity", check_potential_identity),
    ("yukawa-gw.yukawa-constant-term", check_yukawa_constant),
    ("hodge-frames.frame-round-trip", check_frame_round_trip),
    ("hodge-frames.pairing-invariance", check_pairing_invariance),
    ("hodge-frames.monodromy", check_monodromy),
    ("hodge-frames.hodge-orthogonality", check_hodge_orthogonality),
    ("hodge-frames.cjk-derivation", check_cjk),
    ("hodge-frames.flatness", check_flatness),
    ("open-string.tension-equation", check_tension_equation),
    ("open-string.tension-monodromy", check_tension_monodromy),
    ("open-string.transversality", check_transversality),
    ("open-string.splitting", check_splitting),
    ("open-string.open-invariants", check_open_invariants),
    ("open-string.relative-filtration", check_relative_filtration),
]


def run_suite(order: int = 8) -> List[CheckResult]:
    results = []
    for name, fn in CHECKS:
        try:
            ok = bool(fn(order))
            results.append(CheckResult(name, ok, "" if ok else "invariant violated"))
        except QuinticMirrorError as exc:
            results.append(CheckResult(name, False, f"{type(exc).__name__}: {exc}"))
    return results
