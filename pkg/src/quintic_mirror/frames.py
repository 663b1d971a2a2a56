"""Frames of the quintic variation: the flat integral frame s, the adapted
flat frame s~, the Hodge-theoretic frame e, monodromy, and the integral
periods eta_j.

Frame-change matrices are lists of rows: row i holds the coordinates of the
i-th vector of the source frame in the target frame.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple, Union

import sympy

from .cohomology import CohomClass, asymptotic_flat_basis, decompose, pairing_matrix
from .constants import ONE, TWO_PI_I, ZERO, ConstScalar
from .errors import ConsistencyError, DerivationError, FlatnessError
from .mirror_map import MirrorMap, build_mirror_map, to_q_coordinates
from .picard_fuchs import FrobeniusBasis, frobenius_solutions
from .series import HalfLogSeries, UPoly, _BiSeries
from .yukawa import STANDARD_MINUS, gm_potential, yukawa_q

Entry = Union[UPoly, ConstScalar]
Matrix = List[List[UPoly]]

FRAMES = ("b", "s", "e", "s~")


def _up(x) -> UPoly:
    if isinstance(x, UPoly):
        return x
    return UPoly.constant(ConstScalar.coerce(x))


def _is_zero(x) -> bool:
    return x.is_zero() if isinstance(x, _BiSeries) else not x


# ---------------------------------------------------------------------------
# Frame vectors and matrices
# ---------------------------------------------------------------------------

class FrameVector:
    """Coordinates (u-polynomials over q-series) of a section in a named frame."""

    __slots__ = ("frame", "coords")

    def __init__(self, frame: str, coords: Sequence):
        self.frame = frame
        self.coords: Tuple[UPoly, ...] = tuple(_up(c) for c in coords)

    @classmethod
    def basis(cls, frame: str, index: int, dim: int = 4) -> "FrameVector":
        return cls(frame, [1 if i == index else 0 for i in range(dim)])

    def __len__(self) -> int:
        return len(self.coords)

    def __getitem__(self, i: int) -> UPoly:
        return self.coords[i]

    def _check(self, other: "FrameVector") -> None:
        if other.frame != self.frame or len(other) != len(self):
            raise ValueError(f"frames differ: {self.frame} vs {other.frame}")

    def __add__(self, other: "FrameVector") -> "FrameVector":
        self._check(other)
        return FrameVector(self.frame, [a + b for a, b in zip(self.coords, other.coords)])

    def __neg__(self) -> "FrameVector":
        return FrameVector(self.frame, [-a for a in self.coords])

    def __sub__(self, other: "FrameVector") -> "FrameVector":
        return self + (-other)

    def scale(self, x) -> "FrameVector":
        if isinstance(x, UPoly):
            return FrameVector(self.frame, [a * x for a in self.coords])
        return FrameVector(self.frame, [a.scale(x) for a in self.coords])

    def map_coords(self, fn) -> "FrameVector":
        return FrameVector(self.frame, [fn(a) for a in self.coords])

    def is_zero(self) -> bool:
        return all(a.is_zero() for a in self.coords)

    def agrees_with(self, other: "FrameVector", order2: Optional[int] = None) -> bool:
        self._check(other)
        return all(a.agrees_with(b, order2) for a, b in zip(self.coords, other.coords))

    def change_frame(self, matrix: Sequence[Sequence[Entry]], frame: str) -> "FrameVector":
        """Re-express in ``frame`` given rows source_i = sum_j M[i][j] target_j."""
        dim = len(matrix[0])
        out = [UPoly.zero() for _ in range(dim)]
        for i, c in enumerate(self.coords):
            if c.is_zero():
                continue
            for j in range(dim):
                m = matrix[i][j]
                if not _is_zero(m):
                    out[j] = out[j] + (c * m if isinstance(m, UPoly) else c.scale(m))
        return FrameVector(frame, out)

    def __repr__(self) -> str:
        return f"FrameVector({self.frame}, {[str(c) for c in self.coords]})"


def mat_mul(a: Sequence[Sequence[Entry]], b: Sequence[Sequence[Entry]]) -> Matrix:
    n, k, m = len(a), len(b), len(b[0])
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = UPoly.zero()
            for t in range(k):
                x, y = a[i][t], b[t][j]
                if _is_zero(x) or _is_zero(y):
                    continue
                acc = acc + _up(x) * _up(y)
            row.append(acc)
        out.append(row)
    return out


def is_identity(m: Sequence[Sequence[Entry]], order2: Optional[int] = None) -> bool:
    for i, row in enumerate(m):
        for j, x in enumerate(row):
            target = UPoly.constant(1 if i == j else 0)
            if not _up(x).agrees_with(target, order2):
                return False
    return True


# ---------------------------------------------------------------------------
# Monodromy
# ---------------------------------------------------------------------------

def _rational_matrix(rows: Sequence[Sequence[Union[UPoly, ConstScalar]]]) -> sympy.Matrix:
    def conv(x):
        c = x.constant_term() if isinstance(x, UPoly) else x
        if isinstance(x, UPoly) and any(k != (0, 0) for k, _ in x.items()):
            raise FlatnessError(f"entry {x} is not constant")
        f = c.to_fraction()
        return sympy.Rational(f.numerator, f.denominator)
    return sympy.Matrix([[conv(x) for x in row] for row in rows])


@lru_cache(maxsize=None)
def monodromy_log() -> sympy.Matrix:
    """N = cup product with -2 pi i H on the integral frame b = (s^0..s^3).

    Column j holds the coordinates of N(b^j)."""
    basis = asymptotic_flat_basis()
    h = CohomClass([0, -TWO_PI_I])
    cols = [decompose(h * s, basis) for s in basis]
    return _rational_matrix(cols).T


def matrix_exp_nilpotent(n: sympy.Matrix) -> sympy.Matrix:
    out = sympy.eye(n.rows)
    power = sympy.eye(n.rows)
    for k in range(1, n.rows + 1):
        power = power * n / k
        out = out + power
    return out


def matrix_log_unipotent(t: sympy.Matrix) -> sympy.Matrix:
    x = t - sympy.eye(t.rows)
    out = sympy.zeros(t.rows)
    power = sympy.eye(t.rows)
    for k in range(1, t.rows + 1):
        power = power * x
        out = out + power * sympy.Rational((-1) ** (k + 1), k)
    return out


def monodromy_by_substitution() -> sympy.Matrix:
    """log of u -> u + 1 acting on the asymptotic classes, in the b-frame."""
    basis = asymptotic_flat_basis()
    cols = [decompose(s.shift_u(1), basis) for s in basis]
    return matrix_log_unipotent(_rational_matrix(cols).T)


def double_cover_monodromy_log() -> sympy.Matrix:
    """N on the z^(1/2) double cover: log of the square of the full turn."""
    return 2 * monodromy_log()


def nilpotency_index(n: sympy.Matrix) -> int:
    power = sympy.eye(n.rows)
    for k in range(1, n.rows + 2):
        power = power * n
        if power.is_zero_matrix:
            return k
    raise ConsistencyError("matrix is not nilpotent")


# ---------------------------------------------------------------------------
# The c^{jk} constants
# ---------------------------------------------------------------------------

CJK_KEYS = ((1, 0), (2, 1), (2, 0), (3, 2), (3, 1), (3, 0))

#: s~^p = s^p + sum_k c^{pk} s~^k, as listed in the frame-change table.
TABULATED_CJK: Dict[Tuple[int, int], ConstScalar] = {
    (1, 0): ConstScalar.rational(-1),
    (2, 1): ConstScalar.rational(Fraction(5, 2)),
    (2, 0): ConstScalar.rational(Fraction(-35, 12)),
    (3, 2): ConstScalar.rational(0),
    (3, 1): ConstScalar.rational(Fraction(-25, 12)),
    # -25 i zeta(3) / pi^3 = -200 zeta(3) (2 pi i)^-3
    (3, 0): ConstScalar.zeta3(-3, -200),
}


def _classical_abc() -> Tuple[UPoly, UPoly, UPoly]:
    u = UPoly.u()
    return u.scale(5), (u * u).scale(Fraction(5, 2)), (u * u * u).scale(Fraction(5, 6))


def _solve_const_system(equations: List[Tuple[Dict[int, ConstScalar], ConstScalar]],
                        unknowns: Sequence[int]) -> Dict[int, ConstScalar]:
    """Solve sum_k a_k x_k + b = 0 over the constants ring using monomial pivots."""
    eqs = [(dict(a), b) for a, b in equations]
    solution: Dict[int, ConstScalar] = {}
    for _ in unknowns:
        pivot = None
        for idx, (a, b) in enumerate(eqs):
            for k, c in a.items():
                if k not in solution and c and c.is_invertible():
                    pivot = (idx, k, c)
                    break
            if pivot:
                break
        if pivot is None:
            raise DerivationError("linear system is underdetermined")
        idx, k, c = pivot
        a, b = eqs.pop(idx)
        # x_k = -(b + sum_{j != k} a_j x_j) / c
        expr = {j: -v * c.invert() for j, v in a.items() if j != k}
        const = -(b * c.invert())
        new_eqs = []
        for a2, b2 in eqs:
            ck = a2.pop(k, ZERO)
            if ck:
                for j, v in expr.items():
                    a2[j] = a2.get(j, ZERO) + ck * v
                b2 = b2 + ck * const
            new_eqs.append(({j: v for j, v in a2.items() if v}, b2))
        eqs = new_eqs
        solution[k] = (expr, const)  # type: ignore[assignment]
    # back substitution
    values: Dict[int, ConstScalar] = {}
    for k in reversed(list(solution)):
        expr, const = solution[k]  # type: ignore[misc]
        val = const
        for j, v in expr.items():
            if j not in values:
                raise DerivationError(f"unknown {j} left undetermined")
            val = val + v * values[j]
        values[k] = val
    for a, b in eqs:
        if a or b:
            raise DerivationError("vanishing conditions are inconsistent")
    return values


def derive_cjk() -> Dict[Tuple[int, int], ConstScalar]:
    """Recover the c^{jk} from the asymptotics of e^p with the classical
    potential: the H^j component of e^p must vanish for j + p > 3."""
    s = asymptotic_flat_basis()
    A, B, C = _classical_abc()
    e_in_st = e_in_tilde_s_matrix(A, B, C)
    st: List[CohomClass] = [s[0]]
    cjk: Dict[Tuple[int, int], ConstScalar] = {}
    for p in range(1, 4):
        row = e_in_tilde_s_matrix(A, B, C)[p]
        known = s[p]
        for k in range(p):
            known = known + st[k].scale(row[k])
        # unknown part: sum_k c^{pk} s~^k (coefficient of s~^p in e^p is 1)
        equations = []
        for j in range(4 - p, 4):
            upows = {key[1] for key, _ in known[j].items()}
            for k in range(p):
                upows |= {key[1] for key, _ in st[k][j].items()}
            for i in sorted(upows):
                coeffs = {k: st[k][j].coeff(0, i) for k in range(p)}
                equations.append(({k: v for k, v in coeffs.items() if v}, known[j].coeff(0, i)))
        values = _solve_const_system(equations, list(range(p)))
        total = s[p]
        for k in range(p):
            cjk[(p, k)] = values[k]
            total = total + st[k].scale(values[k])
        st.append(total)
        # re-check the vanishing conditions on the assembled class
        tp = total
        for k in range(p):
            tp = tp + st[k].scale(e_in_st[p][k])
        if any(not tp[j].is_zero() for j in range(4 - p, 4)):
            raise DerivationError(f"e^{p} keeps components beyond H^{3 - p}")
    return cjk


def tilde_s_in_s_matrix(cjk: Optional[Dict[Tuple[int, int], ConstScalar]] = None
                        ) -> List[List[ConstScalar]]:
    """Rows: s~^p in terms of s^0..s^3, from s~^p = s^p + sum_k c^{pk} s~^k."""
    cjk = TABULATED_CJK if cjk is None else cjk
    rows: List[List[ConstScalar]] = []
    for p in range(4):
        row = [ONE if j == p else ZERO for j in range(4)]
        for k in range(p):
            c = cjk[(p, k)]
            row = [x + c * y for x, y in zip(row, rows[k])]
        rows.append(row)
    return rows


def s_in_tilde_s_matrix(cjk: Optional[Dict[Tuple[int, int], ConstScalar]] = None
                        ) -> List[List[ConstScalar]]:
    """Rows: s^p = s~^p - sum_k c^{pk} s~^k."""
    cjk = TABULATED_CJK if cjk is None else cjk
    return [[ONE if j == p else (-cjk[(p, j)] if j < p else ZERO) for j in range(4)]
            for p in range(4)]


# ---------------------------------------------------------------------------
# The e-frame
# ---------------------------------------------------------------------------

def potential_abc(phi: UPoly) -> Tuple[UPoly, UPoly, UPoly]:
    """A = Phi''/(2 pi i)^3, B = Phi'/(2 pi i)^3, C = (u Phi' - 2 Phi)/(2 pi i)^3."""
    k = TWO_PI_I ** -3
    d1 = phi.delta()
    d2 = d1.delta()
    return d2.scale(k), d1.scale(k), (UPoly.u() * d1 - phi.scale(2)).scale(k)


def tilde_s_in_e_matrix(A: UPoly, B: UPoly, C: UPoly) -> Matrix:
    u = UPoly.u()
    z, one = UPoly.zero(), UPoly.constant(1)
    return [
        [one, z, z, z],
        [-u, one, z, z],
        [B, -A, one, z],
        [-C, u * A - B, -u, one],
    ]


def e_in_tilde_s_matrix(A: UPoly, B: UPoly, C: UPoly) -> Matrix:
    u = UPoly.u()
    z, one = UPoly.zero(), UPoly.constant(1)
    return [
        [one, z, z, z],
        [u, one, z, z],
        [u * A - B, A, one, z],
        [C, B, u, one],
    ]


@dataclass(frozen=True)
class PeriodData:
    """Everything the frame computations need at a given order."""

    order: int
    basis: FrobeniusBasis
    mirror: MirrorMap
    phi: UPoly
    yukawa: UPoly

    @property
    def abc(self) -> Tuple[UPoly, UPoly, UPoly]:
        return potential_abc(self.phi)


@lru_cache(maxsize=16)
def period_data(order: int, sign: str = STANDARD_MINUS) -> PeriodData:
    basis = frobenius_solutions(order)
    mm = build_mirror_map(basis)
    phi = to_q_coordinates(gm_potential(basis), mm)
    y = UPoly.from_series(yukawa_q(basis, mm, order, sign))
    return PeriodData(order, basis, mm, phi, y)


def tilde_s_frame(order: int) -> List[FrameVector]:
    """s~^0..s~^3 as vectors over the e-frame."""
    m = tilde_s_in_e_matrix(*period_data(order).abc)
    return [FrameVector("e", row) for row in m]


def e_frame(order: int, cjk=None) -> List[FrameVector]:
    """e^0..e^3 as vectors over the s-frame."""
    m = mat_mul(e_in_tilde_s_matrix(*period_data(order).abc), tilde_s_in_s_matrix(cjk))
    return [FrameVector("s", row) for row in m]


def connection(v: FrameVector, yukawa: UPoly) -> FrameVector:
    """nabla_delta on the e-frame: e^0 -> 0, e^1 -> e^0, e^2 -> Y e^1, e^3 -> e^2."""
    if v.frame != "e":
        raise ValueError("connection acts on e-frame coordinates")
    a = v.coords
    d = [c.delta() for c in a]
    return FrameVector("e", [d[0] + a[1], d[1] + a[2] * yukawa, d[2] + a[3], d[3]])


def symplectic_gram(cjk=None) -> List[List[ConstScalar]]:
    """Gram matrix of (s~^3, s~^2, -s~^0, s~^1) under the pairing."""
    S = pairing_matrix()
    T = tilde_s_in_s_matrix(cjk)
    vecs = [T[3], T[2], [-x for x in T[0]], T[1]]
    return [[_bilinear(a, b, S) for b in vecs] for a in vecs]


def _bilinear(a: Sequence[ConstScalar], b: Sequence[ConstScalar],
              S: Sequence[Sequence[ConstScalar]]) -> ConstScalar:
    acc = ZERO
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            if x and y and S[i][j]:
                acc = acc + x * y * S[i][j]
    return acc


def pairing_of(v: FrameVector, w: FrameVector) -> UPoly:
    """S(v, w) for vectors in the s-frame."""
    if v.frame != "s" or w.frame != "s":
        raise ValueError("pairing_of expects s-frame vectors")
    S = pairing_matrix()
    acc = UPoly.zero()
    for i in range(4):
        for j in range(4):
            if S[i][j] and not v[i].is_zero() and not w[j].is_zero():
                acc = acc + (v[i] * w[j]).scale(S[i][j])
    return acc


def monodromy_on_s(v: FrameVector) -> FrameVector:
    """N = log(T_inf^2) on a section written in the s-frame (or the s-frame
    extended by a fifth coordinate on which N acts through the coefficient only).

    Coefficients transform by 2 d/du, basis vectors by the double-cover matrix.
    """
    if v.frame not in ("s", "s+1"):
        raise ValueError("expected s-frame coordinates")
    n = double_cover_monodromy_log()
    out = [c.d_du().scale(2) for c in v.coords]
    for j in range(4):
        cj = v.coords[j]
        if cj.is_zero():
            continue
        for i in range(4):
            if n[i, j] != 0:
                out[i] = out[i] + cj.scale(Fraction(int(n[i, j].p), int(n[i, j].q)))
    return FrameVector(v.frame, out)


# ---------------------------------------------------------------------------
# Integral periods
# ---------------------------------------------------------------------------

_K = TABULATED_CJK[(3, 0)]  # -25 i zeta(3)/pi^3


def integral_periods(basis: FrobeniusBasis) -> List[HalfLogSeries]:
    """eta_0..eta_3 with y0 e^3 = eta_0 s^3 + eta_1 s^2 + eta_2 s^1 + eta_3 s^0."""
    y0, y1, y2, y3 = basis.y
    inv = TWO_PI_I.invert()
    eta0 = y0
    eta1 = y1.scale(inv)
    eta2 = y2.scale(inv ** 2 * 5) + y1.scale(inv * Fraction(5, 2)) - y0.scale(Fraction(25, 12))
    eta3 = (y3.scale(inv ** 3 * 5) - y2.scale(inv ** 2 * 5)
            - y1.scale(inv * Fraction(65, 12)) + y0.scale(ConstScalar.rational(Fraction(25, 12)) + _K))
    return [eta0, eta1, eta2, eta3]


def integral_periods_from_frames(order: int) -> List[UPoly]:
    """The same periods obtained as y0(z(q)) times the s-coordinates of e^3."""
    data = period_data(order)
    e3 = e_frame(order)[3]
    y0q = to_q_coordinates(data.basis.y[0], data.mirror)
    return [(e3[3 - j] * y0q) for j in range(4)]


def alternate_periods(etas: Sequence[HalfLogSeries]) -> List[HalfLogSeries]:
    """varpi_0..varpi_3 = eta_0, eta_1, eta_2 - 5 eta_1, -eta_3 - eta_2 - 5 eta_1."""
    e0, e1, e2, e3 = etas
    return [e0, e1, e2 - e1.scale(5), -e3 - e2 - e1.scale(5)]


def full_turn(x: HalfLogSeries) -> HalfLogSeries:
    """Analytic continuation once around z = 0: log z -> log z + 2 pi i and
    z^(m/2) -> (-1)^m z^(m/2)."""
    out: Dict[Tuple[int, int], ConstScalar] = {}
    for (m, k), c in x.items():
        sign = -1 if m % 2 else 1
        # (log z + 2 pi i)^k
        binom = 1
        for j in range(k + 1):
            key = (m, k - j)
            term = c * binom * sign * TWO_PI_I ** j
            out[key] = out.get(key, ZERO) + term
            binom = binom * (k - j) // (j + 1)
    return HalfLogSeries(out, x.order2, x.var)


def log_double_turn(x: HalfLogSeries) -> HalfLogSeries:
    """N = log(T^2) applied by substitution: sum_k (-1)^(k+1) (T^2 - 1)^k / k."""
    out = HalfLogSeries.zero(x.var, x.order2)
    cur = x
    for k in range(1, 5):
        cur = full_turn(full_turn(cur)) - cur
        if cur.is_zero():
            break
        out = out + cur.scale(Fraction((-1) ** (k + 1), k))
    return out
