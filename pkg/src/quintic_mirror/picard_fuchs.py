"""The quintic Picard-Fuchs operator and its Frobenius solutions.

The operator is stored as a polynomial in theta = z d/dz whose coefficients
are rational polynomials in z.  Frobenius solutions are obtained by
expanding the hypergeometric coefficient

    c_n(rho) = prod_{m=1}^{5n} (5 rho + m) / prod_{m=1}^{n} (rho + m)^5

as a jet modulo rho^4, using harmonic sums for its logarithmic derivatives.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Dict, List, Optional, Sequence, Tuple

from .constants import ConstScalar, ZERO
from .errors import AmbiguityError, TruncationError
from .series import HalfLogSeries

Poly = Tuple[Fraction, ...]


def _poly_mul(a: Sequence[Fraction], b: Sequence[Fraction]) -> List[Fraction]:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _poly_eval(p: Sequence[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


class ThetaOperator:
    """sum_k coeffs[k](z) * theta^k, each coeffs[k] a tuple of z-coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[Sequence[Fraction]]):
        if len(coeffs) > 5:
            raise ValueError("theta-degree above 4 is not supported")
        self.coeffs: Tuple[Poly, ...] = tuple(
            tuple(Fraction(c) for c in p) for p in coeffs)

    @classmethod
    def theta(cls) -> "ThetaOperator":
        return cls([(0,), (1,)])

    @property
    def theta_degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def z_degree(self) -> int:
        return max((len(p) - 1 for p in self.coeffs), default=0)

    def coefficient(self, k: int) -> Poly:
        """Polynomial in z multiplying theta^k."""
        return self.coeffs[k] if k < len(self.coeffs) else (Fraction(0),)

    def theta_polynomial(self, d: int) -> List[Fraction]:
        """Coefficient of z^d, viewed as a polynomial in theta."""
        return [p[d] if d < len(p) else Fraction(0) for p in self.coeffs]

    def indicial(self, d: int, exponent: Fraction) -> Fraction:
        """Value of the z^d theta-polynomial at theta = exponent."""
        return _poly_eval(self.theta_polynomial(d), Fraction(exponent))

    def apply(self, f: HalfLogSeries) -> HalfLogSeries:
        total = HalfLogSeries.zero(f.var, f.order2)
        power = f
        for k, p in enumerate(self.coeffs):
            if k:
                power = power.theta()
            zpoly = HalfLogSeries.from_integer_coeffs(p, f.var)
            total = total + zpoly * power
        return total

    __call__ = apply

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ThetaOperator):
            return NotImplemented
        strip = lambda ps: tuple(tuple(c for c in p) for p in ps)
        return strip(self.coeffs) == strip(other.coeffs)

    def __repr__(self) -> str:
        return f"ThetaOperator({[list(map(str, p)) for p in self.coeffs]})"


def quintic_operator() -> ThetaOperator:
    """theta^4 - 5 z (5 theta + 1)(5 theta + 2)(5 theta + 3)(5 theta + 4)."""
    prod = [Fraction(1)]
    for k in range(1, 5):
        prod = _poly_mul(prod, [Fraction(k), Fraction(5)])
    coeffs = []
    for k in range(5):
        const = Fraction(1) if k == 4 else Fraction(0)
        coeffs.append((const, -5 * prod[k]))
    return ThetaOperator(coeffs)


def apply(op: ThetaOperator, f: HalfLogSeries) -> HalfLogSeries:
    return op.apply(f)


# ---------------------------------------------------------------------------
# Frobenius method
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FrobeniusBasis:
    y: Tuple[HalfLogSeries, ...]
    f: Tuple[HalfLogSeries, ...]
    order: int

    @property
    def y0(self) -> HalfLogSeries:
        return self.y[0]


def _jet_exp(a1: Fraction, a2: Fraction, a3: Fraction) -> Tuple[Fraction, ...]:
    return (Fraction(1), a1, a2 + a1 * a1 / 2, a3 + a1 * a2 + a1 ** 3 / 6)


def frobenius_jets(order: int) -> List[Tuple[Fraction, ...]]:
    """[rho^j] c_n(rho) for j = 0..3 and n = 0..order."""
    jets = []
    c0 = Fraction(1)
    h5 = [Fraction(0)] * 4  # H^{(j)}_{5n}
    h1 = [Fraction(0)] * 4  # H^{(j)}_{n}
    for n in range(order + 1):
        if n:
            c0 = c0 * Fraction(_falling(5 * n, 5), n ** 5)
            for m in range(5 * n - 4, 5 * n + 1):
                for j in (1, 2, 3):
                    h5[j] += Fraction(1, m ** j)
            for j in (1, 2, 3):
                h1[j] += Fraction(1, n ** j)
        a = [Fraction(0)] * 4
        for j in (1, 2, 3):
            a[j] = Fraction((-1) ** (j + 1), j) * (5 ** j * h5[j] - 5 * h1[j])
        jets.append(tuple(c0 * e for e in _jet_exp(a[1], a[2], a[3])))
    return jets


def _falling(top: int, count: int) -> int:
    out = 1
    for k in range(count):
        out *= top - k
    return out


def frobenius_solutions(order: int) -> FrobeniusBasis:
    """Frobenius basis y_0..y_3 through z^order (series order2 = 2*order)."""
    if order < 1:
        raise ValueError("order must be >= 1")
    jets = frobenius_jets(order)
    fs = []
    for m in range(4):
        fs.append(HalfLogSeries.from_integer_coeffs(
            [jet[m] * factorial(m) for jet in jets], "z", order))
    ys = []
    for j in range(4):
        coeffs: Dict[Tuple[int, int], ConstScalar] = {}
        for i in range(j + 1):
            scale = Fraction(1, factorial(j - i) * factorial(i))
            for (m2, _), c in fs[j - i].items():
                coeffs[(m2, i)] = c * scale
        ys.append(HalfLogSeries(coeffs, 2 * order, "z"))
    return FrobeniusBasis(tuple(ys), tuple(fs), order)


# ---------------------------------------------------------------------------
# Inhomogeneous equations
# ---------------------------------------------------------------------------

def solve_inhomogeneous(op: ThetaOperator, rhs: HalfLogSeries,
                        order2: Optional[int] = None) -> HalfLogSeries:
    """Unique solution supported on half-odd exponents of op(a) = rhs."""
    if rhs.degree > 0:
        raise AmbiguityError("right-hand side must not contain log terms")
    if not rhs.is_half_odd():
        raise AmbiguityError("right-hand side has integer exponents: "
                             "they clash with the indicial root 0")
    if order2 is None:
        order2 = rhs.order2
    elif rhs.order2 is not None:
        order2 = min(order2, rhs.order2)
    if order2 is None:
        raise TruncationError("an order is required for exact right-hand sides")
    zdeg = op.z_degree
    a: Dict[int, ConstScalar] = {}
    for m in range(1, order2 + 1, 2):
        acc = rhs.coeff(m)
        for d in range(1, zdeg + 1):
            prev = a.get(m - 2 * d)
            if prev:
                acc = acc - prev * op.indicial(d, Fraction(m - 2 * d, 2))
        lead = op.indicial(0, Fraction(m, 2))
        if lead == 0:
            if acc:
                raise AmbiguityError(f"resonant exponent {m}/2")
            continue
        if acc:
            a[m] = acc * (1 / lead)
    return HalfLogSeries({(m, 0): c for m, c in a.items()}, order2, rhs.var)
