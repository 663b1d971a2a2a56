"""Even cohomology of the quintic, Q[H]/(H^4) with int H^3 = 5, the Gamma
class, and the asymptotic classes of the integral flat sections."""
from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Dict, List, Sequence, Tuple, Union

from .constants import ONE, TWO_PI_I, ZERO, ZETA2, ZETA3, ConstScalar
from .errors import FlatnessError
from .series import UPoly

Coeff = Union[UPoly, ConstScalar, int, Fraction]

DEGREE = 5  # int_V H^3


def _as_upoly(c: Coeff) -> UPoly:
    if isinstance(c, UPoly):
        return c
    return UPoly.constant(ConstScalar.coerce(c), "q")


class CohomClass:
    """c_0 + c_1 H + c_2 H^2 + c_3 H^3 with u-polynomial coefficients."""

    __slots__ = ("c",)

    def __init__(self, coeffs: Sequence[Coeff]):
        coeffs = list(coeffs) + [0] * (4 - len(coeffs))
        if len(coeffs) > 4:
            raise ValueError("at most four components (H^4 = 0)")
        self.c: Tuple[UPoly, ...] = tuple(_as_upoly(x) for x in coeffs)

    @classmethod
    def H(cls, power: int = 1) -> "CohomClass":
        return cls([1 if p == power else 0 for p in range(4)])

    def __getitem__(self, p: int) -> UPoly:
        return self.c[p]

    def __add__(self, other: "CohomClass") -> "CohomClass":
        return CohomClass([a + b for a, b in zip(self.c, other.c)])

    def __neg__(self) -> "CohomClass":
        return CohomClass([-a for a in self.c])

    def __sub__(self, other: "CohomClass") -> "CohomClass":
        return self + (-other)

    def scale(self, x: Coeff) -> "CohomClass":
        if isinstance(x, UPoly):
            return CohomClass([a * x for a in self.c])
        return CohomClass([a.scale(x) for a in self.c])

    def __mul__(self, other) -> "CohomClass":
        if not isinstance(other, CohomClass):
            return self.scale(other)
        out = [UPoly.zero()] * 4
        for i in range(4):
            for j in range(4 - i):
                if self.c[i].is_zero() or other.c[j].is_zero():
                    continue
                out[i + j] = out[i + j] + self.c[i] * other.c[j]
        return CohomClass(out)

    __rmul__ = scale

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CohomClass):
            return NotImplemented
        return all(a.agrees_with(b) for a, b in zip(self.c, other.c))

    __hash__ = None  # type: ignore[assignment]

    def integrate(self) -> UPoly:
        return self.c[3].scale(DEGREE)

    def degree_twist(self) -> "CohomClass":
        """(2 pi i)^(deg/2): multiply the H^p component by (2 pi i)^p."""
        return CohomClass([a.scale(TWO_PI_I ** p) for p, a in enumerate(self.c)])

    def shift_u(self, c) -> "CohomClass":
        return CohomClass([a.shift_u(c) for a in self.c])

    def is_zero(self) -> bool:
        return all(a.is_zero() for a in self.c)

    def __repr__(self) -> str:
        return "CohomClass(" + ", ".join(f"H^{p}: {a}" for p, a in enumerate(self.c)) + ")"


def exp_class(x: CohomClass) -> CohomClass:
    """exp of a class without H^0 component (terminates at H^3)."""
    if not x.c[0].is_zero():
        raise ValueError("exp_class needs a nilpotent argument")
    out = CohomClass([1])
    power = CohomClass([1])
    for k in range(1, 4):
        power = power * x
        out = out + power.scale(Fraction(1, factorial(k)))
    return out


def exp_H(scalar: Coeff) -> CohomClass:
    """exp(scalar * H)."""
    return exp_class(CohomClass([0, scalar]))


SHEAVES = ("O_V", "O_H", "O_C", "O_pt")


def chern_character(sheaf: str) -> CohomClass:
    """ch of the structure sheaf of V, a hyperplane H, a line C or a point."""
    if sheaf == "O_V":
        return CohomClass([1])
    if sheaf == "O_H":  # 1 - exp(-H)
        return CohomClass([1]) - exp_H(-1)
    if sheaf == "O_C":
        return CohomClass([0, 0, Fraction(1, 5), Fraction(1, 5)])
    if sheaf == "O_pt":
        return CohomClass([0, 0, 0, Fraction(1, 5)])
    raise ValueError(f"unknown sheaf {sheaf!r}; choose from {SHEAVES}")


def tangent_chern_character() -> CohomClass:
    """ch(T_V) = 5 e^H - 1 - e^(5H) from the Euler and normal sequences."""
    return exp_H(1).scale(5) - CohomClass([1]) - exp_H(5)


def gamma_class() -> CohomClass:
    """exp(zeta(2) ch_2(T_V) - 2 zeta(3) ch_3(T_V)); c_1 = 0 kills the Euler term."""
    ch = tangent_chern_character()
    arg = CohomClass([0, 0, ch[2].scale(ZETA2), ch[3].scale(ZETA3 * -2)])
    return exp_class(arg)


def asymptotic_class(ch: CohomClass) -> CohomClass:
    """(2 pi i)^-3 exp(-2 pi i u H) Gamma (2 pi i)^(deg/2) ch."""
    e = exp_H(UPoly({(0, 1): -TWO_PI_I}))
    return (e * gamma_class() * ch.degree_twist()).scale(TWO_PI_I ** -3)


def asymptotic_flat_basis() -> List[CohomClass]:
    """s^0..s^3 = asymptotic classes of O_pt, O_C, O_H, O_V."""
    return [asymptotic_class(chern_character(name)) for name in ("O_pt", "O_C", "O_H", "O_V")]


def pairing(a: CohomClass, b: CohomClass) -> UPoly:
    """S(a, b) = (2 pi i)^3 sum_p (-1)^p int a_p b_(3-p) H^3."""
    total = UPoly.zero()
    for p in range(4):
        term = a[p] * b[3 - p]
        total = total + (term if p % 2 == 0 else -term)
    return total.scale(TWO_PI_I ** 3 * DEGREE)


def pairing_matrix(classes: Sequence[CohomClass] | None = None) -> List[List[ConstScalar]]:
    """Gram matrix S(s^p, s^q); raises FlatnessError on u- or q-dependence."""
    classes = asymptotic_flat_basis() if classes is None else classes
    out = []
    for a in classes:
        row = []
        for b in classes:
            s = pairing(a, b)
            if any(key != (0, 0) for key, _ in s.items()):
                raise FlatnessError(f"pairing is not constant: {s}")
            row.append(s.constant_term())
        out.append(row)
    return out


def decompose(x: CohomClass, basis: Sequence[CohomClass] | None = None) -> List[UPoly]:
    """Coordinates of x in the triangular basis s^0..s^3 (s^p has leading
    component in H^(3-p) with an invertible constant coefficient)."""
    basis = asymptotic_flat_basis() if basis is None else basis
    rest = x
    coords = [UPoly.zero()] * 4
    for p in range(3, -1, -1):
        lead = basis[p][3 - p]
        if lead.degree != 0 or any(m for (m, _), _ in lead.items()):
            raise ValueError("basis is not triangular with constant pivots")
        coef = rest[3 - p].scale(lead.constant_term().invert())
        coords[p] = coef
        rest = rest - basis[p].scale(coef)
    if not rest.is_zero():
        raise FlatnessError("class is not in the span of the basis")
    return coords
