"""Exact constants ring Q[(2 pi i)^{+-1}] + zeta(3) Q[(2 pi i)^{+-1}].

Every transcendental number that shows up in the period computations is a
finite rational combination of monomials ``(2 pi i)**a * zeta(3)**e`` with
``e`` in {0, 1}.  Even zeta values and powers of pi are rewritten through
``zeta(2) = -(2 pi i)**2 / 24`` and ``pi**2 = -(2 pi i)**2 / 4``.
"""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Dict, Iterable, Tuple, Union

import mpmath

from .errors import DomainOverflowError, UnsupportedOperationError

Key = Tuple[int, int]
Scalar = Union["ConstScalar", int, Fraction]


class ConstScalar:
    """Immutable element of the constants ring.

    ``terms`` maps ``(a, e)`` -- power of 2*pi*i and zeta(3) flag -- to a
    nonzero Fraction.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Dict[Key, Rational] | Iterable[Tuple[Key, Rational]] = ()):
        items = terms.items() if isinstance(terms, dict) else terms
        clean: Dict[Key, Fraction] = {}
        for (a, e), c in items:
            if e not in (0, 1):
                raise DomainOverflowError(f"zeta(3) power {e} outside {{0, 1}}")
            c = Fraction(c)
            if c:
                clean[(int(a), int(e))] = clean.get((int(a), int(e)), 0) + c
        self._terms = {k: v for k, v in sorted(clean.items()) if v}
        self._hash = None

    # -- constructors -------------------------------------------------
    @classmethod
    def _raw(cls, terms: Dict[Key, Fraction]) -> "ConstScalar":
        obj = cls.__new__(cls)
        obj._terms = {k: terms[k] for k in sorted(terms) if terms[k]}
        obj._hash = None
        return obj

    @classmethod
    def rational(cls, value: Rational) -> "ConstScalar":
        value = Fraction(value)
        return cls._raw({(0, 0): value}) if value else ZERO

    @classmethod
    def two_pi_i(cls, power: int = 1, coeff: Rational = 1) -> "ConstScalar":
        return cls._raw({(power, 0): Fraction(coeff)})

    @classmethod
    def zeta3(cls, two_pi_i_power: int = 0, coeff: Rational = 1) -> "ConstScalar":
        return cls._raw({(two_pi_i_power, 1): Fraction(coeff)})

    @classmethod
    def coerce(cls, x: Scalar) -> "ConstScalar":
        if isinstance(x, ConstScalar):
            return x
        if isinstance(x, (int, Fraction)):
            return cls.rational(x)
        raise TypeError(f"cannot interpret {x!r} as a ConstScalar")

    # -- structure ----------------------------------------------------
    @property
    def terms(self) -> Dict[Key, Fraction]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_rational(self) -> bool:
        return all(k == (0, 0) for k in self._terms)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise UnsupportedOperationError(f"{self} is not rational")
        return self._terms.get((0, 0), Fraction(0))

    def rational_part(self) -> Fraction:
        return self._terms.get((0, 0), Fraction(0))

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other: Scalar) -> "ConstScalar":
        try:
            other = ConstScalar.coerce(other)
        except TypeError:
            return NotImplemented
        if not other._terms:
            return self
        if not self._terms:
            return other
        out = dict(self._terms)
        for k, v in other._terms.items():
            out[k] = out.get(k, 0) + v
        return ConstScalar._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "ConstScalar":
        return ConstScalar._raw({k: -v for k, v in self._terms.items()})

    def __sub__(self, other: Scalar) -> "ConstScalar":
        try:
            other = ConstScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Scalar) -> "ConstScalar":
        return ConstScalar.coerce(other) - self

    def __mul__(self, other: Scalar) -> "ConstScalar":
        if isinstance(other, (int, Fraction)):
            if not other:
                return ZERO
            return ConstScalar._raw({k: v * other for k, v in self._terms.items()})
        if not isinstance(other, ConstScalar):
            return NotImplemented
        out: Dict[Key, Fraction] = {}
        for (a1, e1), v1 in self._terms.items():
            for (a2, e2), v2 in other._terms.items():
                e = e1 + e2
                if e > 1:
                    raise DomainOverflowError("product would contain zeta(3)**2")
                k = (a1 + a2, e)
                out[k] = out.get(k, 0) + v1 * v2
        return ConstScalar._raw(out)

    __rmul__ = __mul__

    def invert(self) -> "ConstScalar":
        """Inverse of a single monomial r * (2 pi i)**a without zeta(3)."""
        if len(self._terms) != 1:
            raise UnsupportedOperationError(f"cannot invert non-monomial {self}")
        (a, e), v = next(iter(self._terms.items()))
        if e:
            raise UnsupportedOperationError(f"cannot invert {self}: contains zeta(3)")
        return ConstScalar._raw({(-a, 0): 1 / v})

    def is_invertible(self) -> bool:
        return len(self._terms) == 1 and next(iter(self._terms))[1] == 0

    def __truediv__(self, other: Scalar) -> "ConstScalar":
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        if not isinstance(other, ConstScalar):
            return NotImplemented
        return self * other.invert()

    def __rtruediv__(self, other: Scalar) -> "ConstScalar":
        return ConstScalar.coerce(other) * self.invert()

    def __pow__(self, n: int) -> "ConstScalar":
        if n < 0:
            return self.invert() ** (-n)
        out = ONE
        for _ in range(n):
            out = out * self
        return out

    # -- comparison ---------------------------------------------------
    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = ConstScalar.rational(other)
        if not isinstance(other, ConstScalar):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._terms)

    # -- numerics (cross-checks only) ---------------------------------
    def evaluate(self, dps: int = 50) -> mpmath.mpc:
        """Numerical value with ``dps`` significant digits."""
        with mpmath.workdps(dps + 10):
            tpi = 2j * mpmath.pi
            z3 = mpmath.zeta(3)
            total = mpmath.mpc(0)
            for (a, e), v in self._terms.items():
                total += mpmath.mpf(v.numerator) / v.denominator * tpi**a * (z3 if e else 1)
            return +total

    def __repr__(self) -> str:
        return f"ConstScalar({self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for (a, e), v in self._terms.items():
            factors = []
            if a:
                factors.append("(2πi)" if a == 1 else f"(2πi)^{a}")
            if e:
                factors.append("ζ(3)")
            if not factors:
                parts.append(str(v))
            elif v == 1:
                parts.append("*".join(factors))
            elif v == -1:
                parts.append("-" + "*".join(factors))
            else:
                parts.append(f"{v}*" + "*".join(factors))
        return " + ".join(parts).replace("+ -", "- ")


ZERO = ConstScalar._raw({})
ONE = ConstScalar._raw({(0, 0): Fraction(1)})
TWO_PI_I = ConstScalar.two_pi_i(1)
ZETA3 = ConstScalar.zeta3()
# zeta(2) = pi^2/6 and pi^2 = -(2 pi i)^2 / 4
ZETA2 = ConstScalar.two_pi_i(2, Fraction(-1, 24))
PI_SQUARED = ConstScalar.two_pi_i(2, Fraction(-1, 4))
INV_PI_SQUARED = PI_SQUARED.invert()
# i / pi^3 = 8 / (2 pi i)^3
I_OVER_PI_CUBED = ConstScalar.two_pi_i(-3, 8)


def as_scalar(x: Scalar) -> ConstScalar:
    return ConstScalar.coerce(x)
