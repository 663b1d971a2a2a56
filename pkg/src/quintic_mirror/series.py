"""Truncated series with half-integer exponents and a polynomial second slot.

Two concrete types share one storage layout, a map ``(m, k) -> ConstScalar``
where ``m`` is twice the exponent of the base variable:

* :class:`HalfLogSeries` -- ``k`` is the power of ``log z`` (at most 3);
* :class:`UPoly` -- ``k`` is the power of the formal variable ``u``, and the
  base variable is the canonical coordinate ``q``.

``order2`` is the largest doubled exponent whose coefficient is known
(``None`` means the series is exact).  Binary operations keep the weakest
precision of their operands, refined by the valuation of the other factor.
"""
from __future__ import annotations

from fractions import Fraction
from math import inf
from typing import Callable, Dict, Iterable, Iterator, List, Optional, Tuple

from .constants import ONE, TWO_PI_I, ZERO, ConstScalar, Scalar
from .errors import (
    DomainOverflowError,
    NormalizationError,
    TruncationError,
    UnsupportedOperationError,
)

Raw = Dict[Tuple[int, int], Dict[Tuple[int, int], Fraction]]


def _min_order(*orders: Optional[float]) -> Optional[int]:
    finite = [o for o in orders if o is not None and o != inf]
    return int(min(finite)) if finite else None


class _BiSeries:
    __slots__ = ("_c", "order2", "var")

    MAX_K: Optional[int] = None
    SLOT = "k"
    DEFAULT_VAR = "z"

    def __init__(self, coeffs: Dict[Tuple[int, int], Scalar] | None = None,
                 order2: Optional[int] = None, var: Optional[str] = None):
        self.var = var or self.DEFAULT_VAR
        self.order2 = order2
        clean: Dict[Tuple[int, int], ConstScalar] = {}
        for (m, k), c in (coeffs or {}).items():
            if m < 0 or k < 0:
                raise ValueError(f"negative index {(m, k)}")
            c = ConstScalar.coerce(c)
            if not c or (order2 is not None and m > order2):
                continue
            self._check_k(k)
            clean[(m, k)] = clean[(m, k)] + c if (m, k) in clean else c
        self._c = {key: clean[key] for key in sorted(clean) if clean[key]}

    @classmethod
    def _check_k(cls, k: int) -> None:
        if cls.MAX_K is not None and k > cls.MAX_K:
            raise DomainOverflowError(f"{cls.SLOT}-degree {k} exceeds {cls.MAX_K}")

    @classmethod
    def _from_clean(cls, c: Dict[Tuple[int, int], ConstScalar], order2, var):
        obj = cls.__new__(cls)
        obj.var = var
        obj.order2 = order2
        obj._c = {key: c[key] for key in sorted(c) if c[key]}
        return obj

    def _like(self, c, order2=None, var=None):
        return type(self)._from_clean(c, order2, var or self.var)

    # -- inspection -----------------------------------------------------
    def items(self) -> Iterator[Tuple[Tuple[int, int], ConstScalar]]:
        return iter(self._c.items())

    def coeff(self, m2: int, k: int = 0) -> ConstScalar:
        if self.order2 is not None and m2 > self.order2:
            raise TruncationError(f"coefficient m2={m2} beyond order2={self.order2}")
        return self._c.get((m2, k), ZERO)

    def __len__(self) -> int:
        return len(self._c)

    def is_zero(self) -> bool:
        return not self._c

    @property
    def valuation2(self) -> float:
        return min((m for m, _ in self._c), default=inf)

    @property
    def degree(self) -> int:
        """Highest power in the second slot (-1 for the zero series)."""
        return max((k for _, k in self._c), default=-1)

    def is_integral(self) -> bool:
        return all(m % 2 == 0 for m, _ in self._c)

    def is_half_odd(self) -> bool:
        return all(m % 2 == 1 for m, _ in self._c)

    def is_rational(self) -> bool:
        return all(c.is_rational() for c in self._c.values())

    def part(self, k: int) -> "_BiSeries":
        """Coefficient of the k-th power of the second slot."""
        return self._like({(m, 0): c for (m, kk), c in self._c.items() if kk == k},
                          self.order2)

    def parts(self) -> List["_BiSeries"]:
        return [self.part(k) for k in range(max(self.degree, 0) + 1)]

    def constant_term(self) -> ConstScalar:
        return self._c.get((0, 0), ZERO)

    def even_part(self) -> "_BiSeries":
        return self._like({key: c for key, c in self._c.items() if key[0] % 2 == 0}, self.order2)

    def odd_part(self) -> "_BiSeries":
        return self._like({key: c for key, c in self._c.items() if key[0] % 2 == 1}, self.order2)

    # -- precision --------------------------------------------------------
    def truncate(self, order2: Optional[int]) -> "_BiSeries":
        if order2 is None:
            return self
        new_order = order2 if self.order2 is None else min(order2, self.order2)
        return self._like({key: c for key, c in self._c.items() if key[0] <= new_order},
                          new_order)

    def agrees_with(self, other: "_BiSeries", order2: Optional[int] = None) -> bool:
        """Coefficientwise equality up to the common known order."""
        bound = _min_order(self.order2, other.order2, order2)
        keys = set(self._c) | set(other._c)
        return all(self._c.get(k, ZERO) == other._c.get(k, ZERO)
                   for k in keys if bound is None or k[0] <= bound)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction, ConstScalar)):
            other = self._like({(0, 0): ConstScalar.coerce(other)}, self.order2)
        if not isinstance(other, _BiSeries) or type(other) is not type(self):
            return NotImplemented
        return (self.var == other.var and self.order2 == other.order2
                and self._c == other._c)

    __hash__ = None  # type: ignore[assignment]

    # -- ring operations ----------------------------------------------------
    def _check_var(self, other: "_BiSeries") -> None:
        if type(other) is not type(self):
            raise TypeError(f"cannot combine {type(self).__name__} with {type(other).__name__}")
        if other.var != self.var:
            raise ValueError(f"base variables differ: {self.var} vs {other.var}")

    def _coerce(self, other) -> "_BiSeries":
        if isinstance(other, _BiSeries):
            self._check_var(other)
            return other
        return self._like({(0, 0): ConstScalar.coerce(other)}, None)

    def __add__(self, other) -> "_BiSeries":
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        order2 = _min_order(self.order2, other.order2)
        out = dict(self._c)
        for key, c in other._c.items():
            out[key] = out[key] + c if key in out else c
        if order2 is not None:
            out = {key: c for key, c in out.items() if key[0] <= order2}
        return self._like(out, order2)

    __radd__ = __add__

    def __neg__(self) -> "_BiSeries":
        return self._like({key: -c for key, c in self._c.items()}, self.order2)

    def __sub__(self, other) -> "_BiSeries":
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "_BiSeries":
        return (-self) + other

    def scale(self, c: Scalar) -> "_BiSeries":
        if isinstance(c, (int, Fraction)):
            if not c:
                return self._like({}, self.order2)
            return self._like({key: v * c for key, v in self._c.items()}, self.order2)
        c = ConstScalar.coerce(c)
        return self._like({key: v * c for key, v in self._c.items()}, self.order2)

    def __mul__(self, other) -> "_BiSeries":
        if isinstance(other, (int, Fraction, ConstScalar)):
            return self.scale(other)
        if not isinstance(other, _BiSeries):
            return NotImplemented
        self._check_var(other)
        order2 = _min_order(
            None if self.order2 is None else self.order2 + other.valuation2,
            None if other.order2 is None else other.order2 + self.valuation2,
        )
        raw: Raw = {}
        for (m1, k1), c1 in self._c.items():
            for (m2, k2), c2 in other._c.items():
                m = m1 + m2
                if order2 is not None and m > order2:
                    continue
                key = (m, k1 + k2)
                acc = raw.setdefault(key, {})
                for (a1, e1), v1 in c1._terms.items():
                    for (a2, e2), v2 in c2._terms.items():
                        if e1 + e2 > 1:
                            raise DomainOverflowError("product would contain zeta(3)**2")
                        t = (a1 + a2, e1 + e2)
                        acc[t] = acc.get(t, 0) + v1 * v2
        out = {}
        for key, acc in raw.items():
            c = ConstScalar._raw(acc)
            if c:
                self._check_k(key[1])
                out[key] = c
        return self._like(out, order2)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "_BiSeries":
        if n < 0:
            return series_invert(self) ** (-n)
        result = self._like({(0, 0): ONE}, None)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __truediv__(self, other) -> "_BiSeries":
        if isinstance(other, (int, Fraction, ConstScalar)):
            return self.scale(ConstScalar.coerce(other).invert())
        if isinstance(other, _BiSeries):
            return self * series_invert(other)
        return NotImplemented

    def shift2(self, d: int) -> "_BiSeries":
        """Multiply by the base variable to the power d/2."""
        if d < 0 and self.valuation2 + d < 0:
            raise UnsupportedOperationError("shift would create negative exponents")
        order2 = None if self.order2 is None else self.order2 + d
        return self._like({(m + d, k): c for (m, k), c in self._c.items()}, order2)

    def map_coeffs(self, fn: Callable[[int, int, ConstScalar], ConstScalar]) -> "_BiSeries":
        return self._like({(m, k): fn(m, k, c) for (m, k), c in self._c.items()}, self.order2)

    def __repr__(self) -> str:
        return f"{type(self).__name__}(var={self.var!r}, order2={self.order2}, {self})"

    def __str__(self) -> str:
        if not self._c:
            return "0"
        sym = self._slot_symbol()
        out = []
        for (m, k), c in self._c.items():
            mono = []
            if m:
                exp = str(m // 2) if m % 2 == 0 else f"{m}/2"
                mono.append(self.var if exp == "1" else f"{self.var}^{exp}")
            if k:
                mono.append(sym if k == 1 else f"{sym}^{k}")
            out.append(f"({c})" + ("*" + "*".join(mono) if mono else ""))
        return " + ".join(out)

    def _slot_symbol(self) -> str:
        return "k"

    # -- constructors -----------------------------------------------------
    @classmethod
    def constant(cls, c: Scalar, var: Optional[str] = None, order2: Optional[int] = None):
        return cls({(0, 0): c}, order2, var)

    @classmethod
    def monomial(cls, m2: int, k: int = 0, c: Scalar = 1, var: Optional[str] = None,
                 order2: Optional[int] = None):
        return cls({(m2, k): c}, order2, var)

    @classmethod
    def from_integer_coeffs(cls, coeffs: Iterable[Scalar], var: Optional[str] = None,
                            order: Optional[int] = None):
        """Series sum c_n x^n from a list; ``order`` is in integer exponents."""
        return cls({(2 * n, 0): c for n, c in enumerate(coeffs)},
                   None if order is None else 2 * order, var)

    @classmethod
    def zero(cls, var: Optional[str] = None, order2: Optional[int] = None):
        return cls({}, order2, var)

    def integer_coeffs(self, k: int = 0) -> List[ConstScalar]:
        """Coefficients of x^0 .. x^order for an integer-exponent series."""
        if self.order2 is None:
            top = max((m for m, _ in self._c), default=0)
        else:
            top = self.order2
        return [self._c.get((2 * n, k), ZERO) for n in range(top // 2 + 1)]


class HalfLogSeries(_BiSeries):
    """Series in z^(1/2) whose coefficients are polynomials of degree <= 3
    in log z."""

    __slots__ = ()
    MAX_K = 3
    SLOT = "log"

    def _slot_symbol(self) -> str:
        return "log" + self.var

    @classmethod
    def log(cls, var: str = "z") -> "HalfLogSeries":
        return cls({(0, 1): 1}, None, var)

    @classmethod
    def from_log_parts(cls, parts: List["HalfLogSeries"]) -> "HalfLogSeries":
        """Inverse of :meth:`parts`: sum of parts[k] * log^k."""
        out: Dict[Tuple[int, int], ConstScalar] = {}
        order2 = _min_order(*(p.order2 for p in parts))
        for k, p in enumerate(parts):
            if p.degree > 0:
                raise ValueError("parts must be log-free")
            for (m, _), c in p.items():
                if order2 is None or m <= order2:
                    out[(m, k)] = c
        var = parts[0].var if parts else "z"
        return cls(out, order2, var)

    @property
    def log_degree(self) -> int:
        return self.degree

    def is_log_free(self) -> bool:
        return self.degree <= 0

    def theta(self) -> "HalfLogSeries":
        """Euler derivation x d/dx, with x d/dx (log x) = 1."""
        out: Dict[Tuple[int, int], ConstScalar] = {}
        for (m, k), c in self._c.items():
            if m:
                key = (m, k)
                out[key] = out.get(key, ZERO) + c * Fraction(m, 2)
            if k:
                key = (m, k - 1)
                out[key] = out.get(key, ZERO) + c * k
        return self._like(out, self.order2)


class UPoly(_BiSeries):
    """Polynomial in the formal variable u with q^(1/2)-series coefficients.

    The derivation ``delta`` is d/du for q = exp(2 pi i u):
    delta(u) = 1 and delta(q^(m/2)) = 2 pi i (m/2) q^(m/2).
    """

    __slots__ = ()
    SLOT = "u"
    DEFAULT_VAR = "q"

    def _slot_symbol(self) -> str:
        return "u"

    @classmethod
    def u(cls) -> "UPoly":
        return cls({(0, 1): 1}, None)

    @classmethod
    def from_series(cls, s: _BiSeries, k: int = 0) -> "UPoly":
        """u^k times a log-free q-series."""
        if s.degree > 0:
            raise ValueError("expected a log-free series")
        return cls({(m, k): c for (m, _), c in s.items()}, s.order2, "q")

    def coefficient_series(self, k: int) -> HalfLogSeries:
        """The q-series multiplying u^k, as a log-free HalfLogSeries in q."""
        return HalfLogSeries({(m, 0): c for (m, kk), c in self._c.items() if kk == k},
                             self.order2, "q")

    @property
    def u_degree(self) -> int:
        return self.degree

    def d_du(self) -> "UPoly":
        """Formal derivative in u only (q held fixed)."""
        return self._like({(m, k - 1): c * k for (m, k), c in self._c.items() if k},
                          self.order2)

    def delta(self) -> "UPoly":
        out: Dict[Tuple[int, int], ConstScalar] = {}
        for (m, k), c in self._c.items():
            if m:
                out[(m, k)] = out.get((m, k), ZERO) + c * TWO_PI_I * Fraction(m, 2)
            if k:
                out[(m, k - 1)] = out.get((m, k - 1), ZERO) + c * k
        return self._like(out, self.order2)

    def shift_u(self, c: Scalar) -> "UPoly":
        """Substitute u -> u + c."""
        c = ConstScalar.coerce(c)
        out: Dict[Tuple[int, int], ConstScalar] = {}
        for (m, k), v in self._c.items():
            binom = 1
            cpow = ONE
            for j in range(k, -1, -1):
                # term binom(k, j) u^j c^(k-j)
                key = (m, j)
                out[key] = out.get(key, ZERO) + v * cpow * binom
                binom = binom * j // (k - j + 1)
                cpow = cpow * c
        return self._like(out, self.order2)

    def q_constant_terms(self) -> "UPoly":
        """Drop every positive power of q (restriction to the log point)."""
        return self._like({key: c for key, c in self._c.items() if key[0] == 0}, None)

    def u_coefficients(self) -> List[ConstScalar]:
        """Coefficients of u^k for a q-independent polynomial."""
        if any(m for m, _ in self._c):
            raise ValueError("polynomial still depends on q")
        return [self._c.get((0, k), ZERO) for k in range(max(self.degree, 0) + 1)]


# ---------------------------------------------------------------------------
# Series algorithms (log-free inputs)
# ---------------------------------------------------------------------------

def _require_log_free(f: _BiSeries, what: str) -> None:
    if f.degree > 0:
        raise UnsupportedOperationError(f"{what} needs a series without the second slot")


def _resolve_order(f: _BiSeries, order2: Optional[int]) -> int:
    if order2 is None:
        order2 = f.order2
    elif f.order2 is not None:
        order2 = min(order2, f.order2)
    if order2 is None:
        raise TruncationError("exact input: an explicit order2 is required")
    return order2


def series_invert(f: _BiSeries, order2: Optional[int] = None) -> _BiSeries:
    """Multiplicative inverse of a unit series f with invertible f(0)."""
    _require_log_free(f, "series_invert")
    N = _resolve_order(f, order2)
    f0 = f.constant_term()
    if not f0.is_invertible():
        raise UnsupportedOperationError(f"constant term {f0} is not invertible")
    g0 = f0.invert()
    fc = {m: c for (m, _), c in f.items() if m}
    g: Dict[int, ConstScalar] = {0: g0}
    for m in range(1, N + 1):
        acc = ZERO
        for j, c in fc.items():
            if j <= m and (m - j) in g:
                acc = acc + c * g[m - j]
        if acc:
            g[m] = -(g0 * acc)
    return f._like({(m, 0): c for m, c in g.items()}, N)


def series_exp(f: _BiSeries, order2: Optional[int] = None) -> _BiSeries:
    """exp(f) for f with f(0) = 0."""
    _require_log_free(f, "series_exp")
    if f.constant_term():
        raise NormalizationError("series_exp needs f(0) = 0")
    N = _resolve_order(f, order2)
    fc = {m: c * m for (m, _), c in f.items()}
    g: Dict[int, ConstScalar] = {0: ONE}
    # x d/dx g = g * x d/dx f  ->  m g_m = sum_j j f_j g_{m-j}
    for m in range(1, N + 1):
        acc = ZERO
        for j, c in fc.items():
            if j <= m and (m - j) in g:
                acc = acc + c * g[m - j]
        if acc:
            g[m] = acc * Fraction(1, m)
    return f._like({(m, 0): c for m, c in g.items()}, N)


def series_log(f: _BiSeries, order2: Optional[int] = None) -> _BiSeries:
    """log(f) for f with f(0) = 1."""
    _require_log_free(f, "series_log")
    if f.constant_term() != ONE:
        raise NormalizationError("series_log needs f(0) = 1")
    N = _resolve_order(f, order2)
    fc = {m: c for (m, _), c in f.items() if m}
    L: Dict[int, ConstScalar] = {}
    # m f_m = sum_{j=1}^{m} j L_j f_{m-j}
    for m in range(1, N + 1):
        acc = fc.get(m, ZERO) * m
        for j, c in L.items():
            if j < m and (m - j) in fc:
                acc = acc - c * j * fc[m - j]
        if acc:
            L[m] = acc * Fraction(1, m)
    return f._like({(m, 0): c for m, c in L.items()}, N)


def series_power(f: _BiSeries, r: Fraction, order2: Optional[int] = None) -> _BiSeries:
    """f**r for a unit series with f(0) = 1 and rational r."""
    return series_exp(series_log(f, order2).scale(Fraction(r)))


def series_reversion(f: _BiSeries, var: Optional[str] = None,
                     order2: Optional[int] = None) -> _BiSeries:
    """Compositional inverse g with f(g(x)) = x (Lagrange inversion).

    ``f`` must have integer exponents, f(0) = 0 and an invertible linear
    coefficient.  The result is expressed in ``var`` (default: f's variable).
    """
    _require_log_free(f, "series_reversion")
    if not f.is_integral():
        raise UnsupportedOperationError("reversion needs integer exponents")
    if f.constant_term():
        raise NormalizationError("reversion needs f(0) = 0")
    N2 = _resolve_order(f, order2)
    N = N2 // 2
    c1 = f.coeff(2)
    if not c1.is_invertible():
        raise UnsupportedOperationError(f"linear coefficient {c1} is not invertible")
    # h = x / f(x), then [x^n] g = (1/n) [x^(n-1)] h^n
    h = series_invert(f.shift2(-2), 2 * (N - 1)) if N >= 1 else None
    out: Dict[Tuple[int, int], ConstScalar] = {}
    power = h
    for n in range(1, N + 1):
        c = power.coeff(2 * (n - 1)) * Fraction(1, n)
        if c:
            out[(2 * n, 0)] = c
        if n < N:
            power = (power * h).truncate(2 * (N - 1))
    return f._like(out, 2 * N, var or f.var)


def compose_half(a: _BiSeries, w_half: _BiSeries, var: str = "q") -> _BiSeries:
    """Substitute x = y * w(y) into a log-free series in x^(1/2).

    ``w_half`` is the unit series w(y)^(1/2) (integer exponents in y); the
    result is sum_m a_m y^(m/2) w_half^m, a series in y^(1/2).
    """
    _require_log_free(a, "compose_half")
    order2 = _min_order(a.order2, w_half.order2)
    if order2 is None:
        raise TruncationError("compose_half needs a truncation order")
    terms = {m: c for (m, _), c in a.items() if m <= order2}
    out = a._like({}, order2, var)
    if not terms:
        return out
    w_half = w_half.truncate(order2)
    w_half = w_half._like(dict(w_half.items()), w_half.order2, var)
    power = w_half._like({(0, 0): ONE}, None, var)
    acc: Dict[Tuple[int, int], ConstScalar] = {}
    for m in range(0, max(terms) + 1):
        if m in terms:
            for (j, _), v in power.items():
                if m + j <= order2:
                    key = (m + j, 0)
                    acc[key] = acc.get(key, ZERO) + terms[m] * v
        if m < max(terms):
            power = (power * w_half).truncate(order2 - m - 1)
    return a._like(acc, order2, var)
