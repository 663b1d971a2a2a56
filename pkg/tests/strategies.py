"""Hypothesis strategies shared by the test modules."""
from fractions import Fraction

from hypothesis import strategies as st

from quintic_mirror.constants import ConstScalar
from quintic_mirror.series import HalfLogSeries

fractions = st.fractions(min_value=-20, max_value=20, max_denominator=12)
nonzero_fractions = fractions.filter(bool)


@st.composite
def scalars(draw, zeta=True, max_terms=3):
    n = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(n):
        a = draw(st.integers(-4, 4))
        e = draw(st.integers(0, 1)) if zeta else 0
        terms[(a, e)] = draw(fractions)
    return ConstScalar(terms)


@st.composite
def monomials(draw):
    return ConstScalar.two_pi_i(draw(st.integers(-4, 4)), draw(nonzero_fractions))


@st.composite
def series(draw, order2=8, max_log=1, zeta=False, half=True):
    coeffs = {}
    for _ in range(draw(st.integers(0, 5))):
        m = draw(st.integers(0, order2))
        if not half:
            m -= m % 2
        coeffs[(m, draw(st.integers(0, max_log)))] = draw(scalars(zeta=zeta, max_terms=2))
    return HalfLogSeries(coeffs, order2)


@st.composite
def unit_series(draw, order2=10, rational=True):
    """Integer-exponent series with constant term 1."""
    coeffs = {(0, 0): 1}
    for m in range(2, order2 + 1, 2):
        coeffs[(m, 0)] = draw(fractions) if rational else draw(scalars(zeta=False, max_terms=2))
    return HalfLogSeries(coeffs, order2)
