import pytest
import sympy
from hypothesis import given, strategies as st

from quintic_mirror.errors import AdmissibilityError
from quintic_mirror.filtration import (
    Filtration,
    contains,
    intersection,
    is_relative_weight_filtration,
    monodromy_filtration,
    relative_weight_filtration,
    same_space,
    span,
    subspace_sum,
)


def e(i, n):
    return [1 if j == i else 0 for j in range(n)]


def shift_matrix(n):
    """Single Jordan block: e_(i+1) -> e_i."""
    m = sympy.zeros(n)
    for i in range(n - 1):
        m[i, i + 1] = 1
    return m


def test_span_and_intersection():
    a = span([e(0, 3), e(1, 3)])
    b = span([e(1, 3), e(2, 3)])
    assert same_space(intersection(a, b), span([e(1, 3)]))
    assert subspace_sum(a, b).cols == 3
    assert contains(a, sympy.Matrix([2, -1, 0]))
    assert not contains(a, sympy.Matrix([0, 0, 1]))


def test_single_block_monodromy_filtration():
    n = shift_matrix(4)
    levels = monodromy_filtration(n, sympy.eye(4), 3)
    dims = {k: levels[k].cols for k in range(-1, 8)}
    assert [dims[k] for k in range(0, 8)] == [1, 1, 2, 2, 3, 3, 4, 4]
    assert same_space(levels[0], span([e(0, 4)]))


def test_pure_w_gives_monodromy_filtration():
    n = shift_matrix(3)
    w = Filtration.from_vectors({2: [e(i, 3) for i in range(3)]}, 3)
    m = relative_weight_filtration(n, w)
    assert m.dimensions(range(0, 6)) == (1, 1, 2, 2, 3, 3)


def test_extension_of_tate_by_block():
    """N sends the extra vector to the bottom of a length-2 block."""
    n = sympy.zeros(3)
    n[0, 1] = 1  # e1 -> e0
    n[0, 2] = 1  # e2 -> e0
    w = Filtration.from_vectors({1: [e(0, 3), e(1, 3)], 2: [e(i, 3) for i in range(3)]}, 3)
    m = relative_weight_filtration(n, w)
    assert is_relative_weight_filtration(n, w, m)
    assert m.dimension(0) == 1 and m.dimension(2) == 3


def test_non_preserving_n_is_rejected():
    n = sympy.zeros(2)
    n[1, 0] = 1
    w = Filtration.from_vectors({0: [e(0, 2)], 1: [e(0, 2), e(1, 2)]}, 2)
    with pytest.raises(AdmissibilityError):
        relative_weight_filtration(n, w)


def test_filtration_must_increase():
    with pytest.raises(ValueError):
        Filtration.from_vectors({0: [e(0, 2), e(1, 2)], 1: [e(0, 2)]}, 2)


@given(st.lists(st.integers(1, 3), min_size=1, max_size=3))
def test_jordan_blocks_property(sizes):
    """For a direct sum of blocks the filtration is N-stable and N^j is
    an isomorphism Gr_(c+j) -> Gr_(c-j)."""
    dim = sum(sizes)
    n = sympy.zeros(dim)
    pos = 0
    for s in sizes:
        for i in range(s - 1):
            n[pos + i, pos + i + 1] = 1
        pos += s
    w = Filtration.from_vectors({3: [e(i, dim) for i in range(dim)]}, dim)
    m = relative_weight_filtration(n, w)
    assert is_relative_weight_filtration(n, w, m)
    for j in range(dim):
        assert m.dimension(3 + j) - m.dimension(2 + j) == m.dimension(3 - j) - m.dimension(2 - j)
