"""Increasing filtrations of Q^n and the relative monodromy filtration M(N, W).

Subspaces are sympy matrices whose columns form a basis (``n x 0`` for the
zero space).  All linear algebra is exact over the rationals.
"""
from __future__ import annotations

from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import sympy

from .errors import AdmissibilityError


def _zero_space(n: int) -> sympy.Matrix:
    return sympy.zeros(n, 0)


def span(vectors: Iterable[Sequence] | sympy.Matrix, n: Optional[int] = None) -> sympy.Matrix:
    if isinstance(vectors, sympy.MatrixBase):
        mat = vectors
    else:
        cols = [sympy.Matrix(list(v)) for v in vectors]
        if not cols:
            return _zero_space(n or 0)
        mat = sympy.Matrix.hstack(*cols)
    if mat.cols == 0:
        return _zero_space(mat.rows)
    basis = mat.columnspace()
    return sympy.Matrix.hstack(*basis) if basis else _zero_space(mat.rows)


def subspace_sum(*spaces: sympy.Matrix) -> sympy.Matrix:
    return span(sympy.Matrix.hstack(*spaces))


def intersection(a: sympy.Matrix, b: sympy.Matrix) -> sympy.Matrix:
    if a.cols == 0 or b.cols == 0:
        return _zero_space(a.rows)
    null = sympy.Matrix.hstack(a, -b).nullspace()
    return span([a * v[:a.cols, :] for v in null], a.rows) if null else _zero_space(a.rows)


def contains(space: sympy.Matrix, v: sympy.Matrix) -> bool:
    if space.cols == 0:
        return all(x == 0 for x in v)
    return sympy.Matrix.hstack(space, v).rank() == space.cols


def is_subspace(a: sympy.Matrix, b: sympy.Matrix) -> bool:
    return all(contains(b, a[:, j]) for j in range(a.cols))


def same_space(a: sympy.Matrix, b: sympy.Matrix) -> bool:
    return a.cols == b.cols and is_subspace(a, b)


def kernel_in(mat: sympy.Matrix, space: sympy.Matrix) -> sympy.Matrix:
    """{v in space : mat v = 0}."""
    if space.cols == 0:
        return space
    null = (mat * space).nullspace()
    return span([space * v for v in null], space.rows) if null else _zero_space(space.rows)


def image(mat: sympy.Matrix, space: sympy.Matrix) -> sympy.Matrix:
    return span(mat * space) if space.cols else _zero_space(mat.rows)


class Filtration:
    """Increasing filtration given on a finite window of indices.

    Below the window the filtration is 0, above it the last listed space.
    """

    def __init__(self, levels: Mapping[int, sympy.Matrix], dim: int):
        self.dim = dim
        self.levels: Dict[int, sympy.Matrix] = {k: span(v) for k, v in sorted(levels.items())}
        keys = sorted(self.levels)
        for a, b in zip(keys, keys[1:]):
            if not is_subspace(self.levels[a], self.levels[b]):
                raise ValueError(f"not increasing between {a} and {b}")

    @classmethod
    def from_vectors(cls, levels: Mapping[int, Iterable[Sequence]], dim: int) -> "Filtration":
        return cls({k: span(v, dim) for k, v in levels.items()}, dim)

    def __getitem__(self, k: int) -> sympy.Matrix:
        below = [j for j in self.levels if j <= k]
        if not below:
            return _zero_space(self.dim)
        return self.levels[max(below)]

    def dimension(self, k: int) -> int:
        return self[k].cols

    @property
    def indices(self) -> List[int]:
        return sorted(self.levels)

    def jumps(self) -> List[int]:
        """Indices k with M_k != M_{k-1}."""
        return [k for k in self.indices if self.dimension(k) != self.dimension(k - 1)]

    def dimensions(self, ks: Iterable[int]) -> Tuple[int, ...]:
        return tuple(self.dimension(k) for k in ks)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Filtration):
            return NotImplemented
        ks = set(self.indices) | set(other.indices)
        if not ks:
            return self.dim == other.dim
        lo, hi = min(ks) - 1, max(ks) + 1
        return self.dim == other.dim and all(
            same_space(self[k], other[k]) for k in range(lo, hi + 1))

    def __repr__(self) -> str:
        return "Filtration(" + ", ".join(
            f"{k}: dim {self.dimension(k)}" for k in self.indices) + ")"


def monodromy_filtration(n_mat: sympy.Matrix, space: sympy.Matrix, center: int) -> Dict[int, sympy.Matrix]:
    """Weight filtration of the nilpotent N on ``space`` centered at ``center``:
    M_(c+k) = sum_{j >= max(0, -k)} N^j ker N^(k+2j+1)."""
    dim = space.cols
    out: Dict[int, sympy.Matrix] = {}
    powers = [sympy.eye(n_mat.rows)]
    for _ in range(2 * dim + 2):
        powers.append(powers[-1] * n_mat)
    for k in range(-dim, dim + 1):
        pieces = []
        for j in range(max(0, -k), dim + 1):
            e = k + 2 * j + 1
            if e <= 0:
                continue
            ker = kernel_in(powers[min(e, len(powers) - 1)], space)
            pieces.append(image(powers[j], ker))
        out[center + k] = subspace_sum(*pieces) if pieces else _zero_space(n_mat.rows)
    return out


def _chains(n_g: sympy.Matrix) -> List[Tuple[sympy.Matrix, int]]:
    """Jordan strings of a nilpotent matrix: (top vector, length)."""
    if n_g.rows == 0:
        return []
    P, J = n_g.jordan_form()
    out = []
    i = 0
    while i < J.rows:
        j = i
        while j + 1 < J.rows and J[j, j + 1] == 1:
            j += 1
        out.append((P[:, j], j - i + 1))
        i = j + 1
    return out


def relative_weight_filtration(n_mat: sympy.Matrix, w: Filtration) -> Filtration:
    """The W-relative monodromy filtration M(N, W), by induction on the
    length of W."""
    n_mat = sympy.Matrix(n_mat)
    dim = w.dim
    for k in w.indices:
        if not is_subspace(image(n_mat, w[k]), w[k]):
            raise AdmissibilityError(f"N does not preserve W_{k}")
    levels = [k for k in w.jumps()]
    if not levels:
        return Filtration({}, dim)
    m = _relative(n_mat, w, levels)
    result = Filtration(m, dim)
    if not is_relative_weight_filtration(n_mat, w, result):
        raise AdmissibilityError("constructed filtration fails the defining properties")
    return result


def _relative(n_mat: sympy.Matrix, w: Filtration, levels: List[int]) -> Dict[int, sympy.Matrix]:
    dim = w.dim
    b = levels[-1]
    top = w[b]
    window = range(min(levels) - 2 * dim - 2, b + 2 * dim + 3)
    if len(levels) == 1:
        mf = monodromy_filtration(n_mat, top, b)
        return {k: _lookup(mf, k, top) for k in window}
    prev = _relative(n_mat, w, levels[:-1])
    sub = w[levels[-2]]

    def m_prev(k: int) -> sympy.Matrix:
        return _lookup(prev, k, sub)

    # complement of sub inside top, and N on the quotient
    comp_cols = []
    acc = sub
    for j in range(top.cols):
        v = top[:, j]
        if not contains(acc, v):
            comp_cols.append(v)
            acc = sympy.Matrix.hstack(acc, v)
    comp = sympy.Matrix.hstack(*comp_cols)
    full = sympy.Matrix.hstack(sub, comp)
    r = sub.cols
    n_g = sympy.zeros(comp.cols, comp.cols)
    for j in range(comp.cols):
        coords = full.solve(n_mat * comp[:, j]) if full.rows == full.cols else \
            full.gauss_jordan_solve(n_mat * comp[:, j])[0]
        n_g[:, j] = coords[r:, :]
    added: Dict[int, List[sympy.Matrix]] = {}
    for g, length in _chains(n_g):
        jj = length - 1
        lift = comp * g
        target = m_prev(b - jj - 2)
        npow = n_mat ** (jj + 1)
        rhs = -(npow * lift)
        system = sympy.Matrix.hstack(npow * sub, -target) if target.cols else npow * sub
        try:
            sol, params = system.gauss_jordan_solve(rhs)
        except ValueError:
            raise AdmissibilityError(
                f"no lift of a weight {b + jj} primitive vector satisfies the relative condition")
        sol = sol.subs({p: 0 for p in params})
        x = sub * sol[:sub.cols, :]
        v = lift + x
        for i in range(length):
            weight = b + jj - 2 * i
            added.setdefault(weight, []).append((n_mat ** i) * v)
    out = {}
    for k in window:
        extra = [vec for wt, vecs in added.items() if wt <= k for vec in vecs]
        out[k] = subspace_sum(m_prev(k), *extra) if extra else m_prev(k)
    return out


def _lookup(levels: Dict[int, sympy.Matrix], k: int, top: sympy.Matrix) -> sympy.Matrix:
    if k in levels:
        return levels[k]
    if k > max(levels):
        return top
    return _zero_space(top.rows)


def is_relative_weight_filtration(n_mat: sympy.Matrix, w: Filtration, m: Filtration) -> bool:
    """N M_k in M_(k-2), and on every Gr^W_b the induced filtration is the
    monodromy filtration of N centered at b."""
    ks = m.indices
    if not ks:
        return True
    lo, hi = min(ks) - 2, max(ks) + 2
    for k in range(lo, hi + 1):
        if not is_subspace(image(n_mat, m[k]), m[k - 2]):
            return False
    jumps = w.jumps()
    for idx, b in enumerate(jumps):
        wb = w[b]
        wb1 = w[jumps[idx - 1]] if idx else sympy.zeros(w.dim, 0)
        for j in range(0, w.dim + 1):
            # N^j : Gr^M_(b+j) Gr^W_b -> Gr^M_(b-j) Gr^W_b must be an isomorphism
            def graded(k):
                num = subspace_sum(intersection(m[k], wb), wb1)
                den = subspace_sum(intersection(m[k - 1], wb), wb1)
                return num, den
            num_hi, den_hi = graded(b + j)
            num_lo, den_lo = graded(b - j)
            d_hi = num_hi.cols - den_hi.cols
            d_lo = num_lo.cols - den_lo.cols
            if d_hi != d_lo:
                return False
            if d_hi == 0:
                continue
            npow = n_mat ** j
            imgs = subspace_sum(image(npow, num_hi), den_lo)
            if imgs.cols - den_lo.cols != d_hi:
                return False
    return True
