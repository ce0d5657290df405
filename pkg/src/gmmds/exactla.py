"""Exact dense linear algebra over a GF.

Matrices are immutable row-major tuples of field elements.  The elimination
kernels work on plain lists of ints and are shared by every higher module.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .errors import IndexOutOfRange, MalformedInput, NonSquare, RankDeficient
from .gf import GF


class Mat:
    """Immutable k x n matrix over a finite field."""

    __slots__ = ("field", "rows", "cols", "data")

    def __init__(self, field: GF, data: Iterable[Sequence[int]], rows: int | None = None, cols: int | None = None):
        data = tuple(tuple(r) for r in data)
        if rows is None:
            rows = len(data)
        if cols is None:
            cols = len(data[0]) if data else 0
        if len(data) != rows or any(len(r) != cols for r in data):
            raise MalformedInput(f"ragged data for a {rows}x{cols} matrix")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "data", data)

    def __setattr__(self, name, value):
        raise AttributeError("Mat is immutable")

    @classmethod
    def from_entries(cls, field: GF, entries, rows: int | None = None, cols: int | None = None) -> "Mat":
        """Build from user entries (ints or coefficient lists), canonicalising each."""
        el = field.element
        return cls(field, [[el(x) for x in row] for row in entries], rows, cols)

    @classmethod
    def zeros(cls, field: GF, rows: int, cols: int) -> "Mat":
        return cls(field, [[0] * cols for _ in range(rows)], rows, cols)

    @classmethod
    def identity(cls, field: GF, n: int) -> "Mat":
        return cls(field, [[1 if i == j else 0 for j in range(n)] for i in range(n)], n, n)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def T(self) -> "Mat":
        data = list(zip(*self.data)) if self.rows else [() for _ in range(self.cols)]
        return Mat(self.field, data, self.cols, self.rows)

    def col(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self.data)

    def columns(self) -> list[tuple[int, ...]]:
        return [self.col(j) for j in range(self.cols)]

    def select_cols(self, cols: Iterable[int]) -> "Mat":
        cols = list(cols)
        for j in cols:
            if not 0 <= j < self.cols:
                raise IndexOutOfRange(f"column {j} outside [0, {self.cols})")
        return Mat(self.field, [[r[j] for j in cols] for r in self.data], self.rows, len(cols))

    def select_rows(self, rows: Iterable[int]) -> "Mat":
        rows = list(rows)
        return Mat(self.field, [self.data[i] for i in rows], len(rows), self.cols)

    def hstack(self, other: "Mat") -> "Mat":
        if self.rows != other.rows:
            raise MalformedInput("hstack needs equal row counts")
        return Mat(self.field, [a + b for a, b in zip(self.data, other.data)], self.rows, self.cols + other.cols)

    def vstack(self, other: "Mat") -> "Mat":
        if self.cols != other.cols:
            raise MalformedInput("vstack needs equal column counts")
        return Mat(self.field, self.data + other.data, self.rows + other.rows, self.cols)

    def __matmul__(self, other: "Mat") -> "Mat":
        if self.cols != other.rows:
            raise MalformedInput(f"cannot multiply {self.shape} by {other.shape}")
        F = self.field
        cols = other.columns()
        return Mat(F, [[F.dot(r, c) for c in cols] for r in self.data], self.rows, other.cols)

    def is_zero(self) -> bool:
        return all(not x for r in self.data for x in r)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Mat)
            and self.field == other.field
            and self.shape == other.shape
            and self.data == other.data
        )

    def __hash__(self) -> int:
        return hash((self.field, self.rows, self.cols, self.data))

    def __repr__(self) -> str:
        return f"Mat({self.field!r}, {self.rows}x{self.cols}, {[list(r) for r in self.data]})"


# ---------------------------------------------------------------------------
# elimination kernels on lists of rows


def echelonize(F: GF, rows: list[list[int]], ncols: int, reduced: bool = True) -> list[int]:
    """In-place Gauss-Jordan elimination; returns pivot columns.

    Pivot rows are normalised to a leading 1.  With reduced=False only the
    rows below each pivot are cleared (enough for rank).
    """
    nrows = len(rows)
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = -1
        for i in range(r, nrows):
            if rows[i][c]:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        lead = prow[c]
        if lead != 1:
            prow = F.scale_row(prow, F.inv(lead))
            rows[r] = prow
        start = 0 if reduced else r + 1
        for i in range(start, nrows):
            if i != r:
                f = rows[i][c]
                if f:
                    rows[i] = F.axpy_row(rows[i], f, prow)
        pivots.append(c)
        r += 1
    return pivots


def rank_of_rows(F: GF, rows: Iterable[Sequence[int]], ncols: int | None = None) -> int:
    work = [list(r) for r in rows]
    if not work:
        return 0
    if ncols is None:
        ncols = len(work[0])
    return len(echelonize(F, work, ncols, reduced=False))


def row_basis(F: GF, rows: Iterable[Sequence[int]], ncols: int) -> list[list[int]]:
    """Reduced echelon basis of the span of the given vectors."""
    work = [list(r) for r in rows]
    piv = echelonize(F, work, ncols, reduced=True)
    return work[: len(piv)]


def det_rows(F: GF, rows: Sequence[Sequence[int]]) -> int:
    n = len(rows)
    work = [list(r) for r in rows]
    d = 1
    for c in range(n):
        piv = -1
        for i in range(c, n):
            if work[i][c]:
                piv = i
                break
        if piv < 0:
            return 0
        if piv != c:
            work[c], work[piv] = work[piv], work[c]
            d = F.neg(d)
        prow = work[c]
        lead = prow[c]
        d = F.mul(d, lead)
        inv = F.inv(lead)
        for i in range(c + 1, n):
            f = work[i][c]
            if f:
                work[i] = F.axpy_row(work[i], F.mul(f, inv), prow)
    return d


def kernel_rows(F: GF, rows: Sequence[Sequence[int]], ncols: int) -> list[list[int]]:
    """Canonical right-kernel basis: one vector per free column, that coordinate set to 1."""
    work = [list(r) for r in rows]
    piv = echelonize(F, work, ncols, reduced=True)
    pivset = set(piv)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        v = [0] * ncols
        v[free] = 1
        for r, c in enumerate(piv):
            x = work[r][free]
            if x:
                v[c] = F.neg(x)
        basis.append(v)
    return basis


def span_intersection(F: GF, B1: Sequence[Sequence[int]], B2: Sequence[Sequence[int]], dim: int) -> list[list[int]]:
    """Basis of span(B1) ∩ span(B2) in F^dim (Zassenhaus)."""
    if not B1 or not B2:
        return []
    zero = [0] * dim
    work = [list(b) + list(b) for b in B1] + [list(b) + zero for b in B2]
    echelonize(F, work, 2 * dim, reduced=False)
    out = []
    for row in work:
        if not any(row[:dim]) and any(row[dim:]):
            out.append(row[dim:])
    return out


# ---------------------------------------------------------------------------
# public API on Mat


def rref(M: Mat) -> tuple[Mat, int, list[int]]:
    work = [list(r) for r in M.data]
    piv = echelonize(M.field, work, M.cols, reduced=True)
    return Mat(M.field, work, M.rows, M.cols), len(piv), piv


def rank(M: Mat) -> int:
    if M.rows == 0 or M.cols == 0:
        return 0
    return rank_of_rows(M.field, M.data, M.cols)


def det(M: Mat) -> int:
    if M.rows != M.cols:
        raise NonSquare(f"determinant of a {M.rows}x{M.cols} matrix")
    if M.rows == 0:
        return 1
    return det_rows(M.field, M.data)


def kernel_basis(M: Mat) -> Mat:
    """Columns span the right kernel of M."""
    ker = kernel_rows(M.field, M.data, M.cols)
    return Mat(M.field, list(zip(*ker)) if ker else [[] for _ in range(M.cols)], M.cols, len(ker))


def dual_matrix(V: Mat) -> Mat:
    """Canonical (n-k) x n matrix Q of rank n-k with V Q^T = 0 (rref of the kernel basis)."""
    if rank(V) != V.rows:
        raise RankDeficient(f"rank {rank(V)} < {V.rows}")
    F = V.field
    ker = kernel_rows(F, V.data, V.cols)
    ker = row_basis(F, ker, V.cols)
    return Mat(F, ker, len(ker), V.cols)


def _check_sets(A: Sequence[Iterable[int]], n: int) -> list[list[int]]:
    out = []
    for S in A:
        S = sorted(S)
        for j in S:
            if not 0 <= j < n:
                raise IndexOutOfRange(f"index {j} outside [0, {n})")
        out.append(S)
    return out


def _block_pieces(V: Mat, A, U: Mat | None, sigma) -> list[list[tuple[int, ...]]]:
    """Column lists [U|_{<=sigma_i} V|_{A_i}] for each i."""
    sets = _check_sets(A, V.cols)
    if U is None:
        if sigma is not None and any(sigma):
            raise MalformedInput("sigma given without U")
        sigma = [0] * len(sets)
    else:
        if U.rows != V.rows:
            raise MalformedInput("U and V need the same number of rows")
        if sigma is None or len(sigma) != len(sets):
            raise MalformedInput("sigma must have one entry per set")
        for s in sigma:
            if not 0 <= s <= U.cols:
                raise IndexOutOfRange(f"sigma {s} outside [0, {U.cols}]")
    Vc = V.columns()
    Uc = U.columns() if U is not None else []
    return [Uc[:s] + [Vc[j] for j in S] for s, S in zip(sigma, sets)]


def block_intersection_matrix(V: Mat, A, U: Mat | None = None, sigma=None) -> Mat:
    """[I_k B_1 0 ...; I_k 0 B_2 ...; ...] with B_i = [U|_{<=sigma_i} V|_{A_i}]."""
    F, k = V.field, V.rows
    pieces = _block_pieces(V, A, U, sigma)
    ell = len(pieces)
    width = k + sum(len(p) for p in pieces)
    data = []
    offset = k
    for i, cols in enumerate(pieces):
        for r in range(k):
            row = [0] * width
            row[r] = 1
            for t, c in enumerate(cols):
                row[offset + t] = c[r]
            data.append(row)
        offset += len(cols)
    return Mat(F, data, ell * k, width)


def intersection_dimension(V: Mat, A, U: Mat | None = None, sigma=None) -> int:
    """dim of the intersection of the spans U_{<=sigma_i} + V_{A_i}, via the block-rank identity."""
    F, k = V.field, V.rows
    pieces = _block_pieces(V, A, U, sigma)
    if not pieces:
        return k
    dims = sum(rank_of_rows(F, cols, k) if cols else 0 for cols in pieces)
    return k + dims - rank(block_intersection_matrix(V, A, U, sigma))


def direct_intersection_dimension(V: Mat, A, U: Mat | None = None, sigma=None) -> int:
    """Same quantity computed by successive pairwise subspace intersections."""
    F, k = V.field, V.rows
    pieces = _block_pieces(V, A, U, sigma)
    if not pieces:
        return k
    cur = row_basis(F, pieces[0], k) if pieces[0] else []
    for cols in pieces[1:]:
        if not cur:
            return 0
        nxt = row_basis(F, cols, k) if cols else []
        cur = span_intersection(F, cur, nxt, k)
    return len(cur)
