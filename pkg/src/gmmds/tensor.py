"""Erasure recovery in (ell x n) tensor codes whose column code is the single parity code."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .codes import Verdict
from .errors import Incompatible, MalformedInput, TooLarge
from .exactla import Mat, kernel_rows, rank_of_rows
from .patterns import iter_null_families

MAX_N = 8
MAX_ELL = 3
DEFAULT_BUDGET = 2_000_000


@dataclass(frozen=True)
class ErasurePattern:
    m: int
    n: int
    cells: frozenset[tuple[int, int]]

    def __post_init__(self):
        cells = frozenset((int(i), int(j)) for i, j in self.cells)
        for i, j in cells:
            if not (0 <= i < self.m and 0 <= j < self.n):
                raise MalformedInput(f"cell ({i}, {j}) outside the {self.m} x {self.n} grid")
        object.__setattr__(self, "cells", cells)

    @classmethod
    def from_family(cls, n: int, A: Sequence[Iterable[int]]) -> "ErasurePattern":
        """Cells (i, j) with j outside A_i."""
        cells = []
        for i, S in enumerate(A):
            S = set(S)
            cells.extend((i, j) for j in range(n) if j not in S)
        return cls(len(A), n, frozenset(cells))

    def to_json(self) -> dict:
        return {"m": self.m, "n": self.n, "cells": [list(c) for c in sorted(self.cells)]}


@dataclass(frozen=True)
class TensorDescriptor:
    """(m, n, a, b): m x n grid, a parities per column, b per row."""

    m: int
    n: int
    a: int
    b: int

    def check_budget(self) -> None:
        if self.a != 1:
            raise MalformedInput("only single-parity column codes are supported")
        if self.n > MAX_N or self.m > MAX_ELL:
            raise TooLarge(f"exhaustive MR check limited to n <= {MAX_N}, m <= {MAX_ELL}")


def parity_tensor_matrix(V: Mat, ell: int) -> Mat:
    """[1^T (x) I_n ; I_ell (x) V] acting on the row-major grid vector."""
    F, k, n = V.field, V.rows, V.cols
    width = ell * n
    data = []
    for j in range(n):
        row = [0] * width
        for i in range(ell):
            row[i * n + j] = 1
        data.append(row)
    for i in range(ell):
        for r in range(k):
            row = [0] * width
            row[i * n : (i + 1) * n] = V.data[r]
            data.append(row)
    return Mat(F, data, n + ell * k, width)


def is_recoverable_parity_tensor(Q: Mat, V: Mat, ell: int, E: ErasurePattern) -> bool:
    """Erased cells are determined by the checks: the matching columns of the stacked matrix are independent."""
    if Q.field != V.field or Q.cols != V.cols:
        raise Incompatible("Q and V disagree on field or length")
    if not (V @ Q.T).is_zero():
        raise Incompatible("V Q^T is not zero")
    if E.m != ell or E.n != V.cols:
        raise Incompatible("erasure pattern does not match the grid")
    if not E.cells:
        return True
    H = parity_tensor_matrix(V, ell)
    n = V.cols
    cols = [H.col(i * n + j) for i, j in sorted(E.cells)]
    return rank_of_rows(V.field, cols, H.rows) == len(cols)


def _check_sizes(V: Mat, ell: int) -> None:
    if ell < 1:
        raise MalformedInput("ell must be at least 1")
    if V.cols > MAX_N or ell > MAX_ELL:
        raise TooLarge(f"MR check limited to n <= {MAX_N}, ell <= {MAX_ELL}")


def check_mr_parity_tensor(V: Mat, ell: int, budget: int | None = DEFAULT_BUDGET) -> Verdict:
    """MR of parity (x) ker(V) over the patterns E = union {i} x complement(A_i).

    The families are the null-intersection families for dimension r = n - rank
    of the row code, including empty and full-size sets.  A pattern is
    recoverable iff the row-code words supported on each complement(A_i) form
    a direct sum, which is what the stacked-matrix test reduces to; this form
    is used for speed and is cross-checked against the literal one in tests.
    """
    _check_sizes(V, ell)
    F, n = V.field, V.cols
    rV = rank_of_rows(F, V.data, n) if V.rows else 0
    if rV != V.rows:
        raise MalformedInput("V must have full row rank")
    r = n - V.rows
    cache: dict[frozenset, list[list[int]]] = {}

    def supported(A: frozenset) -> list[list[int]]:
        """Basis of {c in ker V : c_j = 0 for j in A}."""
        B = cache.get(A)
        if B is None:
            free = [j for j in range(n) if j not in A]
            sub = kernel_rows(F, [[row[j] for j in free] for row in V.data], len(free)) if V.rows else [
                [1 if t == s else 0 for t in range(len(free))] for s in range(len(free))
            ]
            B = []
            for v in sub:
                w = [0] * n
                for t, j in enumerate(free):
                    w[j] = v[t]
                B.append(w)
            cache[A] = B
        return B

    checked = 0
    for fam in iter_null_families(n, r, ell, 0, r, budget=budget):
        checked += 1
        vecs: list[list[int]] = []
        for A in fam:
            vecs.extend(supported(A))
        if vecs and rank_of_rows(F, vecs, n) < len(vecs):
            E = ErasurePattern.from_family(n, fam)
            w = {"reason": "unrecoverable", "family": [sorted(A) for A in fam], "pattern": E.to_json()}
            return Verdict(False, w, checked=checked)
    return Verdict(True, checked=checked)


def is_mr_parity_tensor(V: Mat, ell: int, budget: int | None = DEFAULT_BUDGET) -> bool:
    return check_mr_parity_tensor(V, ell, budget).verdict


def check_mr_parity_tensor_literal(Q: Mat, V: Mat, ell: int, budget: int | None = DEFAULT_BUDGET) -> Verdict:
    """Same scan, each pattern decided by is_recoverable_parity_tensor."""
    _check_sizes(V, ell)
    n = V.cols
    r = n - V.rows
    checked = 0
    for fam in iter_null_families(n, r, ell, 0, r, budget=budget):
        checked += 1
        E = ErasurePattern.from_family(n, fam)
        if not is_recoverable_parity_tensor(Q, V, ell, E):
            w = {"reason": "unrecoverable", "family": [sorted(A) for A in fam], "pattern": E.to_json()}
            return Verdict(False, w, checked=checked)
    return Verdict(True, checked=checked)
