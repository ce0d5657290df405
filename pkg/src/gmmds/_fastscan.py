"""Compiled scan of order-3 maximal configurations over prime fields.

Three subspaces X_1, X_2, X_3 of F^K with dimensions summing to 2K meet in
zero exactly when their annihilators (dimensions summing to K) stack to a
nonsingular K x K matrix.  The kernel walks the same nondecreasing index
triples as ``iter_bounded_tuples`` in the same order, so witnesses coincide
with the pure Python scan.  Used only when numba is importable and the field
is GF(p) with p < 2^31 (products then fit in int64).
"""

from __future__ import annotations

from typing import Callable, Sequence

import numpy as np

from .errors import TooLarge
from .exactla import kernel_rows
from .gf import GF

try:
    from numba import njit
except ImportError:  # pragma: no cover - exercised only without numba
    njit = None

_MAX_P = 1 << 31


def available(F: GF) -> bool:
    return njit is not None and F.m == 1 and F.p < _MAX_P


if njit is not None:

    @njit(cache=True)
    def _popcount(x):
        c = 0
        while x:
            x &= x - 1
            c += 1
        return c

    @njit(cache=True)
    def _nonsingular(M, K, p):
        for c in range(K):
            piv = -1
            for i in range(c, K):
                if M[i, c] != 0:
                    piv = i
                    break
            if piv < 0:
                return False
            if piv != c:
                for j in range(c, K):
                    tmp = M[c, j]
                    M[c, j] = M[piv, j]
                    M[piv, j] = tmp
            pv = M[c, c]
            for i in range(c + 1, K):
                a = M[i, c]
                if a != 0:
                    for j in range(c, K):
                        M[i, j] = (M[i, j] * pv - a * M[c, j]) % p
        return True

    @njit(cache=True)
    def _scan3(sig, mask, size, N, h, first, end, K, p, budget, out):
        ns = sig.shape[0]
        work = np.zeros((K, K), dtype=np.int64)
        count = 0
        for t1 in range(ns):
            s1 = size[t1]
            for t2 in range(t1, ns):
                s2 = size[t2]
                s3 = 2 * K - s1 - s2
                if s3 > s2:
                    break
                if s3 < 1 or first[s3] >= end[s3]:
                    continue
                m12 = mask[t1] & mask[t2]
                if min(sig[t1], sig[t2]) + _popcount(m12) + s3 > K:
                    continue
                lo = max(t2, first[s3])
                for t3 in range(lo, end[s3]):
                    if min(sig[t1], sig[t3]) + _popcount(mask[t1] & mask[t3]) + s2 > K:
                        continue
                    if min(sig[t2], sig[t3]) + _popcount(mask[t2] & mask[t3]) + s1 > K:
                        continue
                    if min(sig[t1], min(sig[t2], sig[t3])) + _popcount(m12 & mask[t3]) > 0:
                        continue
                    count += 1
                    if budget >= 0 and count > budget:
                        out[0] = -2
                        return count
                    r = 0
                    for t in (t1, t2, t3):
                        for i in range(h[t]):
                            for j in range(K):
                                work[r, j] = N[t, i, j]
                            r += 1
                    if not _nonsingular(work, K, p):
                        out[0] = t1
                        out[1] = t2
                        out[2] = t3
                        return count
        out[0] = -1
        return count


def scan_order3(
    F: GF,
    K: int,
    slots: Sequence[tuple[int, int]],
    vectors: Callable[[int], list],
    budget: int | None,
) -> tuple[tuple[int, int, int] | None, int]:
    """First failing triple of slot indices (or None) and the number of triples checked.

    ``slots`` must come from ``make_slots`` (sorted by size, descending) and
    ``vectors(t)`` returns an independent spanning set of slot t's subspace.
    """
    ns = len(slots)
    sig = np.array([s for s, _ in slots], dtype=np.int64)
    mask = np.array([m for _, m in slots], dtype=np.int64)
    size = np.array([s + m.bit_count() for s, m in slots], dtype=np.int64)
    N = np.zeros((max(ns, 1), K, K), dtype=np.int64)
    h = np.zeros(max(ns, 1), dtype=np.int64)
    for t in range(ns):
        ann = kernel_rows(F, vectors(t), K)
        h[t] = len(ann)
        for i, row in enumerate(ann):
            N[t, i, :] = row
    first = np.full(K + 1, ns, dtype=np.int64)
    end = np.zeros(K + 1, dtype=np.int64)
    for t in range(ns - 1, -1, -1):
        first[size[t]] = t
    for t in range(ns):
        end[size[t]] = t + 1
    out = np.zeros(3, dtype=np.int64)
    b = -1 if budget is None else int(budget)
    count = int(_scan3(sig, mask, size, N, h, first, end, K, F.p, b, out))
    if out[0] == -2:
        raise TooLarge(f"enumeration exceeded budget {budget}")
    if out[0] == -1:
        return None, count
    return (int(out[0]), int(out[1]), int(out[2])), count
