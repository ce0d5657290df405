"""Zero patterns, set families and (sigma, A) configurations.

Sets are 0-based.  Internally every set is a bitmask; the dataclasses expose
frozensets.  Everything here is pure combinatorics, no field arithmetic.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Sequence

from .errors import (
    CompletionFailed,
    ImproperConfig,
    MalformedInput,
    NoMutationExists,
    NotGeneric,
    PreconditionFailed,
    TooLarge,
)

MAX_ELL = 6


def to_mask(S: Iterable[int]) -> int:
    m = 0
    for j in S:
        m |= 1 << j
    return m


def from_mask(m: int) -> frozenset[int]:
    out = []
    j = 0
    while m:
        if m & 1:
            out.append(j)
        m >>= 1
        j += 1
    return frozenset(out)


def _check_indices(S: Iterable[int], n: int) -> frozenset[int]:
    S = frozenset(int(j) for j in S)
    for j in S:
        if not 0 <= j < n:
            raise MalformedInput(f"index {j} outside [0, {n})")
    return S


@dataclass(frozen=True)
class ZeroPattern:
    n: int
    k: int
    S: tuple[frozenset[int], ...]

    def __post_init__(self):
        object.__setattr__(self, "S", tuple(_check_indices(s, self.n) for s in self.S))
        if len(self.S) != self.k:
            raise MalformedInput(f"pattern needs {self.k} sets, got {len(self.S)}")

    @property
    def order(self) -> int:
        return len({s for s in self.S if s})

    def masks(self) -> list[int]:
        return [to_mask(s) for s in self.S]


@dataclass(frozen=True)
class SetFamily:
    n: int
    k: int
    A: tuple[frozenset[int], ...]

    def __post_init__(self):
        object.__setattr__(self, "A", tuple(_check_indices(a, self.n) for a in self.A))

    @property
    def ell(self) -> int:
        return len(self.A)


@dataclass(frozen=True)
class Config:
    """Order-ell configuration: pairs (sigma_i, A_i) with sigma_i in [0, b]."""

    k: int
    b: int
    pairs: tuple[tuple[int, frozenset[int]], ...]
    n: int | None = None

    def __post_init__(self):
        pairs = []
        for s, A in self.pairs:
            A = frozenset(int(j) for j in A)
            if self.n is not None:
                A = _check_indices(A, self.n)
            if any(j < 0 for j in A):
                raise MalformedInput("negative index")
            pairs.append((int(s), A))
        object.__setattr__(self, "pairs", tuple(pairs))
        for s, _ in self.pairs:
            if not 0 <= s <= self.b:
                raise MalformedInput(f"sigma {s} outside [0, {self.b}]")

    @property
    def ell(self) -> int:
        return len(self.pairs)

    @property
    def sigma(self) -> tuple[int, ...]:
        return tuple(s for s, _ in self.pairs)

    @property
    def sets(self) -> tuple[frozenset[int], ...]:
        return tuple(A for _, A in self.pairs)

    @property
    def total(self) -> int:
        return sum(s + len(A) for s, A in self.pairs)

    @property
    def proper(self) -> bool:
        return all(s + len(A) <= self.k for s, A in self.pairs)

    def replace(self, i: int, sigma: int, A: Iterable[int]) -> "Config":
        pairs = list(self.pairs)
        pairs[i] = (sigma, frozenset(A))
        return Config(self.k, self.b, tuple(pairs), self.n)


@dataclass(frozen=True)
class NullConfig:
    config: Config
    delta: tuple[int, ...] = field(default=())


# ---------------------------------------------------------------------------
# partitions


@functools.lru_cache(maxsize=None)
def set_partitions(ell: int) -> tuple[tuple[int, ...], ...]:
    """All partitions of range(ell) as tuples of block bitmasks (restricted-growth strings)."""
    out = []
    if ell == 0:
        return ((),)
    a = [0] * ell

    def rec(i: int, mx: int) -> None:
        if i == ell:
            blocks = [0] * (mx + 1)
            for j, b in enumerate(a):
                blocks[b] |= 1 << j
            out.append(tuple(blocks))
            return
        for v in range(mx + 2):
            a[i] = v
            rec(i + 1, max(mx, v))

    a[0] = 0
    rec(1, 0)
    return tuple(out)


@functools.lru_cache(maxsize=None)
def _joined_partitions(t: int) -> tuple[tuple[int, ...], ...]:
    """Partitions of range(t+1) in which element t shares a block."""
    last = 1 << t
    return tuple(p for p in set_partitions(t + 1) if last not in p)


def _subset_values(k: int, sigma: Sequence[int], masks: Sequence[int]) -> list[int]:
    """val[J] = sigma_J + |A_J| for every nonempty J (bitmask over positions)."""
    ell = len(masks)
    full = -1
    inter = [full] * (1 << ell)
    sig = [10**9] * (1 << ell)
    val = [0] * (1 << ell)
    for J in range(1, 1 << ell):
        low = J & -J
        i = low.bit_length() - 1
        rest = J ^ low
        inter[J] = inter[rest] & masks[i]
        sig[J] = min(sig[rest], sigma[i])
        val[J] = sig[J] + inter[J].bit_count()
    return val


def _partition_max(k: int, val: Sequence[int], ell: int) -> int:
    best = None
    for part in set_partitions(ell):
        t = sum(val[B] for B in part) - k * (len(part) - 1)
        if best is None or t > best:
            best = t
    return best


def _check_ell(ell: int) -> None:
    if ell > MAX_ELL:
        raise TooLarge(f"order {ell} exceeds the cap {MAX_ELL}")


# ---------------------------------------------------------------------------
# zero patterns


def hall_ok(masks: Sequence[int], k: int) -> bool:
    """|∩_{i in I} S_i| <= k - |I| for every nonempty I."""
    kk = len(masks)
    inter = [-1] * (1 << kk)
    for I in range(1, 1 << kk):
        low = I & -I
        inter[I] = inter[I ^ low] & masks[low.bit_length() - 1]
        if inter[I].bit_count() > k - I.bit_count():
            return False
    return True


def is_generic_zero_pattern(P: ZeroPattern) -> bool:
    return hall_ok(P.masks(), P.k)


def complete_pattern(P: ZeroPattern) -> ZeroPattern:
    """Generic pattern with every |S_i| = k-1 containing P (depth-first with Hall pruning)."""
    if not is_generic_zero_pattern(P):
        raise NotGeneric("pattern violates the Hall condition")
    k, n = P.k, P.n
    masks = P.masks()
    target = k - 1

    def rec(i: int) -> bool:
        if i == k:
            return True
        need = target - masks[i].bit_count()
        free = [j for j in range(n) if not masks[i] >> j & 1]
        if need > len(free):
            return False
        base = masks[i]
        for extra in itertools.combinations(free, need):
            masks[i] = base | to_mask(extra)
            if hall_ok(masks, k):
                if rec(i + 1):
                    return True
        masks[i] = base
        return False

    if not rec(0):
        raise CompletionFailed(f"no generic completion with n={n}, k={k}")
    return ZeroPattern(n, k, tuple(from_mask(m) for m in masks))


def iter_pattern_orbits(n: int, k: int) -> Iterator[ZeroPattern]:
    """One generic zero pattern per orbit under row and column permutations.

    A pattern up to column order is the multiset of its n column types (bit i
    set when the column lies in S_i); the orbit representative is the multiset
    that is lexicographically least over all row permutations.
    """
    ntypes = 1 << k
    perms = list(itertools.permutations(range(k)))
    tables = []
    for perm in perms:
        tab = []
        for t in range(ntypes):
            u = 0
            for i in range(k):
                if t >> i & 1:
                    u |= 1 << perm[i]
            tab.append(u)
        tables.append(tab)
    for cols in itertools.combinations_with_replacement(range(ntypes), n):
        masks = [0] * k
        for j, t in enumerate(cols):
            for i in range(k):
                if t >> i & 1:
                    masks[i] |= 1 << j
        if not hall_ok(masks, k):
            continue
        canonical = True
        for tab in tables[1:]:
            if tuple(sorted(tab[t] for t in cols)) < cols:
                canonical = False
                break
        if canonical:
            yield ZeroPattern(n, k, tuple(from_mask(m) for m in masks))


# ---------------------------------------------------------------------------
# families and configurations


def partition_bound_holds(F: SetFamily, d: int = 0) -> bool:
    """sum_i |A_{P_i}| <= (s-1)k + d over every partition of the family."""
    _check_ell(F.ell)
    masks = [to_mask(a) for a in F.A]
    val = _subset_values(F.k, [0] * F.ell, masks)
    return all(sum(val[B] for B in part) <= (len(part) - 1) * F.k + d for part in set_partitions(F.ell))


def has_null_intersection(F: SetFamily) -> bool:
    return partition_bound_holds(F, 0)


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _delta_search(k: int, val: Sequence[int], ell: int, total: int) -> tuple[int, ...] | None:
    for delta in _compositions(total, ell):
        ok = True
        for J in range(1, 1 << ell):
            dj = sum(delta[i] for i in range(ell) if J >> i & 1)
            if val[J] > k - dj:
                ok = False
                break
        if ok:
            return delta
    return None


def find_delta_certificate(F: SetFamily, d: int) -> tuple[int, ...] | None:
    """delta >= 0 with sum k-d and |A_J| <= k - delta_J for all J, or None."""
    _check_ell(F.ell)
    if not 0 <= d <= F.k:
        raise MalformedInput(f"d={d} outside [0, {F.k}]")
    if any(len(a) > F.k for a in F.A):
        return None
    masks = [to_mask(a) for a in F.A]
    val = _subset_values(F.k, [0] * F.ell, masks)
    return _delta_search(F.k, val, F.ell, F.k - d)


def _config_vals(C: Config) -> list[int]:
    _check_ell(C.ell)
    return _subset_values(C.k, C.sigma, [to_mask(A) for A in C.sets])


def gid(C: Config) -> int:
    """Generic intersection dimension of a proper configuration."""
    if not C.proper:
        raise ImproperConfig("sigma_i + |A_i| exceeds k")
    if C.ell == 0:
        return C.k
    return max(0, _partition_max(C.k, _config_vals(C), C.ell))


def config_partition_bound(C: Config, d: int = 0) -> bool:
    val = _config_vals(C)
    return all(sum(val[B] for B in part) <= (len(part) - 1) * C.k + d for part in set_partitions(C.ell))


def config_delta_certificate(C: Config) -> tuple[int, ...] | None:
    """delta >= 0 with sum k and sigma_J + |A_J| <= k - delta_J for all J."""
    return _delta_search(C.k, _config_vals(C), C.ell, C.k)


def is_null_configuration(NC: NullConfig) -> bool:
    C, delta = NC.config, tuple(NC.delta)
    k, ell = C.k, C.ell
    if len(delta) != ell:
        return False
    if any(s < 0 for s in C.sigma) or any(x < 0 for x in delta):  # (a*)
        return False
    if C.total != (ell - 1) * k:  # (b*)
        return False
    if sum(delta) != k:  # (c*)
        return False
    val = _config_vals(C)
    for J in range(1, 1 << ell):  # (d*)
        if val[J] > k - sum(delta[i] for i in range(ell) if J >> i & 1):
            return False
    return all(s + len(A) + x == k for (s, A), x in zip(C.pairs, delta))  # (e*)


def is_maximal_configuration(C: Config) -> bool:
    if not C.proper or C.total != (C.ell - 1) * C.k:
        return False
    return config_partition_bound(C, 0) and config_delta_certificate(C) is not None


def minimal_contraction(C: Config) -> Config:
    """One-unit contraction lowering gid by exactly one.

    The slot touched is the last one holding the minimum sigma: if that
    minimum is positive it is decremented (every partition term drops by
    one), otherwise one element of its set is removed, lowest first.
    """
    d = gid(C)
    if d < 1:
        raise PreconditionFailed("contraction needs gid >= 1")
    sig = C.sigma
    lo = min(sig)
    i = max(t for t, s in enumerate(sig) if s == lo)
    s, A = C.pairs[i]
    if lo >= 1:
        cand = C.replace(i, s - 1, A)
        if gid(cand) == d - 1:
            return cand
    else:
        for j in sorted(A):
            cand = C.replace(i, s, A - {j})
            if gid(cand) == d - 1:
                return cand
    raise NoMutationExists(f"no minimal contraction of {C}")


def minimal_expansion(C: Config, n: int) -> Config:
    """Add one element j to some A_i keeping gid 0 (lowest i, then lowest j).

    Existence is guaranteed only when n >= k; smaller n may raise NoMutationExists.
    """
    if gid(C) != 0:
        raise PreconditionFailed("expansion needs gid 0")
    if C.total >= (C.ell - 1) * C.k:
        raise PreconditionFailed("expansion needs total < (ell-1)k")
    for i, (s, A) in enumerate(C.pairs):
        if s + len(A) >= C.k:
            continue
        for j in range(n):
            if j in A:
                continue
            cand = C.replace(i, s, A | {j})
            if gid(cand) == 0:
                return cand
    raise NoMutationExists(f"no minimal expansion of {C}")


# ---------------------------------------------------------------------------
# enumeration of families / configurations with the partition bound


Slot = tuple[int, int]  # (sigma, mask)


def make_slots(n: int, k: int, b: int, lo: int, hi: int) -> list[Slot]:
    """All (sigma, A) with lo <= sigma + |A| <= hi, sorted by size descending."""
    slots = []
    for s in range(b + 1):
        for a in range(max(0, lo - s), min(n, hi - s) + 1):
            for comb in itertools.combinations(range(n), a):
                slots.append((s, to_mask(comb)))
    slots.sort(key=lambda x: (-(x[0] + x[1].bit_count()), x[0], x[1]))
    return slots


def iter_bounded_tuples(
    slots: Sequence[Slot],
    ell: int,
    k: int,
    total: int,
    enter: Callable[[int, tuple[int, ...]], bool] | None = None,
    budget: int | None = None,
) -> Iterator[tuple[int, ...]]:
    """Nondecreasing index tuples of slots with sum of sizes == total obeying the
    partition bound sum_P (sigma_P + |A_P|) <= (s-1)k over all partitions.

    `enter(depth, prefix)` is called on every accepted proper prefix and may
    return False to skip its subtree.  Prefixes are pruned with the bound
    restricted to partitions whose other slots stay singletons.
    """
    _check_ell(ell)
    if ell == 0:
        return
    sizes = [s + m.bit_count() for s, m in slots]
    if not slots:
        return
    min_size, max_size = min(sizes), max(sizes)
    nslots = len(slots)
    # first index with size <= v
    first_le = {}
    for v in range(max_size, -1, -1):
        idx = nslots
        for t in range(nslots):
            if sizes[t] <= v:
                idx = t
                break
        first_le[v] = idx
    count = 0
    # per-depth subset tables
    inter = [[-1] * (1 << ell) for _ in range(ell + 1)]
    sigt = [[10**9] * (1 << ell) for _ in range(ell + 1)]
    chosen: list[int] = []

    def rec(depth: int, start: int, remaining: int, prefix_sum: int):
        nonlocal count
        r = ell - depth
        hi = remaining - (r - 1) * min_size
        lo = -(-remaining // r)
        if depth:
            hi = min(hi, sizes[chosen[-1]])
        if hi < lo:
            return
        t0 = max(start, first_le[min(hi, max_size)])
        parts = _joined_partitions(depth)
        bit = 1 << depth
        prev_inter, prev_sig = inter[depth], sigt[depth]
        cur_inter, cur_sig = inter[depth + 1], sigt[depth + 1]
        for t in range(t0, nslots):
            sz = sizes[t]
            if sz < lo:
                break
            s, m = slots[t]
            for J in range(bit):
                cur_inter[J] = prev_inter[J]
                cur_sig[J] = prev_sig[J]
                cur_inter[J | bit] = prev_inter[J] & m
                cur_sig[J | bit] = min(prev_sig[J], s)
            ok = True
            new_sum = prefix_sum + sz
            for part in parts:
                tot = 0
                for B in part:
                    tot += cur_sig[B] + cur_inter[B].bit_count()
                if tot - new_sum > (len(part) - depth - 1) * k:
                    ok = False
                    break
            if not ok:
                continue
            chosen.append(t)
            if r == 1:
                count += 1
                if budget is not None and count > budget:
                    raise TooLarge(f"enumeration exceeded budget {budget}")
                yield tuple(chosen)
            elif enter is None or enter(depth + 1, tuple(chosen)):
                yield from rec(depth + 1, t, remaining - sz, new_sum)
            chosen.pop()

    inter[0][0] = -1
    sigt[0][0] = 10**9
    yield from rec(0, 0, total, 0)


def iter_null_families(n: int, k: int, ell: int, lo: int = 0, hi: int | None = None, budget: int | None = None):
    """Multisets of ell subsets of range(n), sizes in [lo, hi], sum (ell-1)k, null intersection property."""
    hi = k if hi is None else hi
    slots = make_slots(n, k, 0, lo, hi)
    for idx in iter_bounded_tuples(slots, ell, k, (ell - 1) * k, budget=budget):
        yield tuple(from_mask(slots[t][1]) for t in idx)


def iter_maximal_configs(n: int, k: int, b: int, ell: int, lo: int = 0, hi: int | None = None, budget=None):
    hi = k if hi is None else hi
    slots = make_slots(n, k, b, lo, hi)
    for idx in iter_bounded_tuples(slots, ell, k, (ell - 1) * k, budget=budget):
        yield Config(k, b, tuple((slots[t][0], from_mask(slots[t][1])) for t in idx), n)


def iter_proper_configs(n: int, k: int, b: int, ell: int) -> Iterator[Config]:
    """All proper configurations up to reordering of the pairs."""
    slots = make_slots(n, k, b, 0, k)
    for idx in itertools.combinations_with_replacement(range(len(slots)), ell):
        yield Config(k, b, tuple((slots[t][0], from_mask(slots[t][1])) for t in idx), n)
