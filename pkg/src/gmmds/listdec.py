"""List-decoding Singleton bound and an exhaustive average-radius oracle."""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import comb

from .errors import BadParams, TooLarge
from .exactla import Mat

DEFAULT_BUDGET = 2_000_000


def singleton_list_bound(n: int, k: int, L: int) -> Fraction:
    """L(n-k) / ((L+1)n)."""
    if not (1 <= k <= n) or L < 1:
        raise BadParams(f"need 1 <= k <= n and L >= 1, got n={n}, k={k}, L={L}")
    return Fraction(L * (n - k), (L + 1) * n)


def parse_radius(text: str) -> Fraction:
    r = Fraction(text)
    if not 0 <= r <= 1:
        raise BadParams(f"radius {text} outside [0, 1]")
    return r


def format_radius(r: Fraction) -> str:
    return f"{r.numerator}/{r.denominator}"


def codewords(G: Mat) -> list[tuple[int, ...]]:
    """All q^k codewords mG, message order lexicographic."""
    F = G.field
    rows = G.data
    out = []
    for msg in itertools.product(range(F.q), repeat=G.rows):
        w = [0] * G.cols
        for c, row in zip(msg, rows):
            if c:
                w = F.axpy_row(w, F.neg(c), row)
        out.append(tuple(w))
    return out


def _min_list_cost(words: list[tuple[int, ...]], L: int, budget: int | None) -> tuple[int, tuple | None]:
    """min over lists of L+1 distinct messages and centres y of sum_i wt(c_i - y).

    Lists are translated so that they contain the zero message; for a fixed
    list the best centre is chosen coordinatewise by majority, costing (L+1)
    minus the top multiplicity.  Returns (-1, None) when there are too few
    messages.
    """
    others = words[1:]
    if len(others) < L:
        return -1, None
    total = comb(len(others), L)
    if budget is not None and total > budget:
        raise TooLarge(f"{total} lists exceed budget {budget}")
    zero = words[0]
    n = len(zero)
    best, arg = None, None
    for rest in itertools.combinations(others, L):
        lst = (zero,) + rest
        cost = 0
        for j in range(n):
            counts: dict[int, int] = {}
            for w in lst:
                counts[w[j]] = counts.get(w[j], 0) + 1
            cost += L + 1 - max(counts.values())
        if best is None or cost < best:
            best, arg = cost, lst
    return best, arg


def _check_tiny(G: Mat) -> None:
    if G.field.q**G.rows > 10**5:
        raise TooLarge("codebook too large for exhaustive search")


def _decodable(cost: int, rho: Fraction, n: int, L: int, strict: bool) -> bool:
    if cost < 0:
        return True
    limit = rho * n * (L + 1)
    return not (cost < limit if strict else cost <= limit)


def brute_force_avg_radius(G: Mat, rho: Fraction, L: int, strict: bool = False, budget: int | None = DEFAULT_BUDGET) -> bool:
    """True iff no L+1 distinct messages and centre y have average distance <= rho*n (< if strict)."""
    if L < 1:
        raise BadParams("L must be at least 1")
    _check_tiny(G)
    cost, _ = _min_list_cost(codewords(G), L, budget)
    return _decodable(cost, Fraction(rho), G.cols, L, strict)


def is_ld_mds_bruteforce(G: Mat, L: int, strict: bool = False, budget: int | None = DEFAULT_BUDGET) -> bool:
    """Average-radius decodability at every grid radius w / (n(L'+1)) up to the
    list Singleton bound, for each L' <= L."""
    if L < 1:
        raise BadParams("L must be at least 1")
    _check_tiny(G)
    n, k = G.cols, G.rows
    words = codewords(G)
    for Lp in range(1, L + 1):
        bound = singleton_list_bound(n, k, Lp)
        cost, _ = _min_list_cost(words, Lp, budget)
        den = n * (Lp + 1)
        for w in range(0, bound.numerator * den // bound.denominator + 1):
            if not _decodable(cost, Fraction(w, den), n, Lp, strict):
                return False
    return True
