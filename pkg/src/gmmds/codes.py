"""Code families, generic-point evaluation and the MDS / MDS(ell) / zero-pattern checks."""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from typing import Any, Iterator, Sequence

from . import _fastscan
from .errors import (
    BudgetExhausted,
    DimensionMismatch,
    DuplicatePoints,
    LinearlyDependentFamily,
    MalformedInput,
    NotGeneric,
    RankDeficient,
    TooFewColumns,
    TooLarge,
    ZeroAlphaInLinearizedRS,
)
from .exactla import Mat, det_rows, kernel_rows, rank, rank_of_rows, span_intersection
from .gf import GF
from .patterns import (
    MAX_ELL,
    ZeroPattern,
    from_mask,
    is_generic_zero_pattern,
    iter_bounded_tuples,
    make_slots,
    to_mask,
)
from .polys import PolyTuple

FAMILIES = ("reed_solomon", "monomial", "polynomial", "gabidulin", "linearized_rs", "explicit")
MAX_MDS_COLS = 20
DEFAULT_FAMILY_BUDGET = 2_000_000
DEFAULT_SOLVER_BUDGET = 100_000


@dataclass(frozen=True)
class Verdict:
    """Outcome of a checker: the boolean plus a witness when it is false."""

    verdict: bool
    witness: Any = None
    trials: int = 1
    seed: int | None = None
    checked: int = 0

    def __bool__(self) -> bool:
        return self.verdict

    def to_json(self) -> dict:
        return {"verdict": self.verdict, "witness": self.witness, "trials": self.trials, "seed": self.seed}


@dataclass(frozen=True)
class CodeSpec:
    family: str
    field: GF
    k: int
    exponents: tuple[int, ...] | None = None
    q0: int | None = None
    polys: PolyTuple | None = None
    matrix: Mat | None = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise MalformedInput(f"unknown family {self.family!r}")
        if self.k < 0:
            raise MalformedInput("k must be nonnegative")
        if self.family == "monomial":
            e = self.exponents
            if e is None or len(e) != self.k:
                raise MalformedInput("monomial family needs k exponents")
            if any(x < 0 for x in e) or any(a >= b for a, b in zip(e, e[1:])):
                raise MalformedInput(f"exponents {list(e)} are not strictly increasing and nonnegative")
        elif self.family in ("gabidulin", "linearized_rs"):
            _check_subfield(self.field, self.q0)
        elif self.family == "polynomial":
            P = self.polys
            if P is None or P.k != self.k:
                raise MalformedInput("polynomial family needs k polynomials")
            if P.field != self.field:
                raise MalformedInput("polynomials live over a different field")
            monos = P.monomials()
            if self.k and rank_of_rows(self.field, P.coefficient_rows(monos), len(monos)) < self.k:
                raise LinearlyDependentFamily("polynomials are linearly dependent")
        elif self.family == "explicit":
            if self.matrix is None or self.matrix.rows != self.k:
                raise MalformedInput("explicit family needs a k-row matrix")

    @classmethod
    def reed_solomon(cls, F: GF, k: int) -> "CodeSpec":
        return cls("reed_solomon", F, k)

    @classmethod
    def monomial(cls, F: GF, exponents: Sequence[int]) -> "CodeSpec":
        return cls("monomial", F, len(exponents), exponents=tuple(int(e) for e in exponents))

    @classmethod
    def gabidulin(cls, F: GF, k: int, q0: int) -> "CodeSpec":
        return cls("gabidulin", F, k, q0=q0)

    @classmethod
    def linearized_rs(cls, F: GF, k: int, q0: int) -> "CodeSpec":
        return cls("linearized_rs", F, k, q0=q0)

    @classmethod
    def polynomial(cls, P: PolyTuple) -> "CodeSpec":
        return cls("polynomial", P.field, P.k, polys=P)

    @classmethod
    def explicit(cls, G: Mat) -> "CodeSpec":
        return cls("explicit", G.field, G.rows, matrix=G)

    @property
    def r(self) -> int:
        """Number of coordinates of an evaluation point."""
        if self.family == "polynomial":
            return self.polys.r
        if self.family == "linearized_rs":
            return 2
        return 1

    @property
    def exps(self) -> tuple[int, ...]:
        """Univariate exponents for the one-variable families."""
        if self.family == "reed_solomon":
            return tuple(range(self.k))
        if self.family == "monomial":
            return self.exponents
        if self.family == "gabidulin":
            return tuple(self.q0**i for i in range(self.k))
        raise MalformedInput(f"{self.family} is not a univariate monomial family")


def _check_subfield(F: GF, q0: int | None) -> None:
    if q0 is None or q0 < 2:
        raise MalformedInput("a subfield size q0 >= 2 is required")
    d = 0
    x = q0
    while x % F.p == 0:
        x //= F.p
        d += 1
    if x != 1 or d == 0 or F.m % d:
        raise MalformedInput(f"GF({q0}) is not a subfield of GF({F.q})")


def _point_tuple(pt, r: int) -> tuple[int, ...]:
    if isinstance(pt, (tuple, list)) and r > 1:
        if len(pt) != r:
            raise DimensionMismatch(f"point {pt} has {len(pt)} coordinates, expected {r}")
        return tuple(pt)
    if isinstance(pt, (tuple, list)) and r == 1 and len(pt) == 1:
        return tuple(pt)
    if r != 1:
        raise DimensionMismatch(f"point {pt} is not an {r}-tuple")
    return (pt,)


def normalize_points(spec: CodeSpec, pts) -> list[tuple[int, ...]]:
    F, r = spec.field, spec.r
    out = []
    for pt in pts:
        out.append(tuple(F.element(x) for x in _point_tuple(pt, r)))
    if len(set(out)) != len(out):
        raise DuplicatePoints("evaluation points are not pairwise distinct")
    return out


def linearized_gamma(F: GF, q0: int, alpha: int, beta: int) -> int:
    """gamma = beta * alpha^(q0-1), so that column(alpha, beta) = alpha * (1, gamma, gamma^(1+q0), ...)."""
    return F.mul(beta, F.pow(alpha, q0 - 1))


def linearized_curve_column(F: GF, q0: int, k: int, gamma: int) -> list[int]:
    """(1, gamma, gamma^(1+q0), ..., gamma^((q0^(k-1)-1)/(q0-1)))."""
    return [F.pow(gamma, (q0**i - 1) // (q0 - 1)) for i in range(k)]


def generator(spec: CodeSpec, pts=None) -> Mat:
    """k x n matrix with entry (i, j) = f_i(point_j)."""
    F, k = spec.field, spec.k
    if spec.family == "explicit":
        if pts is not None:
            raise MalformedInput("explicit codes take no evaluation points")
        return spec.matrix
    P = normalize_points(spec, pts)
    n = len(P)
    if spec.family == "polynomial":
        cols = [spec.polys.evaluate(p) for p in P]
    elif spec.family == "linearized_rs":
        q0 = spec.q0
        gammas = set()
        cols = []
        for a, b in P:
            if a == 0:
                raise ZeroAlphaInLinearizedRS("alpha = 0 in a linearized-RS point")
            g = linearized_gamma(F, q0, a, b)
            if g in gammas:
                raise DuplicatePoints("linearized-RS points must have distinct gamma values")
            gammas.add(g)
            cols.append([F.mul(F.pow(a, q0**i), F.pow(b, (q0**i - 1) // (q0 - 1))) for i in range(k)])
    else:
        exps = spec.exps
        cols = [[F.pow(a, e) for e in exps] for (a,) in P]
    data = [[cols[j][i] for j in range(n)] for i in range(k)]
    return Mat(F, data, k, n)


# ---------------------------------------------------------------------------
# generic points


def random_points(spec: CodeSpec, n: int, rng: random.Random) -> list:
    """n distinct uniform points suitable for the family (scalars when r == 1)."""
    F, r = spec.field, spec.r
    if spec.family == "explicit":
        raise MalformedInput("explicit codes have no evaluation points")
    if spec.family == "linearized_rs":
        seen_g, out = set(), []
        if n > (F.q - 1) * F.q:
            raise MalformedInput("field too small for n distinct points")
        tries = 0
        while len(out) < n:
            tries += 1
            if tries > 1000 * (n + 1):
                raise BudgetExhausted("could not draw distinct gamma values")
            a = rng.randrange(1, F.q)
            b = rng.randrange(F.q)
            g = linearized_gamma(F, spec.q0, a, b)
            if g not in seen_g:
                seen_g.add(g)
                out.append((a, b))
        return out
    if F.q**r < n:
        raise MalformedInput(f"GF({F.q})^{r} has fewer than {n} points")
    if r == 1:
        return rng.sample(range(F.q), n)
    seen, out = set(), []
    while len(out) < n:
        pt = tuple(rng.randrange(F.q) for _ in range(r))
        if pt not in seen:
            seen.add(pt)
            out.append(pt)
    return out


def random_generator(spec: CodeSpec, n: int, rng: random.Random) -> tuple[Mat, list]:
    pts = random_points(spec, n, rng)
    return generator(spec, pts), pts


def puncture_random(G: Mat, n: int, rng: random.Random) -> Mat:
    """Uniform n-subset of the columns, original order kept."""
    return G.select_cols(puncture_indices(G.cols, n, rng))


def puncture_indices(total: int, n: int, rng: random.Random) -> list[int]:
    if n < 0 or n > total:
        raise TooFewColumns(f"cannot keep {n} of {total} columns")
    return sorted(rng.sample(range(total), n))


# ---------------------------------------------------------------------------
# MDS


def iter_dependent_sets(G: Mat) -> Iterator[tuple[int, ...]]:
    """k-subsets of columns whose minor vanishes, in lexicographic order."""
    k, n = G.rows, G.cols
    if n > MAX_MDS_COLS:
        raise TooLarge(f"MDS check limited to n <= {MAX_MDS_COLS}")
    if k > n:
        yield tuple(range(n))
        return
    F = G.field
    cols = G.columns()
    for S in itertools.combinations(range(n), k):
        if det_rows(F, [cols[j] for j in S]) == 0:
            yield S


def is_mds(G: Mat) -> bool:
    """Every k x k minor is nonzero."""
    if G.rows == 0:
        return True
    return next(iter_dependent_sets(G), None) is None


def check_mds(G: Mat) -> Verdict:
    if G.rows == 0:
        return Verdict(True)
    bad = next(iter_dependent_sets(G), None)
    return Verdict(True) if bad is None else Verdict(False, {"reason": "singular_minor", "columns": list(bad)})


def check_mds_ell(G: Mat, ell: int, budget: int | None = DEFAULT_FAMILY_BUDGET, fast: bool = True) -> Verdict:
    """MDS(ell) by scanning null-intersection families.

    Families of order 2, or containing an empty or full set, reduce to plain
    MDS or to lower order, so after the MDS check only orders 3..ell with set
    sizes in [1, k-1] are scanned.
    """
    if ell < 1:
        raise MalformedInput("order must be at least 1")
    if ell > MAX_ELL:
        raise TooLarge(f"order {ell} exceeds the cap {MAX_ELL}")
    base = check_mds(G)
    if not base.verdict:
        return base
    F, k, n = G.field, G.rows, G.cols
    if k <= 1 or ell <= 2:
        return base
    cols = G.columns()
    slots = make_slots(n, k, 0, 1, k - 1)
    bases = [[cols[j] for j in from_mask(m)] for _, m in slots]
    idx, checked = scan_maximal(F, k, slots, bases, ell, budget, fast)
    if idx is not None:
        fam = [sorted(from_mask(slots[t][1])) for t in idx]
        return Verdict(False, {"reason": "nonzero_intersection", "family": fam}, checked=checked)
    return Verdict(True, checked=checked)


def scan_maximal(
    F: GF,
    K: int,
    slots: Sequence[tuple[int, int]],
    bases: Sequence[list],
    ell: int,
    budget: int | None,
    fast: bool = True,
) -> tuple[tuple[int, ...] | None, int]:
    """First slot tuple (orders 3..ell) whose subspaces meet nontrivially, and the count checked.

    bases[t] spans slot t's subspace of F^K.  Each prefix carries its running
    intersection and the subtree is skipped once that is zero.
    """
    checked = 0
    for e in range(3, ell + 1):
        left = None if budget is None else budget - checked
        if e == 3 and fast and _fastscan.available(F):
            idx, c = _fastscan.scan_order3(F, K, slots, lambda t: bases[t], left)
            checked += c
            if idx is not None:
                return idx, checked
            continue
        stack: list[list] = [[]] * (e + 1)

        def enter(depth: int, prefix: tuple[int, ...]) -> bool:
            B = bases[prefix[-1]]
            stack[depth] = list(B) if depth == 1 else span_intersection(F, stack[depth - 1], B, K)
            return bool(stack[depth])

        for idx in iter_bounded_tuples(slots, e, K, (e - 1) * K, enter=enter, budget=left):
            checked += 1
            Y = stack[e - 1]
            B = bases[idx[-1]]
            if rank_of_rows(F, Y + B, K) < len(Y) + len(B):
                return idx, checked
    return None, checked


def is_mds_ell(G: Mat, ell: int, budget: int | None = DEFAULT_FAMILY_BUDGET, fast: bool = True) -> bool:
    return check_mds_ell(G, ell, budget, fast).verdict


# ---------------------------------------------------------------------------
# zero patterns


def _zero_space(F: GF, cols: Sequence[Sequence[int]], S: int, k: int) -> list[list[int]]:
    """Basis of {c in F^k : (cG)_j = 0 for j in S}."""
    if not S:
        return [[1 if i == j else 0 for j in range(k)] for i in range(k)]
    return kernel_rows(F, [cols[j] for j in from_mask(S)], k)


def _rado_holds(F: GF, spaces: Sequence[list[list[int]]], mult: Sequence[int], k: int, base: Sequence[Sequence[int]] = ()) -> bool:
    """dim(span(base) + sum_{j in J} W_j) - dim(base) >= sum_{j in J} mult_j for all J."""
    g = len(spaces)
    b0 = len(base)
    for J in range(1, 1 << g):
        need = sum(mult[j] for j in range(g) if J >> j & 1)
        if need == 0:
            continue
        vecs = list(base)
        for j in range(g):
            if J >> j & 1:
                vecs.extend(spaces[j])
        if rank_of_rows(F, vecs, k) - b0 < need:
            return False
    return True


def _group_rows(masks: Sequence[int]) -> tuple[list[int], list[int], list[list[int]]]:
    keys: list[int] = []
    rows_of: dict[int, list[int]] = {}
    for i, m in enumerate(masks):
        if m not in rows_of:
            rows_of[m] = []
            keys.append(m)
        rows_of[m].append(i)
    return keys, [len(rows_of[m]) for m in keys], [rows_of[m] for m in keys]


def pattern_attainable(G: Mat, P: ZeroPattern) -> bool:
    """Existence of an invertible M with (MG)_{i,j} = 0 for j in S_i (independent-transversal test)."""
    F, k = G.field, G.rows
    if P.k != k or P.n != G.cols:
        raise MalformedInput("pattern shape does not match the matrix")
    cols = G.columns()
    keys, mult, _ = _group_rows(P.masks())
    spaces = [_zero_space(F, cols, m, k) for m in keys]
    return _rado_holds(F, spaces, mult, k)


def _span_all(F: GF, W: list[list[int]], limit: int, rng: random.Random) -> Iterator[list[int]]:
    """Candidate vectors of span(W): basis vectors, then exhaustive or random combinations."""
    yield from W
    d = len(W)
    k = len(W[0]) if W else 0
    if d <= 1:
        return
    if F.q**d <= limit:
        for coeffs in itertools.product(range(F.q), repeat=d):
            if sum(1 for c in coeffs if c) >= 2:
                yield _combine(F, W, coeffs, k)
    else:
        for _ in range(limit):
            yield _combine(F, W, [rng.randrange(F.q) for _ in range(d)], k)


def _combine(F: GF, W, coeffs, k: int) -> list[int]:
    v = [0] * k
    for c, w in zip(coeffs, W):
        if c:
            v = F.axpy_row(v, F.neg(c), w)
    return v


def attains_zero_pattern(G: Mat, P: ZeroPattern, rng: random.Random | None = None) -> Mat | None:
    """Transformed generator MG realising the zero pattern P, or None."""
    F, k = G.field, G.rows
    if rank(G) != k:
        raise RankDeficient("generator is not of full row rank")
    if P.k != k or P.n != G.cols:
        raise MalformedInput("pattern shape does not match the matrix")
    rng = rng or random.Random(0)
    cols = G.columns()
    masks = P.masks()
    keys, mult, rows_of = _group_rows(masks)
    spaces = [_zero_space(F, cols, m, k) for m in keys]
    if not _rado_holds(F, spaces, mult, k):
        return None
    chosen: list[list[int]] = []
    coeff_rows: list[list[int] | None] = [None] * k
    left = list(mult)
    for g in range(len(keys)):
        for i in rows_of[g]:
            placed = False
            for v in _span_all(F, spaces[g], 4096, rng):
                if rank_of_rows(F, chosen + [v], k) <= len(chosen):
                    continue
                left[g] -= 1
                if _rado_holds(F, spaces, left, k, chosen + [v]):
                    chosen.append(v)
                    coeff_rows[i] = v
                    placed = True
                    break
                left[g] += 1
            if not placed:
                # the residual test is exact, so this only happens if sampling missed
                return None
    M = Mat(F, coeff_rows, k, k)
    return M @ G


# ---------------------------------------------------------------------------
# GZP(ell)


def iter_tight_groups(n: int, k: int, ell: int) -> Iterator[tuple[tuple[int, int], ...]]:
    """Generic patterns in group form ((mask, multiplicity), ...) with |T_j| = k - m_j,
    at most ell distinct nonempty sets and sum m_j <= k.  Remaining rows are empty."""
    cands = []
    for size in range(1, k):
        for comb in itertools.combinations(range(n), size):
            cands.append((to_mask(comb), k - size))
    chosen: list[tuple[int, int]] = []
    # inter[J], msum[J] over subsets of chosen groups
    inter = [-1]
    msum = [0]

    def rec(start: int, used: int):
        if chosen:
            yield tuple(chosen)
        if len(chosen) == ell:
            return
        for t in range(start, len(cands)):
            mask, m = cands[t]
            if used + m > k:
                continue
            base = len(inter)
            ok = True
            new_inter, new_msum = [], []
            for J in range(base):
                x = inter[J] & mask
                s = msum[J] + m
                if x.bit_count() > k - s:
                    ok = False
                    break
                new_inter.append(x)
                new_msum.append(s)
            if not ok:
                continue
            inter.extend(new_inter)
            msum.extend(new_msum)
            chosen.append((mask, m))
            yield from rec(t + 1, used + m)
            chosen.pop()
            del inter[base:]
            del msum[base:]

    yield from rec(0, 0)


def groups_to_pattern(n: int, k: int, groups: Sequence[tuple[int, int]]) -> ZeroPattern:
    S = []
    for mask, m in groups:
        S.extend([from_mask(mask)] * m)
    S.extend([frozenset()] * (k - len(S)))
    return ZeroPattern(n, k, tuple(S))


def check_gzp_ell(G: Mat, ell: int, budget: int | None = DEFAULT_FAMILY_BUDGET) -> Verdict:
    """GZP(ell): every generic zero pattern with at most ell distinct rows is attainable.

    Patterns are scanned in a tight group form; a generic pattern is attainable
    whenever a pattern containing it is, and every generic pattern of order at
    most ell sits inside a tight one of order at most ell.
    """
    if ell < 1:
        raise MalformedInput("order must be at least 1")
    if ell > MAX_ELL:
        raise TooLarge(f"order {ell} exceeds the cap {MAX_ELL}")
    base = check_mds(G)
    if not base.verdict:
        return base
    F, k, n = G.field, G.rows, G.cols
    cols = G.columns()
    cache: dict[int, list[list[int]]] = {}
    checked = 0
    for groups in iter_tight_groups(n, k, ell):
        checked += 1
        if budget is not None and checked > budget:
            raise TooLarge(f"pattern enumeration exceeded budget {budget}")
        if len(groups) == 1:
            continue  # dim W_T = k - |T| = m by MDS
        spaces = []
        for mask, _ in groups:
            W = cache.get(mask)
            if W is None:
                W = cache[mask] = _zero_space(F, cols, mask, k)
            spaces.append(W)
        if not _rado_holds(F, spaces, [m for _, m in groups], k):
            P = groups_to_pattern(n, k, groups)
            return Verdict(False, {"reason": "unattainable_pattern", "pattern": [sorted(s) for s in P.S]}, checked=checked)
    return Verdict(True, checked=checked)


def is_gzp_ell(G: Mat, ell: int, budget: int | None = DEFAULT_FAMILY_BUDGET) -> bool:
    return check_gzp_ell(G, ell, budget).verdict


# ---------------------------------------------------------------------------
# solver


@dataclass(frozen=True)
class SolveResult:
    points: list
    generator: Mat
    transformed: Mat
    trials: int
    method: str

    def to_json(self) -> dict:
        from .jsonio import mat_to_json, points_to_json

        F = self.generator.field
        return {
            "points": points_to_json(F, self.points),
            "generator": mat_to_json(self.generator),
            "transformed": mat_to_json(self.transformed),
            "trials": self.trials,
            "method": self.method,
            "field": F.to_json(),
        }


def _exhaustive_count(spec: CodeSpec, n: int) -> int:
    N = spec.field.q**spec.r
    return math.perm(N, n) if N >= n else 0


def _iter_all_points(spec: CodeSpec, n: int) -> Iterator[list]:
    F, r = spec.field, spec.r
    if r == 1:
        for pts in itertools.permutations(range(F.q), n):
            yield list(pts)
    else:
        for pts in itertools.permutations(itertools.product(range(F.q), repeat=r), n):
            yield list(pts)


def gm_mds_solve(
    P: ZeroPattern,
    spec: CodeSpec,
    budget: int = DEFAULT_SOLVER_BUDGET,
    rng: random.Random | None = None,
) -> SolveResult:
    """Distinct points making the code MDS and attaining P, found by sampling then exhaustion."""
    if not is_generic_zero_pattern(P):
        raise NotGeneric("pattern violates the Hall condition")
    if P.k != spec.k:
        raise MalformedInput("pattern has the wrong number of rows")
    rng = rng or random.Random(0)
    n = P.n
    if _exhaustive_count(spec, n) == 0:
        raise BudgetExhausted(f"GF({spec.field.q}) has too few points for n={n}")

    def attempt(pts):
        try:
            G = generator(spec, pts)
        except (DuplicatePoints, ZeroAlphaInLinearizedRS):
            return None
        if not is_mds(G):
            return None
        M = attains_zero_pattern(G, P, rng)
        if M is None:
            return None
        return G, M

    trials = 0
    exhaustive = _exhaustive_count(spec, n)
    sample_budget = budget if exhaustive > budget else min(budget, 64)
    for _ in range(sample_budget):
        trials += 1
        pts = random_points(spec, n, rng)
        res = attempt(pts)
        if res:
            return SolveResult(pts, res[0], res[1], trials, "random")
    if exhaustive <= budget:
        for pts in _iter_all_points(spec, n):
            trials += 1
            res = attempt(pts)
            if res:
                return SolveResult(pts, res[0], res[1], trials, "exhaustive")
        raise BudgetExhausted(f"no points over GF({spec.field.q}) after exhaustive search ({trials} trials)")
    raise BudgetExhausted(f"no points found within {budget} samples")


def verify_solution(P: ZeroPattern, res: SolveResult) -> bool:
    """Independent check of a solver result: MDS generator, same row space, zeros in place."""
    G, T = res.generator, res.transformed
    if not is_mds(G) or rank(T) != G.rows:
        return False
    if rank(G.vstack(T)) != G.rows:
        return False
    return all(T.data[i][j] == 0 for i, S in enumerate(P.S) for j in S)
