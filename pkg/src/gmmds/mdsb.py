"""Higher order MDS with a basis, and the dual-direction checks."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .codes import DEFAULT_FAMILY_BUDGET, Verdict, check_mds_ell, scan_maximal
from .errors import MalformedInput, NotMdsb1, TooLarge
from .exactla import Mat, dual_matrix, intersection_dimension, rank, rank_of_rows
from .patterns import MAX_ELL, Config, from_mask, gid, iter_proper_configs, make_slots

MAX_MDSB1_COLS = 16
MODES = ("maximal_only", "all_proper")


@dataclass(frozen=True)
class BasisCode:
    """Pair (U, V): U is k x b (a flag of prefixes), V is k x n."""

    U: Mat
    V: Mat

    def __post_init__(self):
        if self.U.rows != self.V.rows:
            raise MalformedInput("U and V need the same number of rows")
        if self.U.field != self.V.field:
            raise MalformedInput("U and V live over different fields")
        if self.U.cols > self.U.rows:
            raise MalformedInput("U has more columns than rows")

    @property
    def k(self) -> int:
        return self.V.rows

    @property
    def b(self) -> int:
        return self.U.cols

    @property
    def n(self) -> int:
        return self.V.cols

    def slot_vectors(self, sigma: int, A) -> list:
        Uc, Vc = self.U.columns(), self.V.columns()
        return Uc[:sigma] + [Vc[j] for j in sorted(A)]


def check_mdsb_1(BC: BasisCode) -> Verdict:
    """dim(U_{<=sigma} + V_A) = min(sigma + |A|, k) for every sigma, A.

    Only sigma + |A| <= k is scanned: a larger pair contains a tight one of
    full rank, and rank is monotone.
    """
    F, k, b, n = BC.V.field, BC.k, BC.b, BC.n
    if n > MAX_MDSB1_COLS:
        raise TooLarge(f"MDSb(1) check limited to n <= {MAX_MDSB1_COLS}")
    Uc, Vc = BC.U.columns(), BC.V.columns()
    checked = 0
    for s in range(b + 1):
        for a in range(0, min(n, k - s) + 1):
            for A in itertools.combinations(range(n), a):
                checked += 1
                vecs = Uc[:s] + [Vc[j] for j in A]
                if vecs and rank_of_rows(F, vecs, k) < len(vecs):
                    return Verdict(False, {"reason": "rank_drop", "sigma": s, "A": list(A)}, checked=checked)
    return Verdict(True, checked=checked)


def is_mdsb_1(BC: BasisCode) -> bool:
    return check_mdsb_1(BC).verdict


def _config_json(C: Config) -> list:
    return [{"sigma": s, "A": sorted(A)} for s, A in C.pairs]


def _maximal_scan(BC: BasisCode, ell: int, budget: int | None, fast: bool) -> Verdict:
    """Zero intersection on maximal configurations of orders 3..ell with slot sizes in [1, k-1].

    Order 2 and slots of size 0 or k are settled by MDSb(1).
    """
    F, k, b, n = BC.V.field, BC.k, BC.b, BC.n
    if k <= 1:
        return Verdict(True)
    slots = make_slots(n, k, b, 1, k - 1)
    bases = [BC.slot_vectors(s, from_mask(m)) for s, m in slots]
    idx, checked = scan_maximal(F, k, slots, bases, ell, budget, fast)
    if idx is not None:
        C = Config(k, b, tuple((slots[t][0], from_mask(slots[t][1])) for t in idx), n)
        return Verdict(False, {"reason": "nonzero_intersection", "config": _config_json(C)}, checked=checked)
    return Verdict(True, checked=checked)


def _proper_scan(BC: BasisCode, ell: int, budget: int | None) -> Verdict:
    """intersection_dimension == gid on every proper configuration of order ell."""
    k, b, n = BC.k, BC.b, BC.n
    checked = 0
    for C in iter_proper_configs(n, k, b, ell):
        checked += 1
        if budget is not None and checked > budget:
            raise TooLarge(f"configuration enumeration exceeded budget {budget}")
        got = intersection_dimension(BC.V, C.sets, BC.U, C.sigma)
        want = gid(C)
        if got != want:
            w = {"reason": "dimension_mismatch", "config": _config_json(C), "dimension": got, "gid": want}
            return Verdict(False, w, checked=checked)
    return Verdict(True, checked=checked)


def check_mdsb_ell(
    BC: BasisCode,
    ell: int,
    mode: str = "maximal_only",
    budget: int | None = DEFAULT_FAMILY_BUDGET,
    fast: bool = True,
) -> Verdict:
    if mode not in MODES:
        raise MalformedInput(f"unknown mode {mode!r}")
    if ell < 1:
        raise MalformedInput("order must be at least 1")
    if ell > MAX_ELL:
        raise TooLarge(f"order {ell} exceeds the cap {MAX_ELL}")
    base = check_mdsb_1(BC)
    if not base.verdict:
        raise NotMdsb1(f"(U, V) is not MDSb(1): {base.witness}")
    if mode == "maximal_only":
        return _maximal_scan(BC, ell, budget, fast)
    return _proper_scan(BC, ell, budget)


def is_mdsb_ell(
    BC: BasisCode, ell: int, mode: str = "maximal_only", budget: int | None = DEFAULT_FAMILY_BUDGET, fast: bool = True
) -> bool:
    return check_mdsb_ell(BC, ell, mode, budget, fast).verdict


def transpose_basis_code(V: Mat) -> BasisCode:
    """(V^T, I_n) for a k x n matrix V."""
    return BasisCode(V.T, Mat.identity(V.field, V.cols))


@dataclass(frozen=True)
class PipelineResult:
    mdsb_transpose: bool
    dual_mds_ell: bool
    mdsb_witness: object = None
    dual_witness: object = None

    def as_tuple(self) -> tuple[bool, bool]:
        return self.mdsb_transpose, self.dual_mds_ell


def check_dual_pipeline(V: Mat, ell: int, budget: int | None = DEFAULT_FAMILY_BUDGET) -> PipelineResult:
    """Both sides of: (V^T, I_n) MDSb(ell) implies every dual of V is MDS(ell)."""
    if rank(V) != V.rows:
        raise MalformedInput("V must have full row rank")
    BC = transpose_basis_code(V)
    try:
        left = check_mdsb_ell(BC, ell, "maximal_only", budget)
    except NotMdsb1 as exc:
        left = Verdict(False, {"reason": "not_mdsb1", "detail": str(exc)})
    right = check_mds_ell(dual_matrix(V), ell, budget)
    return PipelineResult(left.verdict, right.verdict, left.witness, right.witness)


def check_ld_mds(G: Mat, L: int, budget: int | None = DEFAULT_FAMILY_BUDGET) -> Verdict:
    """LD-MDS(<= L) through duality: the dual is MDS(L + 1)."""
    if L < 1:
        raise MalformedInput("list size must be at least 1")
    if rank(G) != G.rows:
        raise MalformedInput("G must have full row rank")
    if G.rows == G.cols:
        return Verdict(True)
    return check_mds_ell(dual_matrix(G), L + 1, budget)


def is_ld_mds(G: Mat, L: int, budget: int | None = DEFAULT_FAMILY_BUDGET) -> bool:
    return check_ld_mds(G, L, budget).verdict
