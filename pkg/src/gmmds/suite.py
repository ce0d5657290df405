"""Randomized harnesses: the four-way equivalence suite and the puncturing experiment."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

from .codes import CodeSpec, check_gzp_ell, check_mds_ell, generator, is_mds, puncture_indices, random_points
from .errors import PreconditionFailed, Refused
from .exactla import Mat, dual_matrix, rank
from .gf import GF, field_of_order
from .jsonio import mat_to_json
from .listdec import is_ld_mds_bruteforce
from .mdsb import check_ld_mds
from .tensor import check_mr_parity_tensor

CHECKERS = ("mds_ell", "gzp_ell", "mr_parity", "ld_mds_dual", "ld_mds_brute")
DEFAULT_FIELDS = (5, 7, 8, 2**31 - 1)
BRUTE_CODEBOOK_LIMIT = 400
BRUTE_LIST_BUDGET = 100_000


def trial_rng(seed: int, index: int) -> random.Random:
    return random.Random(f"{seed}:{index}")


@dataclass
class TrialReport:
    index: int
    q: int
    n: int
    k: int
    ell: int
    kind: str
    G: list
    verdicts: dict = field(default_factory=dict)
    witnesses: dict = field(default_factory=dict)
    skipped: dict = field(default_factory=dict)

    @property
    def agree(self) -> bool:
        vals = {v for v in self.verdicts.values() if v is not None}
        return len(vals) <= 1

    def to_json(self) -> dict:
        return {
            "index": self.index,
            "q": self.q,
            "n": self.n,
            "k": self.k,
            "ell": self.ell,
            "kind": self.kind,
            "G": self.G,
            "verdicts": self.verdicts,
            "witnesses": self.witnesses,
            "skipped": self.skipped,
            "agree": self.agree,
        }


def random_full_rank(F: GF, k: int, n: int, rng: random.Random) -> Mat:
    while True:
        G = Mat(F, [[rng.randrange(F.q) for _ in range(n)] for _ in range(k)], k, n)
        if rank(G) == k:
            return G


def sample_code(
    rng: random.Random,
    fields: Sequence[int] = DEFAULT_FIELDS,
    max_n: int = 8,
    max_k: int = 4,
    ells: Sequence[int] = (2, 3),
) -> tuple[Mat, int, str]:
    q = rng.choice(list(fields))
    F = field_of_order(q)
    k = rng.randint(1, max_k)
    n = rng.randint(k + 1, max(k + 1, max_n))
    ell = rng.choice(list(ells))
    kind = rng.choice(["uniform", "reed_solomon"]) if F.q >= n else "uniform"
    if kind == "reed_solomon":
        spec = CodeSpec.reed_solomon(F, k)
        G = generator(spec, random_points(spec, n, rng))
    else:
        G = random_full_rank(F, k, n, rng)
    return G, ell, kind


def run_equivalence_trial(
    seed: int,
    index: int,
    fields: Sequence[int] = DEFAULT_FIELDS,
    max_n: int = 8,
    max_k: int = 4,
    ells: Sequence[int] = (2, 3),
    inject_bug: str | None = None,
    budget: int | None = None,
) -> TrialReport:
    """One random code, all checkers.  The tensor and list-decoding checkers act on the dual H of G."""
    rng = trial_rng(seed, index)
    G, ell, kind = sample_code(rng, fields, max_n, max_k, ells)
    F = G.field
    rep = TrialReport(index, F.q, G.cols, G.rows, ell, kind, mat_to_json(G))
    H = dual_matrix(G)
    runs = {
        "mds_ell": lambda: check_mds_ell(G, ell, budget),
        "gzp_ell": lambda: check_gzp_ell(G, ell, budget),
        "mr_parity": lambda: check_mr_parity_tensor(H, ell, budget),
        "ld_mds_dual": lambda: check_ld_mds(H, ell - 1, budget),
    }
    for name, fn in runs.items():
        try:
            v = fn()
            rep.verdicts[name] = v.verdict
            if v.witness is not None:
                rep.witnesses[name] = v.witness
        except Refused as exc:
            rep.verdicts[name] = None
            rep.skipped[name] = str(exc)
    if F.q ** H.rows <= BRUTE_CODEBOOK_LIMIT:
        try:
            rep.verdicts["ld_mds_brute"] = is_ld_mds_bruteforce(H, ell - 1, budget=BRUTE_LIST_BUDGET)
        except Refused as exc:
            rep.verdicts["ld_mds_brute"] = None
            rep.skipped["ld_mds_brute"] = str(exc)
    else:
        rep.verdicts["ld_mds_brute"] = None
        rep.skipped["ld_mds_brute"] = f"codebook of size {F.q}^{H.rows} above {BRUTE_CODEBOOK_LIMIT}"
    if inject_bug and rep.verdicts.get(inject_bug) is not None:
        rep.verdicts[inject_bug] = not rep.verdicts[inject_bug]
    return rep


@dataclass
class ConjectureReport:
    mother_n: int
    n: int
    ell: int
    trials: int
    failures: list = field(default_factory=list)

    @property
    def failure_rate(self) -> float:
        return len(self.failures) / self.trials if self.trials else 0.0

    def to_json(self) -> dict:
        return {
            "mother_n": self.mother_n,
            "n": self.n,
            "ell": self.ell,
            "trials": self.trials,
            "failures": self.failures,
            "failure_rate": self.failure_rate,
        }


def run_conjecture(G: Mat, n: int, punctures: int, ell: int, seed: int, budget: int | None = None) -> ConjectureReport:
    """Puncture the mother code to n random columns and test MDS(ell) each time."""
    if not is_mds(G):
        raise PreconditionFailed("mother code is not MDS")
    trials = 1 if n == G.cols else punctures
    rep = ConjectureReport(G.cols, n, ell, trials)
    for t in range(trials):
        keep = puncture_indices(G.cols, n, trial_rng(seed, t))
        v = check_mds_ell(G.select_cols(keep), ell, budget)
        if not v.verdict:
            rep.failures.append({"trial": t, "columns": keep, "witness": v.witness})
    return rep
