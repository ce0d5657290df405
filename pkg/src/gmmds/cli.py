"""Command-line front end.

Exit codes: 0 property holds, 1 property fails (witness attached),
2 refused by a budget or cap, 3 malformed input.  A RunRecord JSON object
goes to stdout, human-readable logs to stderr.
"""

from __future__ import annotations

import argparse
import json
import logging
import random
import secrets
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from functools import partial
from typing import Any

from . import __version__
from .codes import (
    DEFAULT_FAMILY_BUDGET,
    DEFAULT_SOLVER_BUDGET,
    Verdict,
    check_gzp_ell,
    check_mds,
    check_mds_ell,
    generator,
    gm_mds_solve,
    iter_dependent_sets,
    random_points,
    verify_solution,
)
from .errors import (
    BudgetExhausted,
    DependentInput,
    GmmdsError,
    MalformedInput,
    NotGeneric,
    NotMdsb1,
    NTooSmall,
    PreconditionFailed,
    Refused,
)
from .exactla import Mat, dual_matrix, rank
from .jsonio import (
    codespec_from_json,
    codespec_to_json,
    digest,
    field_from_json,
    mat_from_json,
    pattern_from_json,
    points_from_json,
    points_to_json,
)
from .listdec import is_ld_mds_bruteforce
from .mdsb import BasisCode, check_ld_mds, check_mdsb_1, check_mdsb_ell, transpose_basis_code
from .suite import CHECKERS, DEFAULT_FIELDS, run_conjecture, run_equivalence_trial
from .tensor import check_mr_parity_tensor

log = logging.getLogger("gmmds")

EXIT_HOLDS, EXIT_FAILS, EXIT_REFUSED, EXIT_MALFORMED = 0, 1, 2, 3
PROPERTIES = ("mds", "mds_ell", "gzp_ell", "ld_mds", "ld_mds_brute", "mdsb_1", "mdsb_ell", "mr_parity")


class _Exit(Exception):
    def __init__(self, code: int, record: dict):
        super().__init__(code)
        self.code = code
        self.record = record


def _load_json(path: str) -> Any:
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise MalformedInput(f"cannot read {path}: {exc}") from exc


def _seed(args) -> int:
    return args.seed if args.seed is not None else secrets.randbits(32)


def _base_record(command: str, args, seed: int, inputs: Any) -> dict:
    return {
        "command": command,
        "version": __version__,
        "input_digest": digest(inputs),
        "seed": seed,
        "budgets": {"family": args.budget},
    }


# ---------------------------------------------------------------------------
# check


def _matrices_from_input(obj: dict, args, seed: int, trials: int) -> tuple[list[Mat], dict]:
    """Generator matrices to test: explicit, from given points, or one per random trial."""
    F = field_from_json(args.field) if args.field else None
    if "V" in obj and obj.get("family") is None:
        F = F or field_from_json(obj["field"])
        return [mat_from_json(F, obj["V"])], {"source": "matrix"}
    if "matrix" in obj and obj.get("family") in (None, "explicit"):
        F = F or field_from_json(obj["field"])
        return [mat_from_json(F, obj["matrix"])], {"source": "matrix"}
    spec = codespec_from_json(obj, F)
    if "points" in obj:
        pts = points_from_json(spec, obj["points"])
        return [generator(spec, pts)], {"source": "points"}
    if "n" not in obj:
        raise MalformedInput("code needs points, a matrix, or n for random points")
    n = int(obj["n"])
    rng = random.Random(seed)
    mats, pts_log = [], []
    for _ in range(trials):
        pts = random_points(spec, n, rng)
        mats.append(generator(spec, pts))
        pts_log.append(points_to_json(spec.field, pts))
    return mats, {"source": "random_points", "points": pts_log}


def _run_property(prop: str, G: Mat, obj: dict, args):
    budget = args.budget
    ell = args.ell
    if prop == "mds":
        v = check_mds(G)
        if not v.verdict:
            sets = []
            for S in iter_dependent_sets(G):
                sets.append(list(S))
                if len(sets) >= 64:
                    break
            v.witness["dependent_sets"] = sets
        return v
    if prop == "mds_ell":
        return check_mds_ell(G, ell, budget)
    if prop == "gzp_ell":
        return check_gzp_ell(G, ell, budget)
    if prop == "ld_mds":
        return check_ld_mds(G, args.list_size, budget)
    if prop == "ld_mds_brute":
        return Verdict(is_ld_mds_bruteforce(G, args.list_size, strict=args.strict))
    if prop == "mr_parity":
        return check_mr_parity_tensor(dual_matrix(G), ell, budget)
    if prop in ("mdsb_1", "mdsb_ell"):
        if "U" in obj:
            BC = BasisCode(mat_from_json(G.field, obj["U"]), G)
        else:
            BC = transpose_basis_code(G)
        if prop == "mdsb_1":
            return check_mdsb_1(BC)
        try:
            return check_mdsb_ell(BC, ell, args.mode, budget)
        except NotMdsb1 as exc:
            return Verdict(False, {"reason": "not_mdsb1", "detail": str(exc)})
    raise MalformedInput(f"unknown property {prop!r}")


def cmd_check(args) -> dict:
    seed = _seed(args)
    obj = _load_json(args.code)
    if not isinstance(obj, dict):
        raise MalformedInput("code file must hold a JSON object")
    rec = _base_record("check", args, seed, {"code": obj, "property": args.property, "ell": args.ell})
    rec["property"] = args.property
    rec["params"] = {"ell": args.ell, "list_size": args.list_size, "mode": args.mode, "strict": args.strict}
    mats, src = _matrices_from_input(obj, args, seed, args.trials)
    rec["input"] = src
    verdicts, witnesses = [], []
    for G in mats:
        v = _run_property(args.property, G, obj, args)
        verdicts.append(v.verdict)
        witnesses.append(v.witness)
        if v.verdict:
            break
    holds = any(verdicts)
    rec["trials"] = len(verdicts)
    rec["verdicts"] = {args.property: holds}
    rec["witnesses"] = {args.property: None if holds else witnesses[0]}
    rec["verdict"] = holds
    return rec


# ---------------------------------------------------------------------------
# solve


def cmd_solve(args) -> dict:
    seed = _seed(args)
    pobj = _load_json(args.pattern)
    P = pattern_from_json(pobj)
    if args.code:
        cobj = _load_json(args.code)
        F = field_from_json(args.field) if args.field else None
        spec = codespec_from_json(cobj, F)
    else:
        fam = pobj.get("family", args.family)
        if not args.field and "field" not in pobj:
            raise MalformedInput("no field given")
        F = field_from_json(args.field or pobj["field"])
        cobj = {"family": fam, "k": P.k}
        if args.exponents:
            cobj["exponents"] = [int(x) for x in args.exponents.split(",")]
        if args.q0:
            cobj["q"] = args.q0
        spec = codespec_from_json(cobj, F)
    rec = _base_record("solve", args, seed, {"pattern": pobj, "code": codespec_to_json(spec)})
    rec["budgets"]["solver"] = args.budget
    try:
        res = gm_mds_solve(P, spec, budget=args.budget, rng=random.Random(seed))
    except BudgetExhausted as exc:
        rec.update(verdict=False, verdicts={"solve": False}, witnesses={"solve": {"reason": str(exc)}})
        raise _Exit(EXIT_FAILS, rec)
    ok = verify_solution(P, res)
    rec["verdict"] = ok
    rec["verdicts"] = {"solve": ok}
    rec["witnesses"] = {"solve": res.to_json()}
    return rec


# ---------------------------------------------------------------------------
# equivalence suite


def cmd_equiv_suite(args) -> dict:
    seed = _seed(args)
    fields = [int(x) for x in args.fields.split(",")] if args.fields else list(DEFAULT_FIELDS)
    ells = [int(x) for x in args.ells.split(",")] if args.ells else [2, 3]
    params = {"trials": args.trials, "max_n": args.max_n, "max_k": args.max_k, "fields": fields, "ells": ells}
    rec = _base_record("equiv-suite", args, seed, params)
    rec["params"] = params
    rec["inject_bug"] = args.inject_bug
    run = partial(
        run_equivalence_trial,
        seed,
        fields=fields,
        max_n=args.max_n,
        max_k=args.max_k,
        ells=ells,
        inject_bug=args.inject_bug,
        budget=args.budget,
    )
    idx = range(args.trials)
    if args.jobs > 1 and args.trials > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            reports = list(pool.map(run, idx))
    else:
        reports = [run(i) for i in idx]
    bad = [r.to_json() for r in reports if not r.agree]
    counts = {name: {"true": 0, "false": 0, "skipped": 0} for name in CHECKERS}
    for r in reports:
        for name in CHECKERS:
            v = r.verdicts.get(name)
            counts[name]["skipped" if v is None else ("true" if v else "false")] += 1
    rec["verdict"] = not bad
    rec["verdicts"] = {"agreement": not bad}
    rec["witnesses"] = {"disagreements": bad}
    rec["counts"] = counts
    rec["trials"] = len(reports)
    log.info("equivalence suite: %d trials, %d disagreements", len(reports), len(bad))
    return rec


# ---------------------------------------------------------------------------
# conjecture


def cmd_conjecture(args) -> dict:
    seed = _seed(args)
    obj = _load_json(args.mother)
    F = field_from_json(args.field) if args.field else None
    if obj.get("family") in (None, "explicit") and "matrix" in obj:
        G = mat_from_json(F or field_from_json(obj["field"]), obj["matrix"])
    else:
        spec = codespec_from_json(obj, F)
        if "points" in obj:
            G = generator(spec, points_from_json(spec, obj["points"]))
        elif "N" in obj or "n" in obj:
            G = generator(spec, random_points(spec, int(obj.get("N", obj.get("n"))), random.Random(seed)))
        else:
            raise MalformedInput("mother code needs points or N")
    if rank(G) != G.rows:
        raise PreconditionFailed("mother code is rank deficient")
    rec = _base_record("conjecture", args, seed, {"mother": obj, "n": args.n, "punctures": args.punctures})
    rep = run_conjecture(G, args.n, args.punctures, args.ell, seed, args.budget)
    rec["report"] = rep.to_json()
    rec["verdict"] = not rep.failures
    rec["verdicts"] = {"all_punctures_mds_ell": not rep.failures}
    rec["witnesses"] = {"failures": rep.failures}
    log.info("conjecture: %d/%d punctures failed MDS(%d)", len(rep.failures), rep.trials, args.ell)
    return rec


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", help="field as q or p,m (overrides the input file)")
    common.add_argument("--ell", type=int, default=3, help="order ell")
    common.add_argument("--budget", type=int, default=None, help="enumeration budget")
    common.add_argument("--seed", type=int, default=None, help="random seed (generated and recorded if absent)")
    common.add_argument("--jobs", type=int, default=1, help="worker processes")
    common.add_argument("--strict", action="store_true", help="strict inequality in radius comparisons")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="gmmds", description="Higher order MDS code toolkit")
    p.add_argument("--version", action="version", version=f"gmmds {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", parents=[common], help="run one property checker on a code")
    c.add_argument("code", help="code JSON file ('-' for stdin)")
    c.add_argument("--property", "-p", required=True, choices=PROPERTIES)
    c.add_argument("--list-size", "-L", type=int, default=1)
    c.add_argument("--mode", choices=("maximal_only", "all_proper"), default="maximal_only")
    c.add_argument("--trials", type=int, default=1, help="random point draws when the code has no points")
    c.set_defaults(func=cmd_check, budget_default=DEFAULT_FAMILY_BUDGET)

    s = sub.add_parser("solve", parents=[common], help="find points attaining a zero pattern")
    s.add_argument("pattern", help="pattern JSON file")
    s.add_argument("--code", help="code JSON file (otherwise --family and --field)")
    s.add_argument("--family", default="reed_solomon", choices=("reed_solomon", "monomial", "gabidulin", "linearized_rs"))
    s.add_argument("--exponents", help="comma separated exponents for the monomial family")
    s.add_argument("--q0", type=int, help="subfield size for gabidulin / linearized_rs")
    s.set_defaults(func=cmd_solve, budget_default=DEFAULT_SOLVER_BUDGET)

    e = sub.add_parser("equiv-suite", parents=[common], help="four-way equivalence suite on random codes")
    e.add_argument("--trials", type=int, default=100)
    e.add_argument("--max-n", type=int, default=8)
    e.add_argument("--max-k", type=int, default=4)
    e.add_argument("--fields", help="comma separated field sizes")
    e.add_argument("--ells", help="comma separated orders")
    e.add_argument("--inject-bug", choices=CHECKERS, default=None, help="negate one checker (harness self-test)")
    e.set_defaults(func=cmd_equiv_suite, budget_default=DEFAULT_FAMILY_BUDGET)

    j = sub.add_parser("conjecture", parents=[common], help="MDS(ell) of random punctures of a mother code")
    j.add_argument("mother", help="mother code JSON file")
    j.add_argument("--n", type=int, required=True)
    j.add_argument("--punctures", type=int, default=50)
    j.set_defaults(func=cmd_conjecture, budget_default=DEFAULT_FAMILY_BUDGET)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_MALFORMED if exc.code not in (0, None) else 0
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr, format="%(message)s")
    if args.budget is None:
        args.budget = args.budget_default
    start = time.perf_counter()
    code = EXIT_HOLDS
    try:
        rec = args.func(args)
        code = EXIT_HOLDS if rec.get("verdict") else EXIT_FAILS
    except _Exit as exc:
        rec, code = exc.record, exc.code
    except Refused as exc:
        rec = {"command": args.command, "error": type(exc).__name__, "message": str(exc)}
        code = EXIT_REFUSED
    except (MalformedInput, NotGeneric, PreconditionFailed, DependentInput, NTooSmall) as exc:
        rec = {"command": args.command, "error": type(exc).__name__, "message": str(exc)}
        code = EXIT_MALFORMED
    except GmmdsError as exc:
        rec = {"command": args.command, "error": type(exc).__name__, "message": str(exc)}
        code = EXIT_MALFORMED
    rec["exit_code"] = code
    rec["wall_time"] = round(time.perf_counter() - start, 6)
    json.dump(rec, sys.stdout, sort_keys=True)
    sys.stdout.write("\n")
    if code == EXIT_REFUSED or code == EXIT_MALFORMED:
        log.error("%s: %s", rec.get("error"), rec.get("message"))
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
