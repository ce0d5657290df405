"""JSON encodings for fields, elements, matrices, codes, patterns and configurations."""

from __future__ import annotations

import hashlib
import json
from typing import Any

from .codes import CodeSpec
from .errors import MalformedInput
from .exactla import Mat
from .gf import GF, field_of_order
from .patterns import Config, ZeroPattern
from .polys import PolyTuple


def field_from_json(obj: Any) -> GF:
    """{"p": .., "m": .., "modulus": [..]}, [p, m], a prime power q, or a "q" / "p,m" string."""
    if isinstance(obj, GF):
        return obj
    if isinstance(obj, int):
        return field_of_order(obj)
    if isinstance(obj, str):
        parts = [x.strip() for x in obj.split(",")]
        try:
            nums = [int(x) for x in parts]
        except ValueError as exc:
            raise MalformedInput(f"bad field {obj!r}") from exc
        if len(nums) == 1:
            return field_of_order(nums[0])
        if len(nums) == 2:
            return GF(nums[0], nums[1])
        raise MalformedInput(f"bad field {obj!r}")
    if isinstance(obj, (list, tuple)) and len(obj) in (1, 2):
        return GF(*[int(x) for x in obj])
    if isinstance(obj, dict) and "p" in obj:
        return GF(int(obj["p"]), int(obj.get("m", 1)), obj.get("modulus"))
    raise MalformedInput(f"bad field description {obj!r}")


def elem_to_json(F: GF, a: int):
    return a if F.m == 1 else list(F.to_coeffs(a))


def elem_from_json(F: GF, x) -> int:
    if isinstance(x, bool) or not isinstance(x, (int, list, tuple)):
        raise MalformedInput(f"bad field element {x!r}")
    return F.element(x)


def mat_to_json(M: Mat) -> list:
    return [[elem_to_json(M.field, x) for x in row] for row in M.data]


def mat_from_json(F: GF, rows) -> Mat:
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise MalformedInput("matrix must be a list of rows")
    return Mat(F, [[elem_from_json(F, x) for x in r] for r in rows])


def polys_from_json(F: GF, obj: dict) -> PolyTuple:
    try:
        r = int(obj["r"])
        polys = []
        for p in obj["polys"]:
            polys.append([(tuple(t["exp"]), elem_from_json(F, t["coeff"])) for t in p["terms"]])
        return PolyTuple.from_terms(F, r, polys, int(obj.get("max_degree", 32)))
    except (KeyError, TypeError) as exc:
        raise MalformedInput(f"bad polynomial description: {exc}") from exc


def codespec_from_json(obj: dict, F: GF | None = None) -> CodeSpec:
    """Code description; "field" may be overridden by the caller."""
    if not isinstance(obj, dict):
        raise MalformedInput("code description must be an object")
    if F is None:
        if "field" not in obj:
            raise MalformedInput("no field given")
        F = field_from_json(obj["field"])
    fam = obj.get("family")
    try:
        if fam == "reed_solomon":
            return CodeSpec.reed_solomon(F, int(obj["k"]))
        if fam == "monomial":
            return CodeSpec.monomial(F, [int(e) for e in obj["exponents"]])
        if fam == "gabidulin":
            return CodeSpec.gabidulin(F, int(obj["k"]), int(obj["q"]))
        if fam == "linearized_rs":
            return CodeSpec.linearized_rs(F, int(obj["k"]), int(obj["q"]))
        if fam == "polynomial":
            return CodeSpec.polynomial(polys_from_json(F, obj))
        if fam == "explicit":
            return CodeSpec.explicit(mat_from_json(F, obj["matrix"]))
    except KeyError as exc:
        raise MalformedInput(f"missing key {exc} for family {fam!r}") from exc
    raise MalformedInput(f"unknown family {fam!r}")


def codespec_to_json(spec: CodeSpec) -> dict:
    out: dict[str, Any] = {"family": spec.family, "field": spec.field.to_json(), "k": spec.k}
    if spec.family == "monomial":
        out["exponents"] = list(spec.exponents)
    elif spec.family in ("gabidulin", "linearized_rs"):
        out["q"] = spec.q0
    elif spec.family == "polynomial":
        out.update(spec.polys.to_json())
    elif spec.family == "explicit":
        out["matrix"] = mat_to_json(spec.matrix)
    return out


def points_from_json(spec: CodeSpec, pts) -> list:
    F = spec.field
    if not isinstance(pts, list):
        raise MalformedInput("points must be a list")
    if spec.r == 1:
        return [elem_from_json(F, p) for p in pts]
    return [tuple(elem_from_json(F, x) for x in p) for p in pts]


def points_to_json(F: GF, pts) -> list:
    return [[elem_to_json(F, x) for x in p] if isinstance(p, tuple) else elem_to_json(F, p) for p in pts]


def pattern_from_json(obj: dict) -> ZeroPattern:
    try:
        return ZeroPattern(int(obj["n"]), int(obj["k"]), tuple(frozenset(int(j) for j in s) for s in obj["S"]))
    except (KeyError, TypeError) as exc:
        raise MalformedInput(f"bad pattern: {exc}") from exc


def pattern_to_json(P: ZeroPattern) -> dict:
    return {"n": P.n, "k": P.k, "S": [sorted(s) for s in P.S]}


def config_to_json(C: Config) -> dict:
    return {"k": C.k, "b": C.b, "pairs": [{"sigma": s, "A": sorted(A)} for s, A in C.pairs]}


def config_from_json(obj: dict) -> Config:
    try:
        pairs = tuple((int(p["sigma"]), frozenset(p["A"])) for p in obj["pairs"])
        return Config(int(obj["k"]), int(obj["b"]), pairs, obj.get("n"))
    except (KeyError, TypeError) as exc:
        raise MalformedInput(f"bad configuration: {exc}") from exc


def canonical_dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def digest(obj: Any) -> str:
    return hashlib.sha256(canonical_dumps(obj).encode()).hexdigest()
