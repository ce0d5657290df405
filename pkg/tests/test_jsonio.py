import json
import random

import pytest
from hypothesis import given, strategies as st

from gmmds.codes import CodeSpec
from gmmds.errors import MalformedInput
from gmmds.exactla import Mat
from gmmds.gf import GF
from gmmds.jsonio import (
    canonical_dumps,
    codespec_from_json,
    codespec_to_json,
    config_from_json,
    config_to_json,
    digest,
    elem_from_json,
    elem_to_json,
    field_from_json,
    mat_from_json,
    mat_to_json,
    pattern_from_json,
    pattern_to_json,
    points_from_json,
    points_to_json,
)
from gmmds.patterns import Config, ZeroPattern
from gmmds.polys import PolyTuple


def test_field_descriptions():
    assert field_from_json(5) == GF(5)
    assert field_from_json(8) == GF(2, 3)
    assert field_from_json("2,2") == GF(2, 2)
    assert field_from_json({"p": 2, "m": 2, "modulus": [1, 1, 1]}) == GF(2, 2)
    assert field_from_json(GF(3, 2).to_json()) == GF(3, 2)
    with pytest.raises(MalformedInput):
        field_from_json("x")
    with pytest.raises(MalformedInput):
        field_from_json(6)


def test_elements():
    F = GF(3, 2)
    assert elem_to_json(F, 7) == [1, 2]
    assert elem_from_json(F, [1, 2]) == 7
    assert elem_to_json(GF(5), 3) == 3
    with pytest.raises(MalformedInput):
        elem_from_json(F, "1")


@given(st.integers(0, 10**6))
def test_roundtrips(seed):
    r = random.Random(seed)
    F = r.choice([GF(5), GF(2, 3), GF(3, 2)])
    M = Mat(F, [[r.randrange(F.q) for _ in range(3)] for _ in range(2)])
    assert mat_from_json(F, json.loads(json.dumps(mat_to_json(M)))).data == M.data
    P = ZeroPattern(4, 2, (frozenset({0, r.randrange(4)}), frozenset()))
    assert pattern_from_json(pattern_to_json(P)) == P
    C = Config(2, 1, ((1, frozenset({0})), (0, frozenset({1, 2}))))
    assert config_from_json(config_to_json(C)) == C


def test_codespec_roundtrip():
    F = GF(7)
    specs = [
        CodeSpec.reed_solomon(F, 3),
        CodeSpec.monomial(F, [0, 2, 5]),
        CodeSpec.gabidulin(GF(2, 4), 2, 4),
        CodeSpec.linearized_rs(GF(2, 4), 2, 4),
        CodeSpec.polynomial(PolyTuple.from_terms(F, 2, [{(0, 0): 1}, {(1, 0): 3, (0, 2): 1}])),
        CodeSpec.explicit(Mat(F, [[1, 2, 3]])),
    ]
    for s in specs:
        back = codespec_from_json(json.loads(json.dumps(codespec_to_json(s))))
        assert back == s
    with pytest.raises(MalformedInput):
        codespec_from_json({"family": "nope", "field": 5})
    with pytest.raises(MalformedInput):
        codespec_from_json({"family": "reed_solomon", "field": 5})


def test_points():
    F = GF(2, 2)
    spec = CodeSpec.linearized_rs(GF(2, 4), 2, 4)
    pts = [(1, 2), (3, 4)]
    assert points_from_json(spec, points_to_json(spec.field, pts)) == pts
    rs = CodeSpec.reed_solomon(F, 2)
    assert points_from_json(rs, points_to_json(F, [2, 3])) == [2, 3]


def test_digest_is_canonical():
    a = {"b": 1, "a": [1, 2]}
    b = {"a": [1, 2], "b": 1}
    assert canonical_dumps(a) == canonical_dumps(b)
    assert digest(a) == digest(b) and len(digest(a)) == 64
