import random

import pytest
from hypothesis import given, strategies as st

from conftest import P31
from gmmds.errors import DependentInput, MalformedInput, NTooSmall
from gmmds.exactla import Mat, rank
from gmmds.gf import GF
from gmmds.polys import PolyTuple, lex_key
from gmmds.reduce import (
    default_base,
    default_length,
    is_linearly_independent,
    leading_monomial_basis,
    mds_ell_via_reduction,
    to_univariate,
)


def uni(F, *polys):
    return PolyTuple.from_terms(F, 1, [{(e,): c for e, c in p.items()} for p in polys])


def check_postconditions(P, lb):
    F, k = P.field, P.k
    assert rank(lb.M) == k
    js = list(lb.exponents)
    assert [lex_key(j) for j in js] == sorted(lex_key(j) for j in js) and len(set(js)) == k
    T = lb.transformed
    # T = M P coefficientwise
    monos = P.monomials()
    assert (lb.M @ Mat(F, P.coefficient_rows(monos), k, len(monos))).data == tuple(
        tuple(r) for r in T.coefficient_rows(monos)
    )
    for i, j in enumerate(js):
        coeffs = dict(T.polys[i])
        assert coeffs.get(j) == 1
        assert min(coeffs, key=lex_key) == j
        for i2 in range(k):
            if i2 != i:
                assert j not in dict(T.polys[i2])


def test_polytuple_basics():
    F = GF(5)
    P = PolyTuple.from_terms(F, 2, [[((1, 0), 2), ((1, 0), 3), ((0, 1), 1)]])
    assert P.polys == ((((0, 1), 1),),)
    assert P.evaluate((4, 3)) == [3]
    with pytest.raises(MalformedInput):
        PolyTuple.from_terms(F, 2, [{(1,): 1}])
    with pytest.raises(MalformedInput):
        PolyTuple.from_terms(F, 1, [{(40,): 1}])
    assert lex_key((1, 2, 3)) == (3, 2, 1)


def test_independence_examples():
    F = GF(5)
    assert is_linearly_independent(uni(F, {0: 1}, {1: 1}, {2: 1}))
    assert not is_linearly_independent(uni(F, {1: 1}, {1: 2}))
    xy = PolyTuple.from_terms(F, 2, [{(1, 0): 1, (0, 1): 1}, {(1, 0): 1, (0, 1): 4}, {(1, 0): 2}])
    assert not is_linearly_independent(xy)


def test_leading_basis_examples():
    F = GF(5)
    P = uni(F, {0: 1}, {1: 1}, {2: 1})
    lb = leading_monomial_basis(P)
    assert lb.M.data == Mat.identity(F, 3).data
    assert lb.exponents == ((0,), (1,), (2,))
    Q = uni(F, {0: 1, 1: 1}, {0: 1, 1: 2})
    lb = leading_monomial_basis(Q)
    assert lb.exponents == ((0,), (1,))
    check_postconditions(Q, lb)
    # variables ordered (y, x): the last one, x, is most significant, so y < x
    B = PolyTuple.from_terms(F, 2, [{(0, 0): 1}, {(1, 0): 1}, {(0, 1): 1}])
    assert leading_monomial_basis(B).exponents == ((0, 0), (1, 0), (0, 1))
    with pytest.raises(DependentInput):
        leading_monomial_basis(uni(F, {1: 1}, {1: 2}))


@given(st.integers(0, 10**6))
def test_leading_basis_random(seed):
    r = random.Random(seed)
    F = GF(r.choice([5, 7, P31]))
    k, nv = r.randint(1, 3), r.randint(1, 2)
    polys = []
    for _ in range(k):
        terms = {}
        for _ in range(r.randint(1, 4)):
            e = tuple(r.randint(0, 4) for _ in range(nv))
            if sum(e) <= 4:
                terms[e] = r.randrange(1, F.q)
        polys.append(terms or {(0,) * nv: 1})
    P = PolyTuple.from_terms(F, nv, polys)
    if not is_linearly_independent(P):
        with pytest.raises(DependentInput):
            leading_monomial_basis(P)
        return
    check_postconditions(P, leading_monomial_basis(P))


def test_univariate_examples():
    assert to_univariate([(3,), (5,)], 10) == [3, 5]
    assert to_univariate([(0, 0), (1, 0), (0, 1)], 10) == [0, 1, 10]
    with pytest.raises(NTooSmall):
        to_univariate([(2, 3)], 5)
    assert default_base([(1, 2), (3, 0)]) == 7


@given(st.lists(st.tuples(st.integers(0, 6), st.integers(0, 6), st.integers(0, 6)), min_size=1, max_size=8, unique=True))
def test_univariate_monotone(exps):
    exps = sorted(exps, key=lex_key)
    N = default_base(exps)
    out = to_univariate(exps, N)
    assert all(a < b for a, b in zip(out, out[1:]))


def test_reduction_examples():
    F = GF(P31)
    P = uni(F, {0: 1}, {1: 1}, {3: 1})
    res = mds_ell_via_reduction(P, 2, rng=random.Random(1))
    assert res.reduced and res.direct
    Q = uni(F, {0: 1}, {1: 1, 2: 1}, {2: 1, 3: 1})
    res = mds_ell_via_reduction(Q, 3, rng=random.Random(2))
    assert res.direct or not res.reduced
    assert res.to_json()["monomial_order"] == "last variable most significant"
    with pytest.raises(DependentInput):
        mds_ell_via_reduction(uni(F, {1: 1}, {1: 2}), 2)
    assert default_length(3, 3) == 7 and default_length(2, 1) == 3
