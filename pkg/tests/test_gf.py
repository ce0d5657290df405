import itertools
import random

import pytest
from hypothesis import given, strategies as st

from gmmds.errors import DegreeMismatch, NonPrimeP, ReducibleModulus, ZeroToNegativePower
from gmmds.gf import GF, build_field, enumerate_field, fe_div, fe_mul, fe_pow, field_of_order, sample_uniform

SMALL = [(2, 1), (3, 1), (5, 1), (7, 1), (2, 2), (2, 3), (3, 2), (2, 4), (13, 1)]


def test_default_moduli():
    assert build_field(2, 2).modulus == (1, 1, 1)
    assert build_field(5, 1).q == 5
    assert build_field(2, 3).modulus == (1, 1, 0, 1)
    assert build_field(3, 2).modulus == (1, 0, 1)


def test_bad_construction():
    with pytest.raises(ReducibleModulus):
        build_field(2, 2, [1, 0, 1])
    with pytest.raises(NonPrimeP):
        build_field(4, 1)
    with pytest.raises(DegreeMismatch):
        build_field(2, 3, [1, 1, 1])
    with pytest.raises(DegreeMismatch):
        build_field(2, 17)


def test_field_of_order():
    assert field_of_order(8) == GF(2, 3)
    assert field_of_order(7) == GF(7)
    with pytest.raises(NonPrimeP):
        field_of_order(6)


def test_gf4_products(gf4):
    w = 2  # x
    assert fe_mul(gf4, w, w) == 3  # x + 1
    assert fe_mul(gf4, w, 3) == 1
    assert fe_pow(gf4, w, 3) == 1


def test_prime_field_ops(gf5):
    assert fe_mul(gf5, 3, 4) == 2
    assert fe_pow(gf5, 2, -1) == 3
    assert fe_pow(gf5, 4, 0) == 1
    with pytest.raises(ZeroToNegativePower):
        fe_pow(gf5, 0, -1)


def test_enumeration():
    assert list(enumerate_field(GF(2))) == [0, 1]
    assert len(list(enumerate_field(GF(2, 2)))) == 4


def test_coefficient_roundtrip():
    F = GF(3, 2)
    for a in F.elements():
        assert F.from_coeffs(F.to_coeffs(a)) == a
    assert F.element([1, 2]) == 1 + 2 * 3


@pytest.mark.parametrize("p,m", SMALL)
def test_field_axioms_exhaustive(p, m):
    F = GF(p, m)
    els = list(F.elements())
    for a, b in itertools.product(els, repeat=2):
        assert F.add(a, b) == F.add(b, a)
        assert F.mul(a, b) == F.mul(b, a)
        assert F.sub(F.add(a, b), b) == a
        if b:
            assert fe_div(F, a, b) == F.mul(a, F.inv(b))
            assert F.mul(fe_div(F, a, b), b) == a
    for a, b, c in itertools.product(els[: min(len(els), 9)], repeat=3):
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
        assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    for a in els:
        assert F.pow(a, F.q) == a
        assert F.add(a, F.neg(a)) == 0


def test_large_prime_field():
    p = 2**61 - 1
    F = GF(p)
    r = random.Random(5)
    for _ in range(50):
        a = r.randrange(1, p)
        assert F.mul(a, F.inv(a)) == 1
        assert F.pow(a, p - 1) == 1


@given(st.integers(0, 8), st.integers(0, 8), st.integers(0, 30))
def test_power_laws_gf9(a, b, e):
    F = GF(3, 2)
    assert F.pow(F.mul(a, b), e) == F.mul(F.pow(a, e), F.pow(b, e))
    assert F.frobenius(F.add(a, b)) == F.add(F.frobenius(a), F.frobenius(b))


def test_sampler_uniform():
    F = GF(5)
    r = random.Random(7)
    N = 100_000
    counts = [0] * 5
    for _ in range(N):
        counts[sample_uniform(F, r)] += 1
    mu = N / 5
    sd = (N * 0.2 * 0.8) ** 0.5
    assert all(abs(c - mu) <= 4 * sd for c in counts)


def test_immutable_and_cached():
    F = GF(2, 2)
    assert F is GF(2, 2)
    with pytest.raises(AttributeError):
        F.p = 3
    import pickle

    assert pickle.loads(pickle.dumps(F)) == F
