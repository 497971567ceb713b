import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from toricsss.errors import DivisionByZero, FieldTooLarge, NonPrimeP, ReducibleModulus
from toricsss.gf import (
    GF,
    field_new,
    field_of_size,
    is_irreducible,
    prime_power,
    smallest_irreducible,
)

SMALL = [GF(p, k) for p, k in [(2, 1), (3, 1), (5, 1), (2, 2), (2, 3), (3, 2), (5, 2)]]


def test_prime_power():
    assert prime_power(8) == (2, 3)
    assert prime_power(9) == (3, 2)
    assert prime_power(7) == (7, 1)
    with pytest.raises(ValueError):
        prime_power(6)


def test_construction_errors():
    with pytest.raises(NonPrimeP):
        GF(4)
    with pytest.raises(ReducibleModulus):
        GF(2, 2, (1, 0, 1))  # x^2 + 1 = (x + 1)^2
    with pytest.raises(FieldTooLarge):
        GF(2, 20)


def test_known_tables():
    F = GF(5)
    assert F.g == 2
    assert [int(v) for v in F.exp] == [1, 2, 4, 3]
    F8 = GF(2, 3)
    assert F8.modulus == (1, 1, 0, 1)
    assert F8.g == 2
    assert F8.pow(2, 3) == 3  # x^3 = x + 1
    assert F8.mul(2, 4) == 3
    F9 = GF(3, 2)
    assert F9.modulus == (1, 0, 1)
    assert F9.mul(3, 3) == 2  # x^2 = -1


def test_smallest_irreducible_is_smallest():
    for p, k in [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2)]:
        m = smallest_irreducible(p, k)
        assert is_irreducible(m, p)
        for low in itertools.product(range(p), repeat=k):
            cand = tuple(reversed(low)) + (1,)
            # compare by base-p value of the lower coefficients
            if sum(c * p**i for i, c in enumerate(cand[:k])) < sum(c * p**i for i, c in enumerate(m[:k])):
                assert not is_irreducible(cand, p)


def test_generator_is_smallest_primitive():
    for F in SMALL:
        order = F.q - 1
        assert sorted(int(x) for x in F.exp) == list(range(1, F.q))
        for c in range(1, F.g):
            assert len({F.pow(c, i) for i in range(order)}) < order


def test_log_exp_inverse():
    for F in SMALL:
        assert F.log[0] == -1
        for a in range(1, F.q):
            assert F.exp[F.log[a]] == a


def test_inverse_of_zero():
    F = GF(5)
    with pytest.raises(DivisionByZero):
        F.inv(0)
    with pytest.raises(ZeroDivisionError):
        F.div(1, 0)


def test_spec_roundtrip():
    F = GF(3, 2)
    G = field_new(F.spec)
    assert G == F and hash(G) == hash(F)
    assert field_of_size(9) == F


@st.composite
def field_and_elems(draw, n=3):
    F = draw(st.sampled_from(SMALL))
    xs = [draw(st.integers(0, F.q - 1)) for _ in range(n)]
    return F, xs


@given(field_and_elems())
def test_field_axioms(fx):
    F, (a, b, c) = fx
    assert F.add(a, b) == F.add(b, a)
    assert F.mul(a, b) == F.mul(b, a)
    assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.add(a, F.neg(a)) == 0
    assert F.sub(F.add(a, b), b) == a
    if a:
        assert F.mul(a, F.inv(a)) == 1
    # characteristic
    acc = 0
    for _ in range(F.p):
        acc = F.add(acc, a)
    assert acc == 0


@given(field_and_elems(), st.integers(0, 40))
def test_pow_matches_repeated_mul(fx, e):
    F, (a, _, _) = fx
    acc = 1
    for _ in range(e):
        acc = F.mul(acc, a)
    assert F.pow(a, e) == acc


@settings(max_examples=30)
@given(st.sampled_from(SMALL), st.integers(0, 2**32 - 1))
def test_vectorised_matches_scalar(F, seed):
    rng = np.random.default_rng(seed)
    a = rng.integers(0, F.q, size=40)
    b = rng.integers(0, F.q, size=40)
    assert list(F.vadd(a, b)) == [F.add(x, y) for x, y in zip(a, b)]
    assert list(F.vsub(a, b)) == [F.sub(x, y) for x, y in zip(a, b)]
    assert list(F.vmul(a, b)) == [F.mul(x, y) for x, y in zip(a, b)]
    assert list(F.vneg(a)) == [F.neg(x) for x in a]
    nz = b[b != 0]
    assert list(F.vinv(nz)) == [F.inv(x) for x in nz]
    acc = 0
    for x in a:
        acc = F.add(acc, x)
    assert F.vsum(a) == acc


def test_tables_match_scalar_ops():
    F = GF(2, 3)
    assert F.has_tables
    for a in range(F.q):
        for b in range(F.q):
            assert F.add_table[a, b] == F.add(a, b)
            assert F.mul_table[a, b] == F.mul(a, b)


def test_matmul():
    F = GF(3, 2)
    rng = np.random.default_rng(1)
    A = rng.integers(0, 9, size=(3, 4))
    B = rng.integers(0, 9, size=(4, 5))
    C = F.matmul(A, B)
    for i in range(3):
        for j in range(5):
            acc = 0
            for t in range(4):
                acc = F.add(acc, F.mul(int(A[i, t]), int(B[t, j])))
            assert C[i, j] == acc


def test_large_field_without_tables():
    F = GF(2, 11)
    assert not F.has_tables
    a = 1234
    assert F.mul(a, F.inv(a)) == 1
