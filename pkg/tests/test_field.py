import math
import random

import numpy as np
import pytest

import kummerlcp as K
from kummerlcp.errors import (
    DivisionByZeroError,
    FieldMismatchError,
    NotPrimeError,
    TooLargeError,
)


def naive_gf9_canonical_modulus():
    """Independent scan: smallest (low-degree-first) monic primitive quadratic over GF(3)."""
    for c0 in range(3):
        for c1 in range(3):
            if any((t * t + c1 * t + c0) % 3 == 0 for t in range(3)):
                continue  # has a root, reducible
            # order of x in GF(3)[x]/(f): multiply (u0 + u1 x) by x until it is 1
            cur = (0, 1)
            order = 1
            while cur != (1, 0) and order <= 9:
                cur = ((-c0 * cur[1]) % 3, (cur[0] - c1 * cur[1]) % 3)
                order += 1
            if cur == (1, 0) and order == 8:
                return (c0, c1, 1)
    raise AssertionError("no primitive quadratic found")


def test_gf9_canonical_modulus(gf9):
    assert gf9.modulus == naive_gf9_canonical_modulus() == (2, 1, 1)


def test_prime_field_modulus_convention():
    f = K.field_create(2, 1)
    assert f.modulus == (0, 1)
    assert f.q == 2
    assert f.add(1, 1) == 0


def test_field_create_is_pure():
    a = K.Field(3, 2)
    b = K.Field(3, 2)
    assert a.modulus == b.modulus
    assert all(a.mul(x, y) == b.mul(x, y) for x in range(9) for y in range(9))


def test_field_create_errors():
    with pytest.raises(NotPrimeError):
        K.field_create(6, 1)
    with pytest.raises(TooLargeError):
        K.field_create(2, 21)
    with pytest.raises(TooLargeError):
        K.field_create(3, 0)


def test_gf729_exists(gf729):
    assert gf729.q == 729
    # the log/exp tables enumerate the full multiplicative group
    assert len(set(gf729._exp.tolist())) == 728


@pytest.mark.parametrize("p,e", [(2, 1), (3, 1), (2, 2), (3, 2), (2, 3), (5, 1), (3, 4)])
def test_field_axioms_exhaustive(p, e):
    f = K.field_create(p, e)
    q = f.q
    rng = random.Random(q)
    triples = (
        [(a, b, c) for a in range(q) for b in range(q) for c in range(q)]
        if q <= 9
        else [(rng.randrange(q), rng.randrange(q), rng.randrange(q)) for _ in range(3000)]
    )
    for a, b, c in triples:
        assert f.add(a, b) == f.add(b, a)
        assert f.mul(a, b) == f.mul(b, a)
        assert f.add(f.add(a, b), c) == f.add(a, f.add(b, c))
        assert f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))
        assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
    for a in range(q):
        assert f.add(a, 0) == a
        assert f.mul(a, 1) == a
        assert f.add(a, f.neg(a)) == 0
        if a:
            assert f.mul(a, f.inv(a)) == 1


def test_frobenius_gf9(gf9):
    for a in range(9):
        assert gf9.pow(a, 9) == a


def test_element_operators(gf9):
    a = gf9.element(5)
    b = gf9.element(7)
    assert (a + b) - b == a
    assert (a * b) / b == a
    assert a + 0 == a
    assert (a * a ** -1) == gf9.one()
    assert -(-a) == a
    with pytest.raises(DivisionByZeroError):
        a / gf9.zero()
    other = K.field_create(2, 2).element(1)
    with pytest.raises(FieldMismatchError):
        a + other


def test_vector_ops_match_scalar(gf9):
    rng = np.random.default_rng(1)
    a = rng.integers(0, 9, 200)
    b = rng.integers(0, 9, 200)
    assert all(gf9.vadd(a, b)[i] == gf9.add(int(a[i]), int(b[i])) for i in range(200))
    assert all(gf9.vmul(a, b)[i] == gf9.mul(int(a[i]), int(b[i])) for i in range(200))
    assert all(gf9.vsub(a, b)[i] == gf9.sub(int(a[i]), int(b[i])) for i in range(200))
    nz = a.copy()
    nz[nz == 0] = 1
    assert all(gf9.vinv(nz)[i] == gf9.inv(int(nz[i])) for i in range(200))
    assert all(gf9.vpow(a, 5)[i] == gf9.pow(int(a[i]), 5) for i in range(200))


def test_tableless_field_path():
    # GF(5^5) = 3125 exceeds the full-table limit; ops must still agree with axioms
    f = K.field_create(5, 5)
    assert f._mul_flat is None
    rng = random.Random(7)
    for _ in range(500):
        a, b = rng.randrange(f.q), rng.randrange(f.q)
        assert f.add(a, b) == f.add(b, a)
        assert f.sub(f.add(a, b), b) == a
        if b:
            assert f.mul(f.div(a, b), b) == a
    arr = np.array([rng.randrange(f.q) for _ in range(64)], dtype=np.int64)
    brr = np.array([rng.randrange(f.q) for _ in range(64)], dtype=np.int64)
    assert all(f.vadd(arr, brr)[i] == f.add(int(arr[i]), int(brr[i])) for i in range(64))
    assert all(f.vmul(arr, brr)[i] == f.mul(int(arr[i]), int(brr[i])) for i in range(64))


def test_mth_roots_examples(gf9):
    assert [e.enc for e in K.mth_roots(gf9, 0, 4)] == [0]
    quartics = {gf9.pow(y, 4) for y in range(1, 9)}
    for c in range(1, 9):
        roots = K.mth_roots(gf9, c, 4)
        if c in quartics:
            assert len(roots) == 4
        else:
            assert roots == []
        for r in roots:
            assert gf9.pow(r.enc, 4) == c


@pytest.mark.parametrize("p,e,m", [(3, 2, 4), (2, 2, 3), (3, 2, 5), (5, 1, 2), (2, 3, 7)])
def test_mth_roots_cardinality(p, e, m):
    f = K.field_create(p, e)
    total = 0
    expected = math.gcd(m, f.q - 1)
    for c in range(f.q):
        roots = K.mth_roots(f, c, m)
        total += len(roots)
        if c != 0:
            assert len(roots) in (0, expected)
        for r in roots:
            assert f.pow(r.enc, m) == c
    assert total == f.q


def test_mth_roots_m_equal_one(gf9):
    for c in range(9):
        assert [e.enc for e in K.mth_roots(gf9, c, 1)] == [c]


def test_field_serialization_roundtrip(gf9):
    obj = gf9.to_json()
    assert obj == {"p": 3, "e": 2, "modulus": [2, 1, 1]}
    assert K.field_from_json(obj) == gf9
    with pytest.raises(FieldMismatchError):
        K.field_from_json({"p": 3, "e": 2, "modulus": [1, 1, 1]})
