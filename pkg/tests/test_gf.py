import itertools

import numpy as np
import pytest

from surfcodes.errors import DivisionByZero, FormatError, MixedFields, NotIrreducible, NotPrime, TooLarge
from surfcodes.gf import (
    embedding,
    field_from_q,
    field_new,
    is_irreducible,
    parse_field_header,
)

SMALL_Q = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31, 32, 37, 41, 43, 47, 49]


@pytest.fixture(params=SMALL_Q, ids=lambda q: f"q{q}")
def field(request):
    return field_from_q(request.param)


def test_field_new_examples():
    F2 = field_new(2, 1)
    assert F2.q == 2 and F2.modulus == (0, 1)
    F4 = field_new(2, 2, [1, 1, 1])
    assert F4.q == 4
    with pytest.raises(NotIrreducible):
        field_new(2, 2, [0, 0, 1])


def test_field_new_errors():
    with pytest.raises(NotPrime):
        field_new(6, 1)
    with pytest.raises(TooLarge):
        field_new(2, 17)
    with pytest.raises(FormatError):
        field_new(2, 2, [1, 1, 0])


def test_default_modulus_is_smallest_irreducible():
    # brute-force oracle: walk candidate moduli in code order, keep the first
    # one with no root and no quadratic factor (degrees here are <= 3)
    for p, e in [(2, 2), (2, 3), (3, 2), (5, 2), (2, 4), (7, 2), (3, 3)]:
        F = field_new(p, e)
        first = None
        for low in itertools.product(range(p), repeat=e):
            cand = list(reversed(low)) + [1]
            no_root = all(sum(c * x ** j for j, c in enumerate(cand)) % p for x in range(p))
            if no_root and (e <= 3 or is_irreducible(cand, p)):
                first = tuple(cand)
                break
        assert F.modulus == first, (p, e)
    assert field_new(2, 3).modulus == (1, 1, 0, 1)


def test_arithmetic_examples():
    F4 = field_new(2, 2)
    t = F4.gen
    assert t + t == F4.zero
    assert t * (t + 1) == F4.one
    F5 = field_new(5)
    assert F5(2).inverse() == F5(3)
    with pytest.raises(DivisionByZero):
        F5(0).inverse()
    with pytest.raises(MixedFields):
        F5(1) + field_new(7)(1)


def test_enumerate_examples():
    assert [str(x) for x in field_new(2).enumerate()] == ["0", "1"]
    assert [str(x) for x in field_new(2, 2).enumerate()] == ["0", "1", "t", "t+1"]
    els = field_new(3, 2).enumerate()
    assert len(els) == 9 and len(set(els)) == 9


def test_text_form_roundtrip(field):
    for x in field.enumerate():
        assert field.parse(repr(x)) == x
        assert field.parse(str(x)) == x
    assert parse_field_header(field.header) == field


def test_text_form_example():
    F4 = field_new(2, 2)
    assert repr(F4.gen + 1) == "GF(4;t^2+t+1): t+1"


def test_axioms_exhaustive(field):
    q = field.q
    a, b, c = np.meshgrid(np.arange(q), np.arange(q), np.arange(q), indexing="ij")
    add, mul = field.vadd, field.vmul
    assert np.array_equal(add(add(a, b), c), add(a, add(b, c)))
    assert np.array_equal(mul(mul(a, b), c), mul(a, mul(b, c)))
    assert np.array_equal(mul(a, add(b, c)), add(mul(a, b), mul(a, c)))
    x, y = a[:, :, 0], b[:, :, 0]
    assert np.array_equal(add(x, y), add(y, x))
    assert np.array_equal(mul(x, y), mul(y, x))
    els = np.arange(q)
    assert np.array_equal(add(els, 0), els)
    assert np.array_equal(mul(els, 1), els)
    assert np.all(add(els, field.vneg(els)) == 0)
    nz = els[1:]
    assert np.all(mul(nz, field.vinv(nz)) == 1)


def test_scalar_path_matches_vector_and_generic(field):
    q = field.q
    for a in range(q):
        for b in range(q):
            s = field.add(a, b)
            m = field.mul(a, b)
            assert s == field.add_generic(a, b) == int(field.vadd(a, b))
            assert m == field.mul_generic(a, b) == int(field.vmul(a, b))
    table = field.mul_table()
    gen = np.array([[field.mul_generic(a, b) for b in range(q)] for a in range(q)])
    assert np.array_equal(table, gen)


def test_element_axioms_small():
    for q in [2, 3, 4, 5, 7, 8, 9]:
        els = field_from_q(q).enumerate()
        for a, b, c in itertools.product(els, repeat=3):
            assert (a + b) + c == a + (b + c)
            assert (a * b) * c == a * (b * c)
            assert a * (b + c) == a * b + a * c
        for a in els:
            assert a - a == 0 * a
            if a:
                assert a * a.inverse() == els[1]
                assert (a / a) == els[1]


def test_frobenius(field):
    for x in field.enumerate():
        assert x ** field.q == x
    codes = np.arange(field.q)
    assert np.array_equal(field.vpow(codes, field.q), codes)


def test_table_path_limit():
    with pytest.raises(TooLarge):
        field_new(2, 9).mul_table()


def test_embedding_is_ring_homomorphism():
    for small, big in [((2, 2), (2, 4)), ((3, 1), (3, 2)), ((2, 1), (2, 3)), ((7, 1), (7, 2))]:
        S, B = field_new(*small), field_new(*big)
        emb = embedding(S, B)
        assert len(set(emb.tolist())) == S.q
        for a in range(S.q):
            for b in range(S.q):
                assert emb[S.add(a, b)] == B.add(emb[a], emb[b])
                assert emb[S.mul(a, b)] == B.mul(emb[a], emb[b])


def test_large_field_pow_and_inverse():
    F = field_new(2, 16)
    x = F.parse("t^15+t^3+1")
    assert x * x.inverse() == F.one
    assert x ** (F.q - 1) == F.one
