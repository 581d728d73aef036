import itertools
from math import comb

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from surfcodes.codes import (
    LinearCode,
    MonomialBasis,
    affine_points,
    build_code,
    format_matrix,
    information_sets,
    min_distance,
    min_distance_bz,
    min_distance_exhaustive,
    minimum_weight_word,
    parse_matrix,
    rank,
    rref,
    weight_of,
)
from surfcodes.errors import BudgetExceeded, EmptySupport, FormatError, LengthMismatch
from surfcodes.gf import field_from_q, field_new
from surfcodes.projective import SurfaceP3, fermat, parse_polynomial_expr, rational_points


def random_code(q, k, n, seed):
    F = field_from_q(q)
    rng = np.random.default_rng(seed)
    return LinearCode(F, rng.integers(0, q, size=(k, n)))


def brute_min_distance(C):
    """Scalar oracle over every nonzero message, using FieldElement arithmetic."""
    F = C.field
    rows = [[F.from_code(int(x)) for x in row] for row in C.gen]
    best = C.n + 1
    for msg in itertools.product(F.enumerate(), repeat=C.k):
        if not any(msg):
            continue
        word = [sum((m * row[j] for m, row in zip(msg, rows)), F.zero) for j in range(C.n)]
        best = min(best, sum(1 for x in word if x))
    return best


def test_rref_is_reduced():
    F = field_new(3, 2)
    rng = np.random.default_rng(1)
    M = rng.integers(0, 9, size=(5, 9))
    R, piv = rref(F, M)
    assert R.shape[0] == len(piv) == rank(F, M)
    assert np.array_equal(R[:, piv], np.eye(len(piv), dtype=np.int64))
    # same row space: stacking adds no rank
    assert rank(F, np.vstack([R, M])) == len(piv)


def test_rref_column_order():
    F = field_new(5)
    M = np.array([[1, 2, 3, 4], [0, 1, 1, 2]])
    R, piv = rref(F, M, [3, 2, 1, 0])
    assert piv == [3, 2]
    assert np.array_equal(R[:, [3, 2]], np.eye(2, dtype=np.int64))


@pytest.mark.parametrize("r,d", [(1, 3), (2, 3), (3, 3), (4, 3), (5, 4), (6, 5), (2, 5)])
def test_monomial_basis_size(r, d):
    f = fermat(field_new(7), d)
    B = MonomialBasis.for_surface(f, r)
    assert len(B) == MonomialBasis.expected_size(r, d)
    if r < d:
        assert len(B) == comb(r + 3, 3)


def test_fermat_cubic_f4_code():
    X = SurfaceP3(fermat(field_new(2, 2), 3))
    C = build_code(X, 1)
    n_affine = sum(1 for P in rational_points(X) if P.coords[0])
    assert C.n == n_affine
    assert C.k <= 4
    assert C.provenance["dim_L"] == 4


def test_quadric_f3_injective():
    X = SurfaceP3(parse_polynomial_expr(field_new(3), "x0*x1 - x2*x3"))
    C = build_code(X, 1)
    assert C.k == 4 and C.provenance["injective"]


def test_evaluation_matrix_entries():
    F = field_new(5)
    X = SurfaceP3(fermat(F, 3))
    C = build_code(X, 2)
    pts = C.provenance["points"]
    B = MonomialBasis.for_surface(X.f, 2)
    # recompute the evaluation matrix with scalar arithmetic; its row space must match
    E = []
    for mon in B.monomials:
        row = []
        for P in pts.tolist():
            v = F.one
            for x, e in zip(P, mon):
                v = v * F.from_code(x) ** e
            row.append((v / F.from_code(P[0]) ** 2).code)
        E.append(row)
    assert rank(F, np.vstack([C.gen, E])) == C.k == rank(F, E)


def test_other_hyperplane():
    F = field_new(3)
    X = SurfaceP3(parse_polynomial_expr(F, "x0*x1 - x2*x3"))
    pts = affine_points(X, (0, 0, 0, 1))
    all_pts = rational_points(X)
    assert len(pts) == sum(1 for P in all_pts if P.coords[3])
    C = build_code(X, 1, hyperplane=(0, 0, 0, 1))
    assert C.n == len(pts)


def test_empty_support():
    # over F_2, x0^2 + x0 x1 + x1^2 vanishes only when x0 = x1 = 0
    X = SurfaceP3(parse_polynomial_expr(field_new(2), "x0^2 + x0*x1 + x1^2"))
    with pytest.raises(EmptySupport):
        build_code(X, 1)


def test_exhaustive_trivial_cases():
    F = field_new(3)
    row = np.array([[1, 0, 2, 0, 1]])
    assert min_distance_exhaustive(LinearCode(F, row)) == 3
    rep = LinearCode(F, np.ones((1, 7), dtype=np.int64))
    assert min_distance_exhaustive(rep) == 7
    with pytest.raises(BudgetExceeded):
        min_distance_exhaustive(random_code(3, 6, 10, 0), budget=10)


def test_bz_trivial_cases():
    F = field_new(2, 2)
    ident = LinearCode(F, np.eye(6, dtype=np.int64))
    assert min_distance_bz(ident, fallback=0) == 1
    single = LinearCode(F, np.array([[0, 1, 2, 3, 0, 1]]))
    stats = {}
    assert min_distance_bz(single, fallback=0, stats=stats) == 4
    assert stats["trace"][0][0] == 1


@pytest.mark.parametrize("q,k,n,seed", [(2, 4, 8, 0), (3, 3, 6, 1), (4, 3, 7, 2), (5, 2, 5, 3)])
def test_exhaustive_matches_brute_force(q, k, n, seed):
    C = random_code(q, k, n, seed)
    assert min_distance_exhaustive(C) == brute_min_distance(C)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([2, 3, 4, 5, 7, 8, 9]), st.integers(1, 6), st.integers(0, 30), st.integers(0, 2 ** 32))
def test_bz_equals_exhaustive(q, k, extra, seed):
    n = min(40, k + extra)
    if q ** k > 10 ** 5:
        k = 4
    C = random_code(q, k, n, seed)
    assume(C.k > 0)
    assert min_distance_bz(C, fallback=0) == min_distance_exhaustive(C)


def test_bz_budget():
    C = random_code(3, 8, 30, 5)
    with pytest.raises(BudgetExceeded):
        min_distance_bz(C, fallback=0, budget=10)
    d, how = min_distance(C, budget=10 ** 6)
    assert how == "exhaustive" and d == min_distance_bz(C, fallback=0)


def test_workers_do_not_change_result():
    C = random_code(3, 7, 25, 11)
    assert min_distance_exhaustive(C, workers=2) == min_distance_exhaustive(C, workers=1)


def test_information_sets_disjoint():
    C = random_code(4, 4, 20, 3)
    sets = information_sets(C)
    fresh_cols = []
    seen = set()
    for s in sets:
        fresh = [c for c in s.pivots if c not in seen]
        assert len(fresh) == s.fresh
        fresh_cols += fresh
        seen.update(fresh)
        assert np.array_equal(s.gen[:, s.pivots], np.eye(C.k, dtype=np.int64))
    assert len(fresh_cols) == len(set(fresh_cols))
    assert sets[0].pivots == rref(C.field, C.gen)[1]


def test_weight_of():
    F = field_new(7)
    C = random_code(7, 3, 12, 4)
    assert weight_of(C, [0, 0, 0]) == 0
    for i in range(3):
        e = [0] * 3
        e[i] = 1
        assert weight_of(C, e) == np.count_nonzero(C.gen[i])
    msg = [F(3), F(5), F(1)]
    direct = sum(1 for j in range(C.n) if sum((m * F.from_code(int(C.gen[i, j])) for i, m in enumerate(msg)), F.zero))
    assert weight_of(C, msg) == direct
    with pytest.raises(LengthMismatch):
        weight_of(C, [1, 2])


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_scalar_invariance(q):
    C = random_code(q, 3, 9, q)
    F = C.field
    for msg in itertools.product(range(q), repeat=3):
        w = weight_of(C, msg)
        for c in range(1, q):
            assert weight_of(C, [F.mul(c, x) for x in msg]) == w


@pytest.mark.parametrize("q,d,r", [(4, 3, 1), (4, 3, 2), (5, 3, 1), (7, 4, 1), (7, 5, 1), (4, 5, 2)])
def test_singleton_and_witness(q, d, r):
    C = build_code(SurfaceP3(fermat(field_from_q(q), d)), r)
    dist = min_distance_exhaustive(C)
    assert dist <= C.n - C.k + 1
    word = minimum_weight_word(C)
    assert np.count_nonzero(word) == dist
    assert rank(C.field, np.vstack([C.gen, word])) == C.k


def test_matrix_roundtrip():
    for q in (5, 9):
        C = random_code(q, 3, 10, q)
        text = format_matrix(C)
        assert text.splitlines()[0] == f"10 3 {q}"
        back = parse_matrix(text)
        assert back.field == C.field and np.array_equal(back.gen, C.gen)
    for mod in ([1, 1, 0, 1], [1, 0, 1, 1]):
        F = field_new(2, 3, mod)
        code = LinearCode(F, np.array([[1, 2, 3, 7]]))
        back = parse_matrix(format_matrix(code))
        assert back.field == F and np.array_equal(back.gen, code.gen)


def test_matrix_format_errors():
    with pytest.raises(FormatError):
        parse_matrix("3 1 4\n1 1\n")
    with pytest.raises(FormatError):
        parse_matrix("3 2 4\n1 1 1\n")
