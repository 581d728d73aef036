from decimal import Decimal, getcontext
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from surfcodes.bounds import (
    REPORT_KEYS,
    bound_beta_floor,
    bound_d_star,
    bound_fibration,
    bound_fibration_irreducible_fibers,
    bound_genus_floor,
    bound_nef_family,
    bound_p3_basic,
    bound_p3_genus_floor,
    bound_p3_picard_one,
    bound_picard_one,
    d_star,
    dimension_lower_bound,
    evaluate_all,
    lemma_combiner,
)
from surfcodes.errors import EllTooSmall, HypothesisMissing, NegativeParameter, NonIntegral
from surfcodes.invariants import (
    FibrationData,
    HypothesisFlags,
    PicardOne,
    SurfaceInvariants,
    invariants_from_p3,
    virtual_genus,
)


def inv_with(q, H2, HK, n, **flags):
    return SurfaceInvariants(q=q, H2=H2, HK=HK, n_points=n, hypotheses=HypothesisFlags(**flags))


def test_lemma_combiner_examples():
    assert lemma_combiner(100, 3, 0, 1, 5, 4) == 73
    assert lemma_combiner(57, 0, 0, 0, 0, 3) == 57
    with pytest.raises(NegativeParameter):
        lemma_combiner(10, -1, 0, 0, 0, 2)


def test_d_star_examples():
    assert d_star(inv_with(4, 3, -3, 100), 1) == 73
    assert d_star(inv_with(2, 4, 0, 50), 1) == 26
    inv = inv_with(5, 4, 4, 0)
    n = 2 * 4 * (5 + 1 + 4) + 4 * (virtual_genus(inv, 2) - 1)
    assert d_star(inv_with(5, 4, 4, n), 2) == 0


def test_nef_family():
    cubic = invariants_from_p3(3, 1, 4, 100)
    rep = bound_nef_family(cubic, 1)
    assert rep.theorem_id == "AntiNefMain" and rep.value == 73
    quartic = invariants_from_p3(4, 1, 2, 50)
    rep = bound_nef_family(quartic, 1)
    assert rep.theorem_id == "NefMain" and rep.value == 26
    with pytest.raises(HypothesisMissing):
        bound_nef_family(inv_with(4, 20, 10, 100, canonical_class="AntiStrictlyNef"), 1)
    with pytest.raises(HypothesisMissing):
        bound_nef_family(inv_with(4, 4, 0, 100), 1)


def test_anti_nef_correction():
    # pi_H = (6 - 2)/2 + 1 = 3
    inv = inv_with(3, 6, -2, 500, canonical_class="AntiStrictlyNef")
    assert bound_nef_family(inv, 2).exact == d_star(inv, 2) + 3 * 2 * 2


def test_d_star_alone_needs_genus():
    inv = inv_with(3, 2, -2, 100, canonical_class="AntiStrictlyNef")
    assert virtual_genus(inv, 1) == 1
    assert bound_d_star(inv, 1).applicable
    with pytest.raises(HypothesisMissing):
        bound_d_star(inv_with(3, 2, -4, 100, canonical_class="AntiStrictlyNef"), 1)


def test_genus_floor_quintic():
    inv = inv_with(4, 5, 5, 200, genus_floor_ell=5)
    rep = bound_genus_floor(inv, 1)
    assert rep.exact - d_star(inv, 1) == 36
    assert rep.exact == 200 - 29
    p3 = bound_p3_genus_floor(5, 4, 200, 1)
    assert p3.exact == rep.exact


def test_genus_floor_boundary():
    # pi_{rH} - 1 = ell r H^2 makes the correction vanish
    inv = inv_with(3, 2, 2, 100, genus_floor_ell=1)
    assert virtual_genus(inv, 1) - 1 == 2
    assert bound_genus_floor(inv, 1).exact == d_star(inv, 1)


def test_picard_one_examples():
    inv = inv_with(4, 3, -3, 100, picard_one=PicardOne(True))
    r2 = bound_picard_one(inv, 2)
    assert r2.value == 79 and r2.branch.startswith("(i) r > T")
    r1 = bound_picard_one(inv, 1)
    assert r1.value == 91 and r1.branch == "(i) r <= T"
    with pytest.raises(HypothesisMissing):
        bound_picard_one(inv_with(4, 3, -3, 100), 1)


def test_picard_one_threshold_continuity():
    # q=2, m=2, H2=1: T = 5 exactly, and the two case-(i) formulas agree there
    inv = inv_with(2, 1, 1, 100, picard_one=PicardOne(True))
    at = bound_picard_one(inv, 5)
    assert at.branch == "(i) r <= T"
    high = 100 - (2 + 1 + 2 * virtual_genus(inv, 5))
    assert at.exact == high


def test_picard_one_case_two():
    inv = inv_with(2, 1, -5, 100, picard_one=PicardOne(True))
    # T - 3 = 2
    assert bound_picard_one(inv, 2).branch == "(ii) r <= T-3"
    rep = bound_picard_one(inv, 3)
    assert rep.branch == "(ii) r > T-3"
    assert rep.exact == 100 - 5 - Fraction(2 * 1 * 6, 2)


def test_beta_floor_endpoint_collapse():
    for cc in ("Nef", "AntiNef"):
        inv = inv_with(4, 4, 0, 100, canonical_class=cc, self_intersection_floor_beta=4)
        rep = bound_beta_floor(inv, 1, "ProofDerived")
        assert rep.extras["psi(1)"] == Fraction(4, 2) * 4 + 9
        assert rep.exact == 100 - 17


def test_beta_floor_modes_differ():
    inv = inv_with(5, 5, 5, 300, canonical_class="Nef", self_intersection_floor_beta=5)
    lit = bound_beta_floor(inv, 2, "Literal")
    der = bound_beta_floor(inv, 2, "ProofDerived")
    # extra terms: (m/2) r sqrt(1/2) versus (m/2) r HK
    assert der.exact - lit.exact == lit.extras["extra"] - der.extras["extra"]
    assert der.value < lit.value


def test_beta_floor_requirements():
    with pytest.raises(HypothesisMissing):
        bound_beta_floor(inv_with(4, 4, 0, 100, canonical_class="Nef"), 1)
    with pytest.raises(HypothesisMissing):
        bound_beta_floor(inv_with(4, 4, 0, 100, canonical_class="Nef", self_intersection_floor_beta=5), 1)
    with pytest.raises(HypothesisMissing):
        bound_beta_floor(inv_with(4, 4, 0, 100, self_intersection_floor_beta=2), 1)


def _beta_decimal(q, H2, HK, n, beta, r, nef, literal):
    getcontext().prec = 80
    m = Decimal(int(Decimal(4 * q).sqrt()))
    sH, sb = Decimal(H2).sqrt(), Decimal(beta).sqrt()

    def psi(k):
        phi = (k - 1) * beta + (r * sH - (k - 1) * sb) ** 2
        return m / 2 * phi + k * (q + 1 + m)

    top = max(psi(Decimal(1)), psi(r * (Decimal(H2) / beta).sqrt()))
    extra = Decimal(0)
    if nef:
        extra = m / 2 * r * (Decimal(H2) / (2 * beta)).sqrt() if literal else m / 2 * r * HK
    return n - top - extra


@settings(max_examples=150, deadline=None)
@given(
    st.sampled_from([2, 3, 4, 5, 7, 8, 9, 11, 13]),
    st.integers(1, 30),
    st.integers(0, 20),
    st.integers(1, 6),
    st.booleans(),
    st.booleans(),
    st.data(),
)
def test_beta_floor_matches_high_precision(q, H2, HK, r, nef, literal, data):
    beta = data.draw(st.integers(1, H2))
    if (H2 + HK) % 2:
        HK += 1
    if not nef:
        HK = -HK
    inv = inv_with(q, H2, HK, 10 ** 6, canonical_class="Nef" if nef else "AntiNef",
                   self_intersection_floor_beta=beta)
    rep = bound_beta_floor(inv, r, "Literal" if literal else "ProofDerived")
    approx = _beta_decimal(q, H2, HK, 10 ** 6, beta, r, nef, literal)
    assert abs(float(rep.exact) - float(approx)) < 1e-6
    assert rep.value == int(approx.to_integral_value(rounding="ROUND_FLOOR"))


def test_fibration():
    fib = FibrationData(g_B=1, n_B=5, pi0=3)
    inv = inv_with(4, 4, 4, 300, canonical_class="Nef", fibration=fib, H_has_horizontal_component=True)
    assert bound_fibration(inv, 1).exact == d_star(inv, 1) + 4
    p1 = inv_with(4, 4, 4, 300, canonical_class="Nef", fibration=FibrationData(0, 5, 3),
                  H_has_horizontal_component=True)
    assert bound_fibration(p1, 1).exact == d_star(p1, 1)
    with pytest.raises(HypothesisMissing):
        bound_fibration(inv_with(4, 4, 4, 300, canonical_class="Nef", fibration=fib), 1)


def test_fibration_irreducible_fibers():
    fib = FibrationData(g_B=2, n_B=3, pi0=2, singular_fibers_irreducible=True)
    inv = inv_with(4, 4, 4, 300, fibration=fib, H_has_horizontal_component=True, genus_floor_ell=1)
    rep = bound_fibration_irreducible_fibers(inv, 2)
    assert rep.extras["ell"] == 1
    assert rep.exact == bound_genus_floor(inv, 2).exact + (4 + 1 + 4 * 2 - 3)
    bad = inv_with(4, 4, 4, 300, fibration=FibrationData(2, 3, 1, True), H_has_horizontal_component=True)
    with pytest.raises(EllTooSmall):
        bound_fibration_irreducible_fibers(bad, 1)


def test_p3_basic():
    assert bound_p3_basic(4, 1, 2, 50, 1).value == 26
    cubic = bound_p3_basic(3, 1, 4, 100, 2)
    assert cubic.exact == d_star(invariants_from_p3(3, 1, 4, 100), 2)
    assert bound_p3_basic(5, 1, 3, 300, 1).extras["via"] == "NefMain"


def test_p3_genus_floor():
    q, m = 3, 3
    rep = bound_p3_genus_floor(4, q, 100, 1)
    base = 100 - 4 * (q + 1 + m) - m * 4 * 1 // 2
    assert rep.exact == base + 3 * (q + 1 + m)
    d = 6
    r0 = d * (d - 3) - (d - 4)
    zero = bound_p3_genus_floor(d, q, 10 ** 6, r0)
    assert zero.exact == 10 ** 6 - r0 * d * (q + 1 + m) - Fraction(m * r0 * d * (r0 + d - 4), 2)
    with pytest.raises(HypothesisMissing):
        bound_p3_genus_floor(3, q, 100, 1)


def test_p3_picard_one():
    rep = bound_p3_picard_one(4, 1, 4, 4, 200, 2)
    assert rep.branch == "r > T"
    assert rep.exact == 200 - 9 - 8
    assert rep.extras["general_exact"] == 200 - 41
    low = bound_p3_picard_one(4, 1, 4, 4, 200, 1)
    assert low.branch == "r <= T"
    with pytest.raises(HypothesisMissing):
        bound_p3_picard_one(4, 2, 4, 4, 200, 1)


def test_dimension_lower_bound():
    assert dimension_lower_bound(3, -3, 0) == 4
    assert dimension_lower_bound(4, 0, 1) == 4
    assert dimension_lower_bound(0, 0, 0) == 1
    with pytest.raises(NonIntegral):
        dimension_lower_bound(3, 0, 0)


def test_clamping():
    rep = bound_nef_family(inv_with(7, 1, 1, 3, canonical_class="Nef"), 1)
    assert rep.value <= 3
    # case (ii) with m H^2 > q+1+m gives #S + 1
    inv = inv_with(2, 3, -11, 4, picard_one=PicardOne(True))
    rep = bound_picard_one(inv, 1)
    assert rep.exact == 5 and rep.value == 4 and rep.degenerate


def test_evaluate_all_keys_and_applicability():
    inv = invariants_from_p3(4, 1, 5, 120)
    reps = evaluate_all(inv, 2)
    assert [r.key for r in reps] == list(REPORT_KEYS)
    by = {r.key: r for r in reps}
    assert by["NefMain"].applicable and not by["AntiNefMain"].applicable
    assert by["P3Basic"].value == by["NefMain"].value
    assert not by["PicardOne"].applicable and by["PicardOne"].reason
    assert by["DimensionLB"].value == 10
    for r in reps:
        assert (r.value is not None) == r.applicable
        if r.applicable:
            assert r.value <= inv.n_points


@settings(max_examples=100, deadline=None)
@given(st.sampled_from([2, 3, 4, 5, 7, 8, 9]), st.integers(1, 40), st.integers(-40, 40), st.integers(1, 5),
       st.integers(0, 5000))
def test_combiner_reproduces_d_star(q, H2, HK, r, n):
    if (H2 + HK) % 2:
        HK += 1
    inv = inv_with(q, H2, HK, n)
    pi = virtual_genus(inv, r)
    if pi < 1:
        return
    assert lemma_combiner(n, r * H2, pi - 1, 1, q + 1, inv.m) == d_star(inv, r)
