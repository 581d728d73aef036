"""Lower bounds on the minimum distance d(X, rH, S) and on the code dimension.

Each ``bound_*`` function returns a :class:`BoundReport` or raises
:class:`HypothesisMissing` when the flags it needs are absent or
contradict the intersection numbers.  :func:`evaluate_all` runs every bound
on one instance and turns those errors into non-applicable reports.

All arithmetic is exact (Fractions, or :class:`Surd` for the
self-intersection bound); reported values are floors of the exact bound,
clamped to #S.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from math import comb
from typing import Iterable

from .errors import EllTooSmall, HypothesisMissing, NegativeParameter, NonIntegral
from .invariants import (
    CanonicalClass,
    PicardOne,
    SurfaceInvariants,
    defect,
    invariants_from_p3,
    virtual_genus,
)
from .surds import Surd, exact_floor, smax

THEOREM_IDS = (
    "DStar", "NefMain", "AntiNefMain", "GenusFloor", "PicardOne", "BetaFloor",
    "FibrationNef", "FibrationIrredFibers", "P3Basic", "P3GenusFloor", "P3PicardOne",
    "DimensionLB",
)

BETA_MODES = ("ProofDerived", "Literal")

# column keys produced by evaluate_all, in output order
REPORT_KEYS = (
    "DStar", "NefMain", "AntiNefMain", "GenusFloor", "PicardOne",
    "BetaFloor[ProofDerived]", "BetaFloor[Literal]", "FibrationNef", "FibrationIrredFibers",
    "P3Basic", "P3GenusFloor", "P3PicardOne", "DimensionLB",
)


@dataclass
class BoundReport:
    theorem_id: str
    applicable: bool
    reason: str = ""
    value: int | None = None
    exact: Fraction | Surd | None = None
    branch: str | None = None
    assumptions_used: tuple[str, ...] = ()
    degenerate: bool = False
    mode: str | None = None
    extras: dict = field(default_factory=dict)

    @property
    def key(self) -> str:
        return f"{self.theorem_id}[{self.mode}]" if self.mode else self.theorem_id

    def to_dict(self) -> dict:
        return {
            "theorem_id": self.theorem_id,
            "key": self.key,
            "applicable": self.applicable,
            "reason": self.reason,
            "value": self.value,
            "exact": None if self.exact is None else str(self.exact),
            "branch": self.branch,
            "assumptions_used": list(self.assumptions_used),
            "degenerate": self.degenerate,
            "mode": self.mode,
            "extras": {k: (str(v) if isinstance(v, (Fraction, Surd)) else v) for k, v in self.extras.items()},
        }


def _report(theorem_id: str, n_points: int, exact, *, branch=None, assumptions=(), mode=None,
            extras=None) -> BoundReport:
    value = exact_floor(exact)
    degenerate = value > n_points
    return BoundReport(
        theorem_id=theorem_id,
        applicable=True,
        reason="ok",
        value=min(value, n_points),
        exact=exact,
        branch=branch,
        assumptions_used=tuple(assumptions),
        degenerate=degenerate,
        mode=mode,
        extras=extras or {},
    )


def _not_applicable(theorem_id: str, reason: str, mode: str | None = None) -> BoundReport:
    return BoundReport(theorem_id=theorem_id, applicable=False, reason=reason, mode=mode)


# -- building blocks -------------------------------------------------------

def lemma_combiner(n_points: int, a, b1, b2, c, m: int) -> Fraction:
    """#S - a(c + m b2) - m b1, given k <= a, sum pi_i <= b1 + k b2, #D_i <= c + m pi_i."""
    a, b1, b2, c = (Fraction(x) for x in (a, b1, b2, c))
    if min(a, b1, b2, c) < 0:
        raise NegativeParameter("combiner parameters must be nonnegative")
    return n_points - a * (c + m * b2) - m * b1


def d_star(inv: SurfaceInvariants, r: int) -> Fraction:
    q, m = inv.q, inv.m
    return Fraction(inv.n_points - r * inv.H2 * (q + 1 + m) - m * (virtual_genus(inv, r) - 1))


def _genus_floor_gain(inv: SurfaceInvariants, r: int, ell: int) -> Fraction:
    return (r * inv.H2 - Fraction(virtual_genus(inv, r) - 1, ell)) * (inv.q + 1 + inv.m)


def _check_nef_consistency(inv: SurfaceInvariants) -> CanonicalClass:
    cc = inv.hypotheses.canonical_class
    if cc == CanonicalClass.NEF and inv.HK < 0:
        raise HypothesisMissing(f"K_X nef forces H.K_X >= 0, got {inv.HK}")
    if cc == CanonicalClass.ANTI_STRICTLY_NEF and inv.HK >= 0:
        raise HypothesisMissing(f"-K_X strictly nef forces H.K_X < 0, got {inv.HK}")
    if cc == CanonicalClass.ANTI_NEF and inv.HK > 0:
        raise HypothesisMissing(f"-K_X nef forces H.K_X <= 0, got {inv.HK}")
    return cc


# -- surface-family bounds -------------------------------------------------

def bound_d_star(inv: SurfaceInvariants, r: int) -> BoundReport:
    """d* on its own: a valid bound when K nef, or -K strictly nef with pi_H >= 1."""
    cc = _check_nef_consistency(inv)
    if cc == CanonicalClass.NEF:
        branch = "nef"
    elif cc == CanonicalClass.ANTI_STRICTLY_NEF and virtual_genus(inv, 1) >= 1:
        branch = "anti-strictly-nef, pi_H >= 1"
    else:
        raise HypothesisMissing("d* alone needs K nef, or -K strictly nef with pi_H >= 1")
    return _report("DStar", inv.n_points, d_star(inv, r), branch=branch, assumptions=("canonical_class",))


def bound_nef_family(inv: SurfaceInvariants, r: int) -> BoundReport:
    cc = _check_nef_consistency(inv)
    if cc == CanonicalClass.NEF:
        return _report("NefMain", inv.n_points, d_star(inv, r), branch="(i) K nef",
                       assumptions=("canonical_class",))
    if cc == CanonicalClass.ANTI_STRICTLY_NEF:
        gain = inv.m * r * (virtual_genus(inv, 1) - 1)
        return _report("AntiNefMain", inv.n_points, d_star(inv, r) + gain,
                       branch="(ii) -K strictly nef", assumptions=("canonical_class",))
    raise HypothesisMissing("needs canonical_class Nef or AntiStrictlyNef")


def bound_genus_floor(inv: SurfaceInvariants, r: int) -> BoundReport:
    ell = inv.hypotheses.genus_floor_ell
    if ell is None:
        raise HypothesisMissing("genus_floor_ell not set")
    exact = d_star(inv, r) + _genus_floor_gain(inv, r, ell)
    return _report("GenusFloor", inv.n_points, exact, assumptions=("genus_floor_ell",),
                   extras={"ell": ell})


def _picard_threshold(inv: SurfaceInvariants) -> Fraction:
    return Fraction(2 * (inv.q + 1 + inv.m), inv.m * inv.H2)


def bound_picard_one(inv: SurfaceInvariants, r: int) -> BoundReport:
    pic = inv.hypotheses.picard_one
    if pic is None or not pic.H_generates:
        raise HypothesisMissing("needs picard_one with H generating NS(X)")
    q, m, H2, n = inv.q, inv.m, inv.H2, inv.n_points
    T = _picard_threshold(inv)
    if 3 * H2 + inv.HK >= 0:
        if r > T:
            exact, branch = n - (q + 1 + m * virtual_genus(inv, r)), "(i) r > T"
        else:
            exact, branch = n - r * (q + 1 + m * virtual_genus(inv, 1)), "(i) r <= T"
    else:
        if r > T - 3:
            exact, branch = n - (q + 1 + m) - Fraction(m * H2 * (r * r - 3), 2), "(ii) r > T-3"
        else:
            exact, branch = n - r * (q + 1 + m - m * H2), "(ii) r <= T-3"
    return _report("PicardOne", n, Fraction(exact), branch=branch, assumptions=("picard_one",),
                   extras={"threshold": T})


def beta_phi(k: Surd, r: int, H2: int, beta: int) -> Surd:
    """(k-1) beta + (r sqrt(H^2) - (k-1) sqrt(beta))^2."""
    k = Surd.of(k)
    inner = r * Surd.sqrt(H2) - (k - 1) * Surd.sqrt(beta)
    return (k - 1) * beta + inner * inner


def beta_psi(k: Surd, r: int, inv: SurfaceInvariants, beta: int) -> Surd:
    return Fraction(inv.m, 2) * beta_phi(k, r, inv.H2, beta) + Surd.of(k) * (inv.q + 1 + inv.m)


def bound_beta_floor(inv: SurfaceInvariants, r: int, mode: str = "ProofDerived") -> BoundReport:
    """Self-intersection floor bound.

    ``Literal`` subtracts (m/2) r sqrt(H^2/(2 beta)) in the nef case;
    ``ProofDerived`` subtracts (m/2) r H.K, the term the argument yields.
    """
    if mode not in BETA_MODES:
        raise ValueError(f"mode must be one of {BETA_MODES}")
    beta = inv.hypotheses.self_intersection_floor_beta
    if beta is None or beta < 1:
        raise HypothesisMissing("needs self_intersection_floor_beta >= 1")
    if beta > inv.H2:
        raise HypothesisMissing(f"beta = {beta} exceeds H^2 = {inv.H2}; H itself violates the floor")
    cc = _check_nef_consistency(inv)
    if cc not in (CanonicalClass.NEF, CanonicalClass.ANTI_NEF, CanonicalClass.ANTI_STRICTLY_NEF):
        raise HypothesisMissing("needs K nef or -K nef")
    k_max = r * Surd.sqrt(Fraction(inv.H2, beta))
    psi1 = beta_psi(Surd.of(1), r, inv, beta)
    psik = beta_psi(k_max, r, inv, beta)
    top = smax(psi1, psik)
    m = inv.m
    if cc == CanonicalClass.NEF:
        if mode == "Literal":
            extra = Fraction(m, 2) * r * Surd.sqrt(Fraction(inv.H2, 2 * beta))
        else:
            extra = Surd.of(Fraction(m * r * inv.HK, 2))
        branch = "K nef"
    else:
        extra = Surd.of(0)
        branch = "-K nef"
    exact = inv.n_points - top - extra
    return _report(
        "BetaFloor", inv.n_points, exact, branch=branch,
        assumptions=("self_intersection_floor_beta", "canonical_class"), mode=mode,
        extras={"psi(1)": psi1, "psi(k_max)": psik, "k_max": k_max, "extra": extra,
                "max_at": "k=1" if top is psi1 else "k=k_max"},
    )


def _fibration(inv: SurfaceInvariants):
    fib = inv.hypotheses.fibration
    if fib is None:
        raise HypothesisMissing("fibration data not set")
    if not inv.hypotheses.H_has_horizontal_component:
        raise HypothesisMissing("H must have a horizontal component")
    return fib


def bound_fibration(inv: SurfaceInvariants, r: int) -> BoundReport:
    fib = _fibration(inv)
    if _check_nef_consistency(inv) != CanonicalClass.NEF:
        raise HypothesisMissing("needs K_X nef")
    delta = defect(fib.g_B, fib.n_B, inv.q)
    return _report("FibrationNef", inv.n_points, d_star(inv, r) + delta,
                   assumptions=("canonical_class", "fibration", "H_has_horizontal_component"),
                   extras={"defect": delta})


def bound_fibration_irreducible_fibers(inv: SurfaceInvariants, r: int) -> BoundReport:
    fib = _fibration(inv)
    if not fib.singular_fibers_irreducible:
        raise HypothesisMissing("singular fibers must be F_q-irreducible")
    ell = min(fib.pi0, fib.g_B) - 1
    if ell < 1:
        raise EllTooSmall(f"min(pi0, g_B) - 1 = {ell} < 1")
    delta = defect(fib.g_B, fib.n_B, inv.q)
    exact = d_star(inv, r) + _genus_floor_gain(inv, r, ell) + delta
    return _report("FibrationIrredFibers", inv.n_points, exact,
                   assumptions=("fibration", "H_has_horizontal_component"),
                   extras={"defect": delta, "ell": ell})


# -- surfaces in P^3 -------------------------------------------------------

def bound_p3_basic(d: int, a: int, q: int, n_points: int, r: int) -> BoundReport:
    if d < 3:
        raise HypothesisMissing("needs a surface of degree d >= 3")
    rep = bound_nef_family(invariants_from_p3(d, a, q, n_points), r)
    return replace(rep, theorem_id="P3Basic", assumptions_used=("degree",),
                   extras={"via": rep.theorem_id})


def bound_p3_genus_floor(d: int, q: int, n_points: int, r: int) -> BoundReport:
    """NS(X) = Z·L; uses the closed form with d*(X, rL, S, L)."""
    if d < 4:
        raise HypothesisMissing("needs d >= 4")
    m = invariants_from_p3(d, 1, q, n_points).m
    base = Fraction(n_points - r * d * (q + 1 + m)) - Fraction(m * r * d * (r + d - 4), 2)
    gain = r * d * (1 - Fraction(r + d - 4, d * (d - 3))) * (q + 1 + m)
    return _report("P3GenusFloor", n_points, base + gain, assumptions=("picard_one",),
                   extras={"ell": d * (d - 3) // 2})


def bound_p3_picard_one(d: int, h: int, H2: int, q: int, n_points: int, r: int) -> BoundReport:
    """Printed two-branch formula; ``extras`` carries the general Picard-one value."""
    if d < 4 or h < 1:
        raise HypothesisMissing("needs d >= 4 and h >= 1")
    if h * h * H2 != d:
        raise HypothesisMissing(f"L = hH needs h^2 H^2 = d, got {h}^2*{H2} != {d}")
    inv = SurfaceInvariants(
        q=q, H2=H2, HK=h * (d - 4) * H2, n_points=n_points,
        hypotheses=_picard_flags(h),
    )
    m = inv.m
    T = _picard_threshold(inv)
    if r > T:
        exact = n_points - (q + 1 + m) - Fraction(r * H2 * (r + h * (d - 4)), 2)
        branch = "r > T"
    else:
        exact = n_points - r * (q + 1 + m) - Fraction(r * H2 * (1 + h * (d - 4)), 2)
        branch = "r <= T"
    general = bound_picard_one(inv, r)
    return _report("P3PicardOne", n_points, Fraction(exact), branch=branch, assumptions=("picard_one",),
                   extras={"threshold": T, "general_value": general.value, "general_exact": general.exact,
                           "general_branch": general.branch})


def _picard_flags(h: int):
    from .invariants import HypothesisFlags

    return HypothesisFlags(canonical_class=CanonicalClass.NONE, picard_one=PicardOne(True, h))


def dimension_lower_bound(G_self: int, G_dot_K: int, p_a: int) -> int:
    """Riemann-Roch: dim >= G.(G-K)/2 + 1 + p_a, given ev injective and K.A < G.A."""
    s = G_self - G_dot_K
    if s % 2:
        raise NonIntegral(f"G^2 - G.K = {s} is odd")
    return s // 2 + 1 + p_a


def p3_arithmetic_genus(d: int) -> int:
    return comb(d - 1, 3)


# -- everything at once ----------------------------------------------------

def _attempt(theorem_id: str, fn, *args, mode=None) -> BoundReport:
    try:
        return fn(*args)
    except (HypothesisMissing, EllTooSmall) as exc:
        return _not_applicable(theorem_id, str(exc), mode=mode)


def evaluate_all(inv: SurfaceInvariants, r: int, p_a: int | None = None,
                 beta_modes: Iterable[str] = BETA_MODES) -> list[BoundReport]:
    """One report per key in REPORT_KEYS (BetaFloor once per requested mode)."""
    hyp = inv.hypotheses
    out = [_attempt("DStar", bound_d_star, inv, r)]
    fam = _attempt("NefMain", bound_nef_family, inv, r)
    if fam.applicable:
        other = "AntiNefMain" if fam.theorem_id == "NefMain" else "NefMain"
        pair = {fam.theorem_id: fam, other: _not_applicable(other, f"canonical class is {hyp.canonical_class.value}")}
    else:
        pair = {"NefMain": fam, "AntiNefMain": _not_applicable("AntiNefMain", fam.reason)}
    out += [pair["NefMain"], pair["AntiNefMain"]]
    out.append(_attempt("GenusFloor", bound_genus_floor, inv, r))
    out.append(_attempt("PicardOne", bound_picard_one, inv, r))
    for mode in BETA_MODES:
        if mode in beta_modes:
            out.append(_attempt("BetaFloor", bound_beta_floor, inv, r, mode, mode=mode))
    out.append(_attempt("FibrationNef", bound_fibration, inv, r))
    out.append(_attempt("FibrationIrredFibers", bound_fibration_irreducible_fibers, inv, r))

    d = inv.p3_degree
    if d is None:
        for tid in ("P3Basic", "P3GenusFloor", "P3PicardOne"):
            out.append(_not_applicable(tid, "not a surface in P^3"))
    else:
        a = inv.p3_multiple
        out.append(_attempt("P3Basic", bound_p3_basic, d, a, inv.q, inv.n_points, r))
        pic = hyp.picard_one
        if pic is not None and pic.H_generates and (pic.h or 1) == 1 and a == 1:
            out.append(_attempt("P3GenusFloor", bound_p3_genus_floor, d, inv.q, inv.n_points, r))
        else:
            out.append(_not_applicable("P3GenusFloor", "NS(X) = Z·L not asserted for H = L"))
        if pic is not None and pic.H_generates and pic.h is not None:
            out.append(_attempt("P3PicardOne", bound_p3_picard_one, d, pic.h, inv.H2, inv.q, inv.n_points, r))
        else:
            out.append(_not_applicable("P3PicardOne", "picard_one with h not asserted"))
        if p_a is None:
            p_a = p3_arithmetic_genus(d)

    if p_a is None:
        out.append(_not_applicable("DimensionLB", "arithmetic genus p_a unknown"))
    elif not inv.HK < r * inv.H2:
        out.append(_not_applicable("DimensionLB", "K.H < rH.H fails"))
    else:
        lb = dimension_lower_bound(r * r * inv.H2, r * inv.HK, p_a)
        out.append(BoundReport("DimensionLB", True, "ok; assumes ev injective", value=lb, exact=Fraction(lb),
                               assumptions_used=("ev_injective",), extras={"p_a": p_a}))
    return out
