"""Numeric intersection data of a surface and the point-count estimates built on it.

Everything here is exact integer arithmetic.  The hypothesis flags are
assertions made by the caller; nothing in this module tries to verify them.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from enum import Enum
from math import isqrt

from .errors import InvalidGenera, NegativeDefect, NonIntegralGenus


class CanonicalClass(str, Enum):
    NEF = "Nef"
    ANTI_STRICTLY_NEF = "AntiStrictlyNef"
    ANTI_NEF = "AntiNef"
    NONE = "None"


@dataclass(frozen=True)
class PicardOne:
    """NS(X) = Z·H0 for an ample generator; ``h`` relates a hyperplane class L = h·H0."""

    H_generates: bool = True
    h: int | None = None


@dataclass(frozen=True)
class FibrationData:
    g_B: int
    n_B: int
    pi0: int
    singular_fibers_irreducible: bool = False

    def __post_init__(self):
        if self.g_B < 0 or self.n_B < 0 or self.pi0 < 0:
            raise ValueError("fibration data must be nonnegative")


@dataclass(frozen=True)
class HypothesisFlags:
    canonical_class: CanonicalClass = CanonicalClass.NONE
    genus_floor_ell: int | None = None
    self_intersection_floor_beta: int | None = None
    picard_one: PicardOne | None = None
    fibration: FibrationData | None = None
    H_has_horizontal_component: bool = False
    # flag name -> "verified" | "derived" | "literature" | "asserted"
    provenance: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "canonical_class", CanonicalClass(self.canonical_class))
        if self.genus_floor_ell is not None and self.genus_floor_ell < 1:
            raise ValueError("genus floor ell must be >= 1")
        if self.self_intersection_floor_beta is not None and self.self_intersection_floor_beta < 0:
            raise ValueError("self-intersection floor beta must be >= 0")

    def source(self, flag: str) -> str:
        return self.provenance.get(flag, "asserted")


@dataclass(frozen=True)
class SurfaceInvariants:
    """q, H^2, H.K_X and #S plus the asserted hypotheses.

    ``p3_degree``/``p3_multiple`` are set for a degree-d surface in P^3 with
    H = a·L (L a hyperplane section) and unlock the P^3-specific bounds.
    """

    q: int
    H2: int
    HK: int
    n_points: int
    hypotheses: HypothesisFlags = field(default_factory=HypothesisFlags)
    p3_degree: int | None = None
    p3_multiple: int = 1

    def __post_init__(self):
        if self.q < 2:
            raise ValueError("q must be >= 2")
        if self.H2 < 1:
            raise ValueError("H^2 must be >= 1 for an ample H")
        if self.n_points < 0:
            raise ValueError("#S must be >= 0")

    @property
    def m(self) -> int:
        return floor_two_sqrt_q(self.q)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["hypotheses"]["canonical_class"] = self.hypotheses.canonical_class.value
        d["m"] = self.m
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> "SurfaceInvariants":
        d = dict(d)
        d.pop("m", None)
        d.pop("p_a", None)
        hyp = dict(d.pop("hypotheses", {}) or {})
        if hyp.get("picard_one") is not None:
            hyp["picard_one"] = PicardOne(**hyp["picard_one"])
        if hyp.get("fibration") is not None:
            hyp["fibration"] = FibrationData(**hyp["fibration"])
        return cls(hypotheses=HypothesisFlags(**hyp), **d)

    @classmethod
    def from_json(cls, text: str) -> "SurfaceInvariants":
        return cls.from_dict(json.loads(text))


def floor_two_sqrt_q(q: int) -> int:
    """m = floor(2 sqrt q), computed as isqrt(4q)."""
    return isqrt(4 * q)


def virtual_genus_of(self_int: int, dot_k: int) -> int:
    """Adjunction: pi_D = (D^2 + D.K)/2 + 1."""
    s = self_int + dot_k
    if s % 2:
        raise NonIntegralGenus(f"D^2 + D.K = {s} is odd; inconsistent intersection numbers")
    return s // 2 + 1


def virtual_genus(inv: SurfaceInvariants, r: int) -> int:
    if r < 1:
        raise ValueError("r must be >= 1")
    return virtual_genus_of(r * r * inv.H2, r * inv.HK)


def invariants_from_p3(d: int, a: int, q: int, n_points: int) -> SurfaceInvariants:
    """Degree-d smooth surface in P^3 with H = a·L: H^2 = a^2 d, H.K = a d (d-4)."""
    if d < 2 or a < 1:
        raise ValueError("need d >= 2 and a >= 1")
    # K_X = (d-4)L: anti-ample for d <= 3, zero or ample for d >= 4
    cc = CanonicalClass.ANTI_STRICTLY_NEF if d <= 3 else CanonicalClass.NEF
    flags = HypothesisFlags(canonical_class=cc, provenance={"canonical_class": "derived"})
    return SurfaceInvariants(
        q=q, H2=a * a * d, HK=a * d * (d - 4), n_points=n_points,
        hypotheses=flags, p3_degree=d, p3_multiple=a,
    )


def curve_point_upper_bound(pi: int, q: int, absolutely_irreducible: bool) -> int:
    """Upper bound on #D(F_q) for an F_q-irreducible curve of arithmetic genus pi."""
    if pi < 0:
        raise ValueError("arithmetic genus must be >= 0")
    weil = q + 1 + floor_two_sqrt_q(q) * pi
    return weil if absolutely_irreducible else min(pi + 1, weil)


def covering_deviation_bound(rbar: int, q: int, pi_D: int, g_C: int) -> int:
    """|#D(F_q) - #C(F_q)| bound for a cover D -> C with rbar geometric components."""
    if rbar < 1:
        raise ValueError("rbar must be >= 1")
    if pi_D < g_C:
        raise InvalidGenera(f"pi_D = {pi_D} < g_C = {g_C}")
    return (rbar - 1) * q + floor_two_sqrt_q(q) * (pi_D - g_C)


def defect(g_B: int, n_B: int, q: int) -> int:
    """q + 1 + m g_B - #B(F_q); negative values contradict the Weil bound."""
    if n_B < 0:
        raise ValueError("#B(F_q) must be >= 0")
    delta = q + 1 + floor_two_sqrt_q(q) * g_B - n_B
    if delta < 0:
        raise NegativeDefect(f"#B(F_q) = {n_B} exceeds q+1+m g_B for g_B = {g_B}, q = {q}")
    return delta
