"""Two bounds that are computed in two variants, side by side.

1. The self-intersection floor: the Literal mode uses the trailing term
   (m/2) r sqrt(H^2/(2 beta)), the ProofDerived mode uses (m/2) r H.K.
2. The Picard-one bound for hypersurfaces: the closed formulas in degree d
   versus the general Picard-one bound specialised to H = L, which carries
   an extra factor m = floor(2 sqrt q).

Run:  python3 demos/03_bound_variants.py
"""

from surfcodes.bounds import bound_beta_floor, bound_p3_picard_one
from surfcodes.invariants import HypothesisFlags, SurfaceInvariants

print("self-intersection floor, quintic-like invariants H^2 = 5, H.K = 5, beta = 5")
print(" q   r   Literal   ProofDerived   psi maximised at")
for q in (4, 7, 9):
    inv = SurfaceInvariants(q, 5, 5, 400, HypothesisFlags(canonical_class="Nef", self_intersection_floor_beta=5))
    for r in (1, 2, 3):
        lit = bound_beta_floor(inv, r, "Literal")
        der = bound_beta_floor(inv, r, "ProofDerived")
        print(f"{q:2d}  {r:2d}  {lit.value:8d}  {der.value:13d}   {der.extras['max_at']}")

print("\nPicard one on a quartic with H = L, #S = 200")
print(" q   r   literal   general   branch")
for q in (4, 7, 9):
    for r in (1, 2, 3):
        rep = bound_p3_picard_one(4, 1, 4, q, 200, r)
        print(f"{q:2d}  {r:2d}  {rep.value:8d}  {rep.extras['general_value']:8d}   {rep.branch}")
