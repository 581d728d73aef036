"""Finite fields, rational points and the Weil bound.

Run:  python3 demos/01_fields_and_points.py
"""

from math import isqrt

from surfcodes.gf import field_from_q, field_new
from surfcodes.projective import (
    PlaneCurveSpec,
    check_smoothness,
    count_points_plane_curve,
    fermat,
    parse_polynomial_expr,
    rational_points,
)

# F_9 = F_3[t]/(modulus); elements print as polynomials in t.
F9 = field_from_q(9)
a = F9.gen
print(F9.header, "primitive element:", F9.code_text(F9.primitive))
print("t^4 =", a ** 4, "   (t+1)^-1 =", (a + 1).inverse())

# Over F_2 every x satisfies x^3 = x, so the Fermat cubic is just the plane x0+x1+x2+x3 = 0.
F2 = field_new(2)
pts = rational_points(fermat(F2, 3))
print("\nFermat cubic over F_2:", len(pts), "points:", " ".join(map(str, pts)))
print("smoothness:", check_smoothness(fermat(F2, 3)))

# Over F_3 the partial derivatives 3 x_i^2 vanish identically.
print("Fermat cubic over F_3:", check_smoothness(fermat(field_new(3), 3)))

# Smooth plane curves of genus g have |#C - (q+1)| <= floor(2 sqrt q) g.
print("\n q  curve                         #C   q+1  m*g")
for q, expr in [(4, "x0^3 + x1^3 + x2^3"), (7, "x0^4 + x1^4 + x2^4"), (9, "x0^4 + x1^4 + x2^4"),
                (2, "x0^3*x1 + x1^3*x2 + x2^3*x0")]:
    C = PlaneCurveSpec(parse_polynomial_expr(field_from_q(q), expr, 3))
    print(f"{q:2d}  {expr:28s} {count_points_plane_curve(C):4d}  {q + 1:4d}  {isqrt(4 * q) * C.genus:3d}")
