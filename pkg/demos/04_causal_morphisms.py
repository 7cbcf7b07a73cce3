# Null directions on BP^1 and the invariant causal map.
# The map is well defined on null directions, but the tangents of image
# curves are not along the output direction (see the last block).
import numpy as np

from twistor_morphisms import GPoint, apply_causal, lift_g_point, random_map, random_null_curve, spinors
from twistor_morphisms.causal import (
    apply_causal_lift,
    apply_causal_to_curve,
    beta_plane_first_order,
    beta_plane_point,
    extract_g_point,
)

rng = np.random.default_rng(7)
g = GPoint(rng.standard_normal((2, 2)) + 0.3j, np.outer([1.0, 2j], [1.0, -0.5]))

p, lift = lift_g_point(g)
print("lift incidence residual:", lift.incidence_residual(p))
print("recovered direction    :", spinors.projective_distance(extract_g_point(p, lift).v, g.v))

# beta-plane points are curved in U1; the first-order chart is O(h^2) accurate
delta = np.array([0.3, 1.0 + 1j])
for h in (1e-1, 5e-2, 2.5e-2):
    err = np.linalg.norm(beta_plane_point(p, lift, delta, h) - beta_plane_first_order(p, lift, delta, h))
    print(f"h = {h:<7} chart error {err:.3e}")

m = random_map("invariant", 3)
a = apply_causal(m, g)
b = apply_causal(m, g, closed_form=False)
print("closed form vs slot-by-slot:", np.abs(a.x - b.x).max(), spinors.projective_distance(a.v, b.v))

u = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
c = apply_causal_lift(m, p.right_act(u), lift.right_act(u))
print("other representative       :", np.abs(a.x - c.x).max(), spinors.projective_distance(a.v, c.v))

# Along a curve the image tangent is neither null nor along the output direction
for rec in apply_causal_to_curve(m, random_null_curve(5, (1, 1)))[:4]:
    print(f"s = {rec.s:.2f}: null residual {rec.null_residual:.2e}, dist(xi', v~) {rec.consistency_residual:.2e}")
