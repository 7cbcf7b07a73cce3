# Self-dual morphisms from linear and quadratic maps of twistor space.
import numpy as np

from twistor_morphisms import FPoint, apply_f1, random_map, random_null_curve, verify_locality_F
from twistor_morphisms.selfdual import (
    apply_to_curve,
    degree2_closed_form,
    degree2_ratio_form,
    moebius_closed_form,
)

rng = np.random.default_rng(4)
p = FPoint(rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2)), [1.0, 0.5j])

# Linear maps: a Moebius transformation of 2x2 matrices, blind to pi
m1 = random_map("degree1", 2)
xi = apply_f1(m1, p).x
print("pipeline vs Moebius form:", np.abs(xi - moebius_closed_form(m1, p.x)).max())
print("changing pi moves xi by  :", np.abs(apply_f1(m1, FPoint(p.x, [0.2, 1])).x - xi).max())

# Quadratic maps: the image point now depends on pi
m2 = random_map("degree2", 2)
img = apply_f1(m2, p)
print("pipeline vs closed form  :", np.abs(img.x - degree2_closed_form(m2, p).x).max())
print("pipeline vs ratio form   :", np.abs(img.x - degree2_ratio_form(m2, p)).max())
print("changing pi moves xi by  :", np.abs(apply_f1(m2, FPoint(p.x, [0.2, 1])).x - img.x).max())

# Locality: alpha-tangent curves through p have the same image point
rep = verify_locality_F(m2, p, n_curves=8, seed=0)
print("locality spread over 8 curves:", rep.spread)

# image curves stay null and tangent to their alpha planes
recs = apply_to_curve(m2, random_null_curve(3, (2, 2)))
print("worst |det xi'| / |xi'|^2:", max(r.null_residual for r in recs))
