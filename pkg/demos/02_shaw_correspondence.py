# A null curve, its twistor curve, and back again.
import numpy as np

from twistor_morphisms import kappa, kappa_inverse, lambda_inverse, random_null_curve, spinors
from twistor_morphisms.curves import NullCurve
from twistor_morphisms.errors import SingularCorrespondenceError

curve = random_null_curve(seed=1, degree_bounds=(2, 1))
s0 = 0.3 - 0.2j
chi = curve.jet(s0, order=3)

z = kappa(chi)
print("twistor (omega, pi) at s0:", np.round(z.value, 4))

back = kappa_inverse(z)
print("round trip error, point     :", np.abs(back.value - chi.value).max())
print("round trip error, derivative:", np.abs(back.derivative(1) - chi.derivative(1)).max())

# second derivatives of the twistor curve give back the other tangent factor
lam = lambda_inverse(z)
print("lam (x) pi^ - chi':", np.abs(np.outer(lam, spinors.raise_index(z.value[2:])) - curve.tangent(s0)).max())

# straight null lines (constant pi) all sit inside one alpha plane
line = NullCurve(np.eye(2), [[1, 0], [0, 1]], [[1, 2j]])
try:
    kappa_inverse(kappa(line.jet(0.0, 3)))
except SingularCorrespondenceError as exc:
    print("constant pi:", exc)
