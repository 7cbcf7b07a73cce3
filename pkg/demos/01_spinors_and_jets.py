# Two-spinor basics and jets.
# Run with:  python3 demos/01_spinors_and_jets.py
import numpy as np

from twistor_morphisms import spinors
from twistor_morphisms.jets import Jet, inv2

# Index gymnastics use eps_01 = eps^01 = 1. Raising then lowering is exact.
k = np.array([2.0 + 1j, -0.5])
print("k_A           ", k)
print("k^A           ", spinors.raise_index(k))
print("lower(raise k)", spinors.lower_index(spinors.raise_index(k)))

# A null vector is a rank-one 2x2 matrix and factors as lam (x) pi
v = np.outer([1.0, 2j], [0.5, -1.0])
lam, pi = spinors.null_factorize(v)
print("det v =", spinors.det2(v), " factors:", lam, pi)

# Jets carry Taylor coefficients; arithmetic is exact up to the truncation order
s = Jet.variable(0.5, order=3)
f = (s * s + 1) / (s - 2)
print("f(0.5), f', f'' =", f.value, f.derivative(1), f.derivative(2))

# Matrix inverse of a curve of matrices, with d(b^-1) = -b^-1 db b^-1
b = Jet(np.array([[[2, 1], [0, 1]], [[0, 1], [1, 0]]], dtype=complex))
print("d(b^-1) from jets:\n", inv2(b).derivative(1))
b0inv = np.linalg.inv(b.value)
print("-b^-1 db b^-1:\n", -b0inv @ b.coeffs[1] @ b0inv)
