"""Spinor identities used when simplifying the self-dual and BP^1 formulas.

All are stated in the package convention ``eps_01 = eps^01 = 1`` with
``k^A = eps^AB k_B`` and ``k_B = k^A eps_AB``.  Each function returns the
largest absolute residual, relative to the natural scale of its inputs.
"""

import numpy as np

from .jets import Jet, inv2
from .spinors import EPS, lower_index, raise_index


def antisymmetrization_residual(pi_lower, psi_lower) -> float:
    """``2 pi_[B psi_C] = (pi_D psi^D) eps_BC``."""
    pi, psi = np.asarray(pi_lower, complex), np.asarray(psi_lower, complex)
    lhs = np.outer(pi, psi) - np.outer(psi, pi)
    rhs = (pi @ raise_index(psi)) * EPS
    return float(np.max(np.abs(lhs - rhs)) / max(1.0, np.linalg.norm(pi) * np.linalg.norm(psi)))


def determinant_residual(H) -> float:
    """``2 det(H^B_D) = eps_BC eps^DE H^B_D H^C_E``."""
    H = np.asarray(H, complex)
    full = np.einsum("bc,de,bd,ce->", EPS, EPS, H, H)
    return float(abs(2.0 * np.linalg.det(H) - full) / max(1.0, np.sum(np.abs(H) ** 2)))


def seesaw_transpose(H) -> np.ndarray:
    """``H_B^A = eps_BC eps^AD H^C_D``, returned as the matrix ``[A, B]``."""
    return np.einsum("bc,ad,cd->ab", EPS, EPS, np.asarray(H, complex))


def inverse_residual(H) -> float:
    """``(H^-1)^A_B = H_B^A / det(H)``."""
    H = np.asarray(H, complex)
    inv = np.linalg.inv(H)
    pred = seesaw_transpose(H) / np.linalg.det(H)
    return float(np.max(np.abs(inv - pred)) / max(1.0, np.max(np.abs(inv))))


def inverse_differential_residual(b, db) -> float:
    """``d(b^-1) = -b^-1 db b^-1``, with the left side from jet arithmetic."""
    b, db = np.asarray(b, complex), np.asarray(db, complex)
    jet = inv2(Jet(np.stack([b, db])))
    binv = np.linalg.inv(b)
    pred = -binv @ db @ binv
    return float(np.max(np.abs(jet.derivative(1) - pred)) / max(1.0, np.max(np.abs(pred))))


def seesaw_residual(k) -> float:
    """``raise o lower = lower o raise = id`` and ``a_A b^A = -a^A b_A``."""
    k = np.asarray(k, complex)
    r1 = np.max(np.abs(raise_index(lower_index(k)) - k))
    r2 = np.max(np.abs(lower_index(raise_index(k)) - k))
    b = k[::-1] + 1.0
    r3 = abs(k @ raise_index(b) + raise_index(k) @ b)
    return float(max(r1, r2, r3) / max(1.0, np.linalg.norm(k) ** 2))
