"""The correspondence between null curves in C^4 and curves in twistor space.

Twistors are 4-vectors ``z = (omega^A, pi_A')`` and dual twistors
``w = (lam_A, mu^A')``; both are handled as jets of shape ``(4,)`` so that a
curve in (dual) twistor space carries its derivatives along.

``kappa`` sends the jet of a null curve ``chi(s)`` to the jet of the
alpha-plane through ``chi(s)`` containing ``chi'(s)``:

    omega = i chi pi,     chi' pi = 0.

``kappa_inverse`` recovers the curve from a twistor curve,

    i chi^{AA'} = (omega^A pi'^{A'} - omega'^A pi^{A'}) / (pi_C' pi'^C'),

and ``lambda_inverse`` recovers the unprimed tangent factor, which needs the
second derivative of the twistor curve.  The ``dual_*`` functions are the
beta-plane mirror used by the causal construction.
"""

from __future__ import annotations

import numpy as np

from . import jets as J
from . import spinors
from .errors import (
    InsufficientJetOrderError,
    NotNullTangentError,
    SingularCorrespondenceError,
    SingularTangentError,
)
from .jets import Jet, jet_einsum

SINGULAR_RTOL = 1e-10
TANGENT_ATOL = 1e-14


def twistor(omega, pi) -> np.ndarray:
    return np.concatenate([np.asarray(omega, complex), np.asarray(pi, complex)])


def split(z):
    """``(omega, pi)`` halves of a twistor array or jet."""
    if isinstance(z, Jet):
        return z[0:2], z[2:4]
    z = np.asarray(z)
    return z[..., 0:2], z[..., 2:4]


def normalize(z):
    """Scale so the largest-modulus component of the value is 1."""
    v = z.value if isinstance(z, Jet) else np.asarray(z)
    flat = np.ravel(v)
    return z / flat[np.argmax(np.abs(flat))]


def _check_tangent(chi_jet: Jet) -> Jet:
    if chi_jet.order < 1:
        raise InsufficientJetOrderError("a curve jet of order >= 1 is needed for its tangent")
    tangent = chi_jet.differentiate()
    t0 = tangent.value
    if np.linalg.norm(t0) <= TANGENT_ATOL * max(1.0, np.linalg.norm(chi_jet.value)):
        raise SingularTangentError("curve tangent vanishes at the expansion point")
    if not spinors.is_null(t0):
        raise NotNullTangentError(f"curve tangent is not null: |det| = {abs(spinors.det2(t0)):.3e}")
    return tangent


def incidence_omega(chi, pi_lower):
    """``omega^A = i chi^{AA'} pi_A'`` for arrays or jets."""
    if isinstance(chi, Jet) or isinstance(pi_lower, Jet):
        return 1j * jet_einsum("ab,b->a", chi, pi_lower)
    return 1j * (np.asarray(chi) @ np.asarray(pi_lower))


def kappa(chi_jet: Jet) -> Jet:
    """Twistor curve of a null curve; the output jet is one order lower.

    The primed factor of the tangent is read off the row of ``chi'`` with the
    larger norm at the expansion point, and that same row is used for every
    Taylor coefficient so the factor stays holomorphic in ``s``.
    """
    tangent = _check_tangent(chi_jet)
    t0 = tangent.value
    row = int(np.argmax(np.sum(np.abs(t0) ** 2, axis=1)))
    pi_up = tangent[row]
    pi_up = pi_up / pi_up.value[np.argmax(np.abs(pi_up.value))]
    pi_low = pi_up.apply(spinors.lower_index)
    chi = chi_jet.truncate(tangent.order)
    omega = incidence_omega(chi, pi_low)
    return normalize(J.concatenate([omega, pi_low]))


def _pi_pair(pi_low: Jet) -> tuple[Jet, Jet, Jet]:
    """``pi`` and ``pi'`` raised, plus the pairing ``pi_C' pi'^C'``."""
    dpi_up = pi_low.differentiate().apply(spinors.raise_index)
    pi_low = pi_low.truncate(dpi_up.order)
    denom = jet_einsum("a,a->", pi_low, dpi_up)
    scale = np.linalg.norm(pi_low.value) * np.linalg.norm(dpi_up.value)
    if abs(denom.value) <= SINGULAR_RTOL * scale or scale == 0.0:
        raise SingularCorrespondenceError(
            f"pi_C' pi'^C' = {abs(denom.value):.3e} vanishes; the curve is singular for the correspondence")
    return pi_low.apply(spinors.raise_index), dpi_up, denom


def kappa_inverse(z_jet: Jet) -> Jet:
    """Null curve (as a jet, one order lower) of a twistor curve."""
    if z_jet.order < 1:
        raise InsufficientJetOrderError("a twistor jet of order >= 1 is needed")
    omega, pi_low = split(z_jet)
    pi_up, dpi_up, denom = _pi_pair(pi_low)
    d_omega = omega.differentiate()
    omega = omega.truncate(d_omega.order)
    num = jet_einsum("a,b->ab", omega, dpi_up) - jet_einsum("a,b->ab", d_omega, pi_up)
    return -1j * num * denom.reciprocal()


def lambda_inverse(z_jet: Jet, chi=None) -> np.ndarray:
    """Unprimed tangent factor ``lam^A`` (upper index) at the expansion point.

    With the twistor's own scaling, ``chi'(s0) = lam (x) pi^`` exactly.
    """
    if z_jet.order < 2:
        raise InsufficientJetOrderError("lambda recovery needs second derivatives of the twistor curve")
    omega, pi_low = split(z_jet)
    _, _, denom = _pi_pair(pi_low.truncate(1))
    if chi is None:
        chi = kappa_inverse(z_jet.truncate(1)).value
    chi = np.asarray(chi, complex)
    num = 1j * chi @ pi_low.derivative(2) - omega.derivative(2)
    return -1j * num / denom.value


def beta_incidence(lam_lower, b):
    """``mu^{A'} = -i lam_A b^{AA'}``."""
    if isinstance(lam_lower, Jet) or isinstance(b, Jet):
        return -1j * jet_einsum("a,ab->b", lam_lower, b)
    return -1j * (np.asarray(lam_lower, complex) @ np.asarray(b, complex))


def dual_kappa(chi_jet: Jet) -> Jet:
    """Dual twistor curve ``(lam_A, mu^A')`` of the beta-planes containing a
    null curve; the unprimed factor is read off the dominant column."""
    tangent = _check_tangent(chi_jet)
    t0 = tangent.value
    col = int(np.argmax(np.sum(np.abs(t0) ** 2, axis=0)))
    lam_up = tangent[:, col]
    lam_up = lam_up / lam_up.value[np.argmax(np.abs(lam_up.value))]
    lam_low = lam_up.apply(spinors.lower_index)
    chi = chi_jet.truncate(tangent.order)
    return normalize(J.concatenate([lam_low, beta_incidence(lam_low, chi)]))


def dual_kappa_inverse(w_jet: Jet) -> Jet:
    """Inverse of :func:`dual_kappa`:

    ``-i b^{AA'} = (lam^A mu'^{A'} - lam'^A mu^{A'}) / (lam'_C lam^C)``.
    """
    if w_jet.order < 1:
        raise InsufficientJetOrderError("a dual twistor jet of order >= 1 is needed")
    lam_low, mu = split(w_jet)
    dlam_low = lam_low.differentiate()
    lam_low = lam_low.truncate(dlam_low.order)
    lam_up = lam_low.apply(spinors.raise_index)
    denom = jet_einsum("a,a->", dlam_low, lam_up)
    scale = np.linalg.norm(lam_low.value) * np.linalg.norm(dlam_low.value)
    if abs(denom.value) <= SINGULAR_RTOL * scale or scale == 0.0:
        raise SingularCorrespondenceError("lam'_C lam^C vanishes; dual correspondence is singular")
    dmu = mu.differentiate()
    mu = mu.truncate(dmu.order)
    num = jet_einsum("a,b->ab", lam_up, dmu) - jet_einsum("a,b->ab", dlam_low.apply(spinors.raise_index), mu)
    return 1j * num * denom.reciprocal()
