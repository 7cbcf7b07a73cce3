"""Self-dual morphisms induced by endomorphisms of twistor space.

A point ``(chi, pi)`` of the alpha-plane bundle is sent to ``(xi, pi~)`` by
lifting it to a twistor ``z = (i chi pi, pi)`` with tangent
``z' = (i chi psi, psi)`` for any ``psi`` independent of ``pi``, pushing the
pair through the endomorphism and inverting the correspondence.  The result
does not depend on ``psi``.

Three evaluation paths are kept side by side:

* :func:`apply_f1`, the generic pipeline through jets;
* :func:`moebius_closed_form` and :func:`degree2_closed_form`, the
  simplified rational expressions;
* :func:`ratio_form`, the unsimplified quotient with an explicit ``psi``,
  written with epsilon contractions.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import spinors
from .correspondence import incidence_omega, kappa, kappa_inverse, normalize, split
from .curves import FPoint, NullCurve, make_tangent_family
from .endomorphisms import Degree1Map, Degree2Map, eval_map
from .errors import SingularCorrespondenceError, SingularDenominatorError, SingularImageError, TwistorError
from .jets import DEFAULT_ORDER, Jet
from .seeding import DEFAULT_SAMPLES


def default_psi(pi_lower) -> np.ndarray:
    """A spinor independent of ``pi``: its Hermitian complement, scaled to a
    unit largest component."""
    pi = np.asarray(pi_lower, dtype=complex)
    psi = np.array([-np.conj(pi[1]), np.conj(pi[0])])
    return psi / psi[np.argmax(np.abs(psi))]


def twistor_lift(p: FPoint, psi=None) -> Jet:
    """First-order twistor jet ``(z, z')`` of the alpha plane at ``p``."""
    psi = default_psi(p.pi) if psi is None else np.asarray(psi, dtype=complex)
    z = np.concatenate([incidence_omega(p.x, p.pi), p.pi])
    zdot = np.concatenate([incidence_omega(p.x, psi), psi])
    return Jet.linear(z, zdot)


def apply_f1(m, p: FPoint, psi=None) -> FPoint:
    """Image of an alpha-plane point under the morphism induced by ``m``."""
    y = eval_map(m, twistor_lift(p, psi))
    try:
        xi = kappa_inverse(y).value
    except SingularCorrespondenceError as exc:
        raise SingularImageError(str(exc)) from exc
    return FPoint(xi, normalize(y.value[2:]))


@dataclass
class CurveSample:
    s: complex
    xi: np.ndarray | None = None
    xi_dot: np.ndarray | None = None
    pi_tilde: np.ndarray | None = None
    null_residual: float | None = None
    alpha_residual: float | None = None
    error: str | None = None

    @property
    def ok(self) -> bool:
        return self.error is None


def _tangent_residuals(xi_dot, pi_tilde):
    n = np.linalg.norm(xi_dot)
    null = abs(spinors.det2(xi_dot)) / n ** 2
    alpha = np.linalg.norm(xi_dot @ pi_tilde) / (n * np.linalg.norm(pi_tilde))
    return float(null), float(alpha)


def image_jet(m, chi_jet: Jet):
    """Run a curve jet through the diagram; returns ``(xi_jet, y_jet)``."""
    y = eval_map(m, kappa(chi_jet))
    try:
        return kappa_inverse(y), y
    except SingularCorrespondenceError as exc:
        raise SingularImageError(str(exc)) from exc


def apply_to_curve(m, curve: NullCurve, samples=DEFAULT_SAMPLES, order: int = DEFAULT_ORDER) -> list[CurveSample]:
    """Sample the image curve ``kappa^-1 o m o kappa o chi``.

    Failures are recorded per sample rather than raised.
    """
    out = []
    for s in samples:
        rec = CurveSample(complex(s))
        try:
            xi, y = image_jet(m, curve.jet(s, order))
        except TwistorError as exc:
            rec.error = type(exc).__name__
            out.append(rec)
            continue
        rec.xi = xi.value
        rec.xi_dot = xi.derivative(1)
        rec.pi_tilde = y.value[2:]
        rec.null_residual, rec.alpha_residual = _tangent_residuals(rec.xi_dot, rec.pi_tilde)
        out.append(rec)
    return out


def moebius_closed_form(m: Degree1Map, chi) -> np.ndarray:
    """``i xi = (i A chi + B)(i C chi + D)^-1``."""
    A, B, C, D = m.blocks
    chi = np.asarray(chi, dtype=complex)
    G = 1j * A @ chi + B
    H = 1j * C @ chi + D
    try:
        Hinv = spinors.invert2x2(H)
    except spinors.SingularMatrixError as exc:
        raise SingularDenominatorError("i C chi + D is singular") from exc
    return -1j * G @ Hinv


def degree2_MN(m: Degree2Map, p: FPoint):
    """The matrices ``M^{AB'}`` and ``N_{A'}^{B'}`` of the quadratic case."""
    A, B, C, D, E, F = m.blocks
    chi, pi = p.x, p.pi

    def build(T1, T2, T3):
        return (np.einsum("cd,acb,be,d->ae", chi, T1, chi, pi)
                - 1j * np.einsum("cd,ace,d->ae", chi, T2, pi)
                - 1j * np.einsum("abd,be,d->ae", T2, chi, pi)
                - np.einsum("ade,d->ae", T3, pi))

    return build(A, B, C), build(D, E, F)


def degree2_closed_form(m: Degree2Map, p: FPoint) -> FPoint:
    """Closed form of the quadratic self-dual morphism, ``i xi = M N^-1``."""
    M, N = degree2_MN(m, p)
    try:
        Ninv = spinors.invert2x2(N)
    except spinors.SingularMatrixError as exc:
        raise SingularDenominatorError("N is singular") from exc
    xi = -1j * M @ Ninv
    y = m(np.concatenate([incidence_omega(p.x, p.pi), p.pi]))
    return FPoint(xi, normalize(y[2:]))


def ratio_form(G, H, pi_lower, psi_lower) -> np.ndarray:
    """Unsimplified quotient

        i xi^{AA'} = 2 G^{AB'} H^{A'C'} pi_[B' psi_C'] /
                     (eps^{D'E'} H_D'^F' H_E'^G' pi_F' psi_G')

    with ``H`` given with its first index down; it is raised here.
    """
    eps = spinors.EPS
    G = np.asarray(G, complex)
    H_low = np.asarray(H, complex)
    H_up = np.einsum("ab,bc->ac", eps, H_low)
    pi = np.asarray(pi_lower, complex)
    psi = np.asarray(psi_lower, complex)
    anti = np.outer(pi, psi) - np.outer(psi, pi)
    num = np.einsum("ab,ec,bc->ae", G, H_up, anti)
    den = np.einsum("de,df,eg,f,g->", eps, H_low, H_low, pi, psi)
    if abs(den) <= 1e-14 * max(1.0, np.linalg.norm(num)):
        raise SingularDenominatorError("ratio-form denominator vanishes")
    return -1j * num / den


def moebius_ratio_form(m: Degree1Map, p: FPoint, psi=None) -> np.ndarray:
    A, B, C, D = m.blocks
    psi = default_psi(p.pi) if psi is None else psi
    return ratio_form(1j * A @ p.x + B, 1j * C @ p.x + D, p.pi, psi)


def degree2_ratio_form(m: Degree2Map, p: FPoint, psi=None) -> np.ndarray:
    M, N = degree2_MN(m, p)
    psi = default_psi(p.pi) if psi is None else psi
    return ratio_form(M, N, p.pi, psi)


@dataclass
class LocalityReport:
    n_curves: int
    xi_spread: float
    pi_spread: float
    failures: int

    @property
    def spread(self) -> float:
        return max(self.xi_spread, self.pi_spread)


def _spread(images):
    xi0, pi0 = images[0]
    xs = max(np.linalg.norm(xi - xi0) / max(1.0, np.linalg.norm(xi0)) for xi, _ in images)
    ps = max(spinors.projective_distance(pi, pi0) for _, pi in images)
    return float(xs), float(ps)


def verify_locality_F(m, point: FPoint, n_curves: int = 8, seed=0, curves=None) -> LocalityReport:
    """Image point and alpha-tangent of ``n_curves`` curves alpha-tangent at
    ``point``; a local morphism gives zero spread."""
    curves = make_tangent_family(point, seed, n_curves) if curves is None else curves
    images, failures = [], 0
    for c in curves:
        try:
            xi, y = image_jet(m, c.jet(0.0, DEFAULT_ORDER))
        except TwistorError:
            failures += 1
            continue
        images.append((xi.value, y.value[2:]))
    if not images:
        return LocalityReport(len(curves), float("nan"), float("nan"), failures)
    return LocalityReport(len(curves), *_spread(images), failures)
