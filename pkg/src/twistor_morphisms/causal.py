"""Causal morphisms through the biquaternion projective line.

A point of BP^1 is a pair ``[b0, b1]`` of 2x2 complex matrices modulo
``(b0, b1) ~ (b0 u, b1 u)``.  A null direction at ``x`` is encoded by an
alpha-plane through ``b0`` (twistor ``z = (omega, pi)``) and a beta-plane
through ``b1`` (dual twistor ``w = (lam, mu)``); in the patch where ``b1`` is
invertible the two planes meet along

    v = (x lam^) (x) (pi^ b1^-1),      x = b0 b1^-1.

Under the right action the plane data move as
``(omega, pi) -> (omega, u^-1 pi)`` and ``(lam, mu) -> (lam, mu u)``, which
leaves ``x`` and the direction of ``v`` unchanged.  An
:class:`~twistor_morphisms.endomorphisms.InvariantCausalMap` is blind to the
action, so running each slot through the (anti-)self-dual construction gives
a well-defined map on null directions.

Conventions: ``pi`` and ``lam`` are stored with lower indices, ``mu`` with an
upper index; ``^`` above marks a raised copy.  Inverses of ``b`` are plain
matrix inverses in the fixed coordinate frame.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import jets as J
from . import spinors
from .correspondence import (
    beta_incidence,
    dual_kappa_inverse,
    incidence_omega,
    kappa,
    kappa_inverse,
    lambda_inverse,
    split,
)
from .curves import GPoint, NullCurve, make_tangent_family
from .endomorphisms import InvariantCausalMap, eval_invariant_map, eval_map
from .errors import (
    DegenerateTangentError,
    SingularBasePointError,
    SingularCorrespondenceError,
    SingularImageError,
    SingularMatrixError,
    SingularPatchError,
    TwistorError,
)
from .jets import DEFAULT_ORDER, Jet, eval_poly_curve, inv2, jet_einsum
from .seeding import DEFAULT_SAMPLES, as_rng, complex_normal
from .selfdual import default_psi

DEGENERATE_RTOL = 1e-12


@dataclass(frozen=True)
class BP1Point:
    b0: np.ndarray
    b1: np.ndarray

    def __post_init__(self):
        b0 = np.asarray(self.b0, dtype=complex).reshape(2, 2)
        b1 = np.asarray(self.b1, dtype=complex).reshape(2, 2)
        if not (_invertible(b0) or _invertible(b1)):
            raise SingularPatchError("a point of BP^1 needs at least one invertible coordinate")
        object.__setattr__(self, "b0", b0)
        object.__setattr__(self, "b1", b1)

    def right_act(self, u) -> BP1Point:
        u = np.asarray(u, dtype=complex)
        return BP1Point(self.b0 @ u, self.b1 @ u)


@dataclass(frozen=True)
class PlanePairLift:
    """Alpha-plane twistor ``z`` through ``b0`` and beta-plane dual twistor
    ``w`` through ``b1``."""

    z: np.ndarray
    w: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "z", np.asarray(self.z, dtype=complex).reshape(4))
        object.__setattr__(self, "w", np.asarray(self.w, dtype=complex).reshape(4))

    @property
    def omega(self):
        return self.z[:2]

    @property
    def pi(self):
        return self.z[2:]

    @property
    def lam(self):
        return self.w[:2]

    @property
    def mu(self):
        return self.w[2:]

    def right_act(self, u) -> PlanePairLift:
        u = np.asarray(u, dtype=complex)
        return PlanePairLift(np.concatenate([self.omega, np.linalg.solve(u, self.pi)]),
                             np.concatenate([self.lam, self.mu @ u]))

    def incidence_residual(self, p: BP1Point) -> float:
        """Largest relative violation of ``omega = i b0 pi`` and
        ``mu = -i lam b1``."""
        r1 = np.linalg.norm(self.omega - incidence_omega(p.b0, self.pi))
        r2 = np.linalg.norm(self.mu - beta_incidence(self.lam, p.b1))
        scale = max(1.0, np.linalg.norm(self.z), np.linalg.norm(self.w))
        return float(max(r1, r2) / scale)


def _invertible(b) -> bool:
    return abs(spinors.det2(b)) > spinors.SINGULAR_RTOL * max(1.0, np.sum(np.abs(b) ** 2))


def _inv(b, exc):
    try:
        return spinors.invert2x2(b)
    except SingularMatrixError as e:
        raise exc(str(e)) from e


def patch_coordinates(p: BP1Point, patch: str = "U1") -> np.ndarray:
    """``x = b0 b1^-1`` in ``U1`` or ``x = b1 b0^-1`` in ``U0``."""
    if patch == "U1":
        return p.b0 @ _inv(p.b1, SingularPatchError)
    if patch == "U0":
        return p.b1 @ _inv(p.b0, SingularPatchError)
    raise ValueError(f"unknown patch {patch!r}")


def lift_g_point(g: GPoint) -> tuple[BP1Point, PlanePairLift]:
    """Canonical lift ``(b0, b1) = (x, I)`` of a null direction at ``x``."""
    if not _invertible(g.x):
        raise SingularBasePointError("lift needs an invertible base point x")
    a, p = spinors.null_factorize(g.v)
    pi = spinors.lower_index(p)
    lam_up = np.linalg.solve(g.x, a)
    lam_up = lam_up / lam_up[np.argmax(np.abs(lam_up))]
    lam = spinors.lower_index(lam_up)
    b1 = np.eye(2, dtype=complex)
    z = np.concatenate([incidence_omega(g.x, pi), pi])
    w = np.concatenate([lam, beta_incidence(lam, b1)])
    return BP1Point(g.x, b1), PlanePairLift(z, w)


def null_direction(p: BP1Point, lift: PlanePairLift, patch: str = "U1") -> np.ndarray:
    """Intersection direction of the two planes in patch coordinates."""
    lam_up = spinors.raise_index(lift.lam)
    pi_up = spinors.raise_index(lift.pi)
    if patch == "U1":
        x = patch_coordinates(p, "U1")
        unprimed = x @ lam_up
        primed = _inv(p.b1, SingularPatchError).T @ pi_up
    elif patch == "U0":
        unprimed = lam_up
        primed = _inv(p.b0, SingularPatchError).T @ pi_up
    else:
        raise ValueError(f"unknown patch {patch!r}")
    scale = max(1.0, np.linalg.norm(lift.z), np.linalg.norm(lift.w))
    if np.linalg.norm(unprimed) <= DEGENERATE_RTOL * scale or np.linalg.norm(primed) <= DEGENERATE_RTOL * scale:
        raise DegenerateTangentError("alpha and beta planes do not meet in a line")
    return np.outer(unprimed, primed)


def extract_g_point(p: BP1Point, lift: PlanePairLift, patch: str = "U1") -> GPoint:
    return GPoint(patch_coordinates(p, patch), null_direction(p, lift, patch))


def beta_plane_point(p: BP1Point, lift: PlanePairLift, delta, h: float) -> np.ndarray:
    """Exact ``U1`` image of the beta-plane point ``b1 + h lam^ (x) delta``."""
    lam_up = spinors.raise_index(lift.lam)
    b1 = p.b1 + h * np.outer(lam_up, delta)
    return p.b0 @ _inv(b1, SingularPatchError)


def beta_plane_first_order(p: BP1Point, lift: PlanePairLift, delta, h: float) -> np.ndarray:
    """First-order approximation ``x - h (x lam^)(delta b1^-1)`` of
    :func:`beta_plane_point`."""
    x = patch_coordinates(p, "U1")
    lam_up = spinors.raise_index(lift.lam)
    b1inv = _inv(p.b1, SingularPatchError)
    return x - h * np.outer(x @ lam_up, np.asarray(delta) @ b1inv)


# the morphism ---------------------------------------------------------------

def _as_jet(a):
    return a if isinstance(a, Jet) else Jet.constant(a, 0)


def causal_closed_form(m: InvariantCausalMap, b0, b1, pi, lam):
    """Image ``(b0~, b1~, pi~, lam~)`` from the closed expressions

        i b0~ = (i (A.lam) b0 + B mu)(i (C.lam) b0 + D mu)^-1
        -i b1~^T = (G.omega - i H (b1 pi)^T)(E.omega - i F (b1 pi)^T)^-1

    with ``omega = i b0 pi`` and ``mu = -i lam b1``.  Inputs may be arrays or
    jets (then so are the outputs).
    """
    jet_in = any(isinstance(a, Jet) for a in (b0, b1, pi, lam))
    b0, b1, pi, lam = (_as_jet(a) for a in (b0, b1, pi, lam))
    order = max(a.order for a in (b0, b1, pi, lam))
    b0, b1, pi, lam = (a if a.order == order else Jet.constant(a.value, order) for a in (b0, b1, pi, lam))
    omega = incidence_omega(b0, pi)
    mu = beta_incidence(lam, b1)

    G = 1j * jet_einsum("abc,c,bd->ad", m.A, lam, b0) + jet_einsum("a,b->ab", m.B, mu)
    H = 1j * jet_einsum("abc,c,bd->ad", m.C, lam, b0) + jet_einsum("a,b->ab", m.D, mu)
    b0_new = -1j * (G @ _jet_inv(H))

    b1pi = jet_einsum("ab,b->a", b1, pi)
    X = jet_einsum("abc,b->ac", m.E, omega) - 1j * jet_einsum("a,c->ac", m.F, b1pi)
    Y = jet_einsum("abc,b->ac", m.G, omega) - 1j * jet_einsum("a,c->ac", m.H, b1pi)
    b1_new = 1j * (Y @ _jet_inv(X)).apply(lambda c: np.swapaxes(c, -1, -2))

    mp = jet_einsum("a,a->", mu, pi)
    pi_new = jet_einsum("abc,b,c->a", m.C, omega, lam) + jet_einsum("a,->a", m.D, mp)
    lam_new = jet_einsum("abc,b,c->a", m.E, omega, lam) + jet_einsum("a,->a", m.F, mp)
    out = (b0_new, b1_new, pi_new, lam_new)
    return out if jet_in else tuple(o.value for o in out)


def _jet_inv(h: Jet) -> Jet:
    if not _invertible(h.value):
        raise SingularImageError("denominator matrix of the causal map is singular")
    return inv2(h)


def apply_causal(m: InvariantCausalMap, g: GPoint, closed_form: bool = True) -> GPoint:
    """Image of a null direction under the causal morphism of ``m``.

    ``closed_form=False`` runs the slot-by-slot route instead: evaluate the
    invariant map on first-order jets of each plane and invert the twistor
    and dual-twistor correspondences separately.
    """
    p, lift = lift_g_point(g)
    return apply_causal_lift(m, p, lift, closed_form)


def apply_causal_lift(m: InvariantCausalMap, p: BP1Point, lift: PlanePairLift,
                      closed_form: bool = True) -> GPoint:
    """As :func:`apply_causal`, starting from any lift ``(p, lift)``."""
    if closed_form:
        b0n, b1n, pin, lamn = causal_closed_form(m, p.b0, p.b1, lift.pi, lift.lam)
        z_new = np.concatenate([incidence_omega(b0n, pin), pin])
        w_new = np.concatenate([lamn, beta_incidence(lamn, b1n)])
        eval_invariant_map(m, lift.z, lift.w)  # degeneracy check only
    else:
        b0n, b1n, z_new, w_new = _slotwise(m, p, lift)
    try:
        return extract_g_point(BP1Point(b0n, b1n), PlanePairLift(z_new, w_new), "U1")
    except SingularPatchError as exc:
        raise SingularImageError(str(exc)) from exc


def _slotwise(m: InvariantCausalMap, p: BP1Point, lift: PlanePairLift):
    psi = default_psi(lift.pi)
    z_jet = Jet.linear(lift.z, np.concatenate([incidence_omega(p.b0, psi), psi]))
    z_img, _ = eval_invariant_map(m, z_jet, Jet.constant(lift.w, 1))
    phi = default_psi(lift.lam)
    w_jet = Jet.linear(lift.w, np.concatenate([phi, beta_incidence(phi, p.b1)]))
    _, w_img = eval_invariant_map(m, Jet.constant(lift.z, 1), w_jet)
    try:
        b0n = kappa_inverse(z_img).value
        b1n = dual_kappa_inverse(w_img).value
    except SingularCorrespondenceError as exc:
        raise SingularImageError(str(exc)) from exc
    return b0n, b1n, z_img.value, w_img.value


@dataclass
class CausalSample:
    s: complex
    xi: np.ndarray | None = None
    xi_dot: np.ndarray | None = None
    v: np.ndarray | None = None
    null_residual: float | None = None
    consistency_residual: float | None = None
    error: str | None = None

    @property
    def ok(self) -> bool:
        return self.error is None


def causal_image_jet(m: InvariantCausalMap, curve: NullCurve, s0, order: int = 2):
    """Image curve of ``curve`` near ``s0`` as a jet, together with the image
    null direction at ``s0``."""
    x = curve.jet(s0, order)
    a = eval_poly_curve(curve.lam, s0, order)
    p = eval_poly_curve(curve.pi, s0, order)
    if not _invertible(x.value):
        raise SingularBasePointError("curve passes through a non-invertible point")
    lam_low = (inv2(x) @ a).apply(spinors.lower_index)
    pi_low = p.apply(spinors.lower_index)
    b1 = Jet.constant(np.eye(2), order)
    b0n, b1n, pin, lamn = causal_closed_form(m, x, b1, pi_low, lam_low)
    xi = b0n @ _jet_inv(b1n)
    img = BP1Point(b0n.value, b1n.value)
    lift = PlanePairLift(np.concatenate([incidence_omega(b0n.value, pin.value), pin.value]),
                         np.concatenate([lamn.value, beta_incidence(lamn.value, b1n.value)]))
    return xi, null_direction(img, lift, "U1")


def apply_causal_to_curve(m: InvariantCausalMap, curve: NullCurve, samples=DEFAULT_SAMPLES) -> list[CausalSample]:
    """Sampled image curve with the tangent-consistency residual
    ``dist(d xi / ds, v~)`` at each sample."""
    out = []
    for s in samples:
        rec = CausalSample(complex(s))
        try:
            xi, v = causal_image_jet(m, curve, s)
        except TwistorError as exc:
            rec.error = type(exc).__name__
            out.append(rec)
            continue
        rec.xi, rec.xi_dot, rec.v = xi.value, xi.derivative(1), v
        n = np.linalg.norm(rec.xi_dot)
        rec.null_residual = float(abs(spinors.det2(rec.xi_dot)) / n ** 2)
        rec.consistency_residual = spinors.projective_distance(rec.xi_dot, v)
        out.append(rec)
    return out


# the naive construction -----------------------------------------------------

def naive_image_direction(m, curve: NullCurve, s0=0.0):
    """Image point and null direction of ``kappa^-1 o m o kappa`` on
    ``curve`` at ``s0``, the direction built from the recovered ``lam``."""
    y = eval_map(m, kappa(curve.jet(s0, DEFAULT_ORDER)))
    try:
        xi = kappa_inverse(y.truncate(1)).value
        lam = lambda_inverse(y, xi)
    except SingularCorrespondenceError as exc:
        raise SingularImageError(str(exc)) from exc
    return xi, np.outer(lam, spinors.raise_index(y.value[2:]))


@dataclass
class NonlocalityReport:
    direction_distance: float
    point_gap: float
    one_jet_gap: float
    condition: float


CONDITION_MIN = 1e-2


def image_condition(m, curve: NullCurve, s0=0.0) -> float:
    """Relative size of ``pi~_C pi~'^C`` for the image twistor curve; small
    values mean the inverse correspondence is close to singular."""
    y = eval_map(m, kappa(curve.jet(s0, 2)))
    pi, dpi = y.value[2:], y.derivative(1)[2:]
    den = np.linalg.norm(pi) * np.linalg.norm(dpi)
    return float(abs(spinors.bracket(spinors.raise_index(pi), spinors.raise_index(dpi))) / den) if den else 0.0


def demonstrate_nonlocality(m, seed, curves=None, max_tries: int = 20) -> NonlocalityReport:
    """Push two null curves with the same 1-jet at ``s = 0`` through the naive
    diagram and compare the image null directions.

    Generated pairs are redrawn until both image twistor curves have
    :func:`image_condition` at least ``CONDITION_MIN``, so that rounding is
    not amplified by a nearly singular inverse correspondence.
    """
    if curves is None:
        rng = as_rng(seed)
        for _ in range(max_tries):
            x = complex_normal(rng, (2, 2))
            v = np.outer(complex_normal(rng, 2), complex_normal(rng, 2))
            curves = make_tangent_family(GPoint(x, v), rng, 2)
            if min(image_condition(m, c) for c in curves) >= CONDITION_MIN:
                break
        else:
            raise SingularImageError("no well-conditioned curve pair found")
    a, b = curves
    one_jet = spinors.projective_distance(a.tangent(0.0), b.tangent(0.0))
    xa, va = naive_image_direction(m, a)
    xb, vb = naive_image_direction(m, b)
    gap = float(np.linalg.norm(xa - xb) / max(1.0, np.linalg.norm(xa)))
    cond = min(image_condition(m, c) for c in curves)
    return NonlocalityReport(spinors.projective_distance(va, vb), gap, one_jet, cond)
