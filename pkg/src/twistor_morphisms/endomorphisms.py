"""Homogeneous polynomial self-maps of C^4 and the invariant pair maps.

A :class:`Degree1Map` is a 4x4 matrix acting on ``z = (omega, pi)``; a
:class:`Degree2Map` is four symmetric quadratic forms ``y_i = z^T Q_i z``
whose first two are the ``F^A`` and last two the ``G_A'`` of the block
notation.  Both descend to endomorphisms of CP^3 when the only common zero
is the origin.

:class:`InvariantCausalMap` acts on pairs of a twistor and a dual twistor and
is built only from ``omega``, ``lam`` and ``mu . pi``, which are unchanged by
the right action ``(omega, pi) -> (omega, u^-1 pi)``,
``(lam, mu) -> (lam, mu u)``.  Its tensors contract against the stored
components of ``lam``.

Every evaluator accepts plain arrays or jets.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize

from . import jets as J
from .correspondence import split
from .errors import DegenerateImageError, GenerationExhaustedError, ZeroVectorError
from .jets import Jet, jet_einsum
from .seeding import as_rng, complex_normal

DEGENERATE_RTOL = 1e-12
BASE_POINT_THRESHOLD = 1e-6


def _value(z):
    return z.value if isinstance(z, Jet) else np.asarray(z)


@dataclass(frozen=True)
class Degree1Map:
    F: np.ndarray
    degree: int = field(default=1, init=False)

    def __post_init__(self):
        object.__setattr__(self, "F", np.asarray(self.F, dtype=complex).reshape(4, 4))

    @classmethod
    def from_blocks(cls, A=None, B=None, C=None, D=None) -> Degree1Map:
        eye, zero = np.eye(2), np.zeros((2, 2))
        A = eye if A is None else A
        B = zero if B is None else B
        C = zero if C is None else C
        D = eye if D is None else D
        return cls(np.block([[np.asarray(A), np.asarray(B)], [np.asarray(C), np.asarray(D)]]))

    @classmethod
    def identity(cls) -> Degree1Map:
        return cls(np.eye(4))

    @property
    def blocks(self):
        F = self.F
        return F[:2, :2], F[:2, 2:], F[2:, :2], F[2:, 2:]

    def __call__(self, z):
        if isinstance(z, Jet):
            return z.apply(lambda c: c @ self.F.T)
        return self.F @ np.asarray(z, dtype=complex)

    def compose(self, other: Degree1Map) -> Degree1Map:
        """``self o other``."""
        return Degree1Map(self.F @ other.F)


@dataclass(frozen=True)
class Degree2Map:
    F_tensors: np.ndarray
    G_tensors: np.ndarray
    degree: int = field(default=2, init=False)

    def __post_init__(self):
        for name in ("F_tensors", "G_tensors"):
            t = np.asarray(getattr(self, name), dtype=complex).reshape(2, 4, 4)
            object.__setattr__(self, name, 0.5 * (t + np.swapaxes(t, -1, -2)))

    @classmethod
    def from_forms(cls, Q) -> Degree2Map:
        Q = np.asarray(Q, dtype=complex).reshape(4, 4, 4)
        return cls(Q[:2], Q[2:])

    @property
    def forms(self) -> np.ndarray:
        return np.concatenate([self.F_tensors, self.G_tensors])

    @property
    def blocks(self):
        """``(A, B, C, D, E, F)``: each of shape ``(2, 2, 2)``, leading index
        the output component, in the block layout

            F^A = [[A^A, B^A], [B^A^T, C^A]],  G_A' = [[D_A', E_A'], [E_A'^T, F_A']].
        """
        Ft, Gt = self.F_tensors, self.G_tensors
        return (Ft[:, :2, :2], Ft[:, :2, 2:], Ft[:, 2:, 2:],
                Gt[:, :2, :2], Gt[:, :2, 2:], Gt[:, 2:, 2:])

    def __call__(self, z):
        if isinstance(z, Jet):
            return jet_einsum("iab,a,b->i", self.forms, z, z)
        z = np.asarray(z, dtype=complex)
        return np.einsum("iab,a,b->i", self.forms, z, z)

    def derivative(self, z, zdot) -> np.ndarray:
        """``2 (z^T F z', z^T G z')``."""
        return 2.0 * np.einsum("iab,a,b->i", self.forms, z, zdot)


def eval_map(m, z):
    """Evaluate a homogeneous map on a 4-vector or a twistor jet."""
    if not np.any(_value(z)):
        raise ZeroVectorError("endomorphisms are undefined at the origin")
    return m(z)


@dataclass
class BasePointReport:
    passed: bool
    min_ratio: float
    candidate: np.ndarray | None
    method: str


def check_base_point_free(m, trials: int = 64, seed=0, threshold: float = BASE_POINT_THRESHOLD,
                          refine: int = 4) -> BasePointReport:
    """Whether ``m^-1(0) = {0}``: exact for degree 1, sampled for degree 2.

    For degree 2 the smallest ``|m(z)| / |z|^2`` over ``trials`` random unit
    vectors is reported, after polishing the ``refine`` best samples with a
    local minimizer on the sphere.
    """
    if isinstance(m, Degree1Map):
        s = np.linalg.svd(m.F, compute_uv=False)
        ratio = float(s[-1] / max(s[0], 1e-300))
        return BasePointReport(ratio > threshold, ratio, None, "singular-values")
    rng = as_rng(seed)
    zs = complex_normal(rng, (trials, 4))
    zs /= np.linalg.norm(zs, axis=1, keepdims=True)
    ratios = np.array([np.linalg.norm(m(z)) for z in zs])
    order = np.argsort(ratios)

    def objective(x):
        z = x[:4] + 1j * x[4:]
        n2 = np.vdot(z, z).real
        return np.vdot(m(z), m(z)).real / max(n2 * n2, 1e-300)

    best, best_z = float(ratios[order[0]]), zs[order[0]]
    for i in order[:refine]:
        x0 = np.concatenate([zs[i].real, zs[i].imag])
        res = minimize(objective, x0, method="BFGS", options={"gtol": 1e-12, "maxiter": 200})
        r = float(np.sqrt(max(res.fun, 0.0)))
        if r < best:
            z = res.x[:4] + 1j * res.x[4:]
            best, best_z = r, z / np.linalg.norm(z)
    passed = best > threshold
    return BasePointReport(passed, best, None if passed else best_z, "sampled+BFGS")


@dataclass(frozen=True)
class InvariantCausalMap:
    """Bidegree-(1, 1) map on (twistor, dual twistor) pairs::

        omega~ = A.omega.lam + B (mu.pi)     pi~ = C.omega.lam + D (mu.pi)
        lam~   = E.omega.lam + F (mu.pi)     mu~ = G.omega.lam + H (mu.pi)

    The three-index tensors have shape ``(2, 2, 2)`` as ``T[out, omega, lam]``.
    """

    A: np.ndarray
    B: np.ndarray
    C: np.ndarray
    D: np.ndarray
    E: np.ndarray
    F: np.ndarray
    G: np.ndarray
    H: np.ndarray

    TENSORS = ("A", "C", "E", "G")
    VECTORS = ("B", "D", "F", "H")

    def __post_init__(self):
        for name in self.TENSORS:
            object.__setattr__(self, name, np.asarray(getattr(self, name), dtype=complex).reshape(2, 2, 2))
        for name in self.VECTORS:
            object.__setattr__(self, name, np.asarray(getattr(self, name), dtype=complex).reshape(2))

    def scale(self) -> float:
        return float(np.sqrt(sum(np.sum(np.abs(getattr(self, n)) ** 2) for n in self.TENSORS + self.VECTORS)))

    def alpha_matrix(self, w) -> np.ndarray:
        """4x4 matrix of the linear map ``z -> z~`` at fixed dual twistor ``w``."""
        lam, mu = split(np.asarray(w, dtype=complex))
        return np.block([
            [np.einsum("abc,c->ab", self.A, lam), np.outer(self.B, mu)],
            [np.einsum("abc,c->ab", self.C, lam), np.outer(self.D, mu)],
        ])

    def beta_matrix(self, z) -> np.ndarray:
        """4x4 matrix of the linear map ``w -> w~`` at fixed twistor ``z``."""
        omega, pi = split(np.asarray(z, dtype=complex))
        return np.block([
            [np.einsum("abc,b->ac", self.E, omega), np.outer(self.F, pi)],
            [np.einsum("abc,b->ac", self.G, omega), np.outer(self.H, pi)],
        ])


def eval_invariant_map(m: InvariantCausalMap, z, w, rtol: float = DEGENERATE_RTOL):
    """Image ``(z~, w~)`` of a twistor / dual-twistor pair (arrays or jets)."""
    zv, wv = _value(z), _value(w)
    if not np.any(zv) or not np.any(wv):
        raise ZeroVectorError("invariant map needs nonzero twistor and dual twistor")
    omega, pi = split(z)
    lam, mu = split(w)
    mp = jet_einsum("a,a->", mu, pi)

    def part(T, v):
        return jet_einsum("abc,b,c->a", T, omega, lam) + jet_einsum("a,->a", v, mp)

    if isinstance(z, Jet) or isinstance(w, Jet):
        z_new = J.concatenate([part(m.A, m.B), part(m.C, m.D)])
        w_new = J.concatenate([part(m.E, m.F), part(m.G, m.H)])
    else:
        z_new = np.concatenate([part(m.A, m.B), part(m.C, m.D)])
        w_new = np.concatenate([part(m.E, m.F), part(m.G, m.H)])
    tol = rtol * m.scale() * np.linalg.norm(zv) * np.linalg.norm(wv)
    if np.linalg.norm(_value(z_new)) <= tol or np.linalg.norm(_value(w_new)) <= tol:
        raise DegenerateImageError("invariant map sends this pair to a projectively undefined point")
    return z_new, w_new


def random_map(kind: str, seed, max_tries: int = 50):
    """Seeded generic map of kind ``"degree1"``, ``"degree2"`` or ``"invariant"``."""
    rng = as_rng(seed)
    for _ in range(max_tries):
        if kind == "degree1":
            m = Degree1Map(complex_normal(rng, (4, 4)))
        elif kind == "degree2":
            m = Degree2Map(complex_normal(rng, (2, 4, 4)), complex_normal(rng, (2, 4, 4)))
        elif kind == "invariant":
            m = InvariantCausalMap(*(complex_normal(rng, (2, 2, 2) if n in InvariantCausalMap.TENSORS else 2)
                                     for n in "ABCDEFGH"))
        else:
            raise ValueError(f"unknown map kind {kind!r}")
        if _generic(m, rng):
            return m
    raise GenerationExhaustedError(f"no generic {kind} map after {max_tries} draws")


def _generic(m, rng) -> bool:
    if isinstance(m, InvariantCausalMap):
        try:
            for _ in range(4):
                eval_invariant_map(m, complex_normal(rng, 4), complex_normal(rng, 4), rtol=1e-6)
        except DegenerateImageError:
            return False
        return True
    return check_base_point_free(m, trials=16, seed=rng, refine=0, threshold=1e-3).passed
