"""Polynomial null curves in C^4 and points of the correspondence spaces.

A null curve is stored through its tangent factorization
``chi'(s) = lam(s) (x) pi(s)`` with ``lam`` and ``pi`` polynomial spinor
curves (upper indices).  The curve itself is the exact antiderivative, so
its tangent is rank one for every ``s`` by construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import spinors
from .errors import DegenerateCurveError, GenerationExhaustedError, NotNullError, ZeroVectorError
from .jets import DEFAULT_ORDER, Jet, eval_poly_curve
from .seeding import DEFAULT_SAMPLES, as_rng, complex_normal

NONSINGULAR_ATOL = 1e-6


@dataclass(frozen=True)
class FPoint:
    """A point ``x`` with an alpha-plane direction ``pi_{A'}`` (lower index)."""

    x: np.ndarray
    pi: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "x", np.asarray(self.x, dtype=complex).reshape(2, 2))
        pi = np.asarray(self.pi, dtype=complex).reshape(2)
        if not np.any(pi):
            raise ZeroVectorError("alpha-plane spinor must be nonzero")
        object.__setattr__(self, "pi", pi)


@dataclass(frozen=True)
class GPoint:
    """A point ``x`` with a projective null direction ``v``."""

    x: np.ndarray
    v: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "x", np.asarray(self.x, dtype=complex).reshape(2, 2))
        v = np.asarray(self.v, dtype=complex).reshape(2, 2)
        if not np.any(v):
            raise ZeroVectorError("null direction must be nonzero")
        if not spinors.is_null(v):
            raise NotNullError("direction of a GPoint must be null")
        object.__setattr__(self, "v", v)


@dataclass(frozen=True)
class NullCurve:
    base: np.ndarray
    lam: np.ndarray
    pi: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "base", np.asarray(self.base, dtype=complex).reshape(2, 2))
        object.__setattr__(self, "lam", np.atleast_2d(np.asarray(self.lam, dtype=complex)))
        object.__setattr__(self, "pi", np.atleast_2d(np.asarray(self.pi, dtype=complex)))
        if self.lam.shape[-1] != 2 or self.pi.shape[-1] != 2:
            raise ValueError("spinor polynomials need shape (degree + 1, 2)")

    @property
    def tangent_coeffs(self) -> np.ndarray:
        n = self.lam.shape[0] + self.pi.shape[0] - 1
        out = np.zeros((n, 2, 2), dtype=complex)
        for i, a in enumerate(self.lam):
            for j, b in enumerate(self.pi):
                out[i + j] += np.outer(a, b)
        return out

    @property
    def chi_coeffs(self) -> np.ndarray:
        t = self.tangent_coeffs
        out = np.zeros((t.shape[0] + 1, 2, 2), dtype=complex)
        out[0] = self.base
        out[1:] = t / np.arange(1, t.shape[0] + 1)[:, None, None]
        return out

    def __call__(self, s) -> np.ndarray:
        return _polyval(self.chi_coeffs, s)

    def tangent(self, s) -> np.ndarray:
        return _polyval(self.tangent_coeffs, s)

    def lam_at(self, s) -> np.ndarray:
        return _polyval(self.lam, s)

    def pi_at(self, s) -> np.ndarray:
        return _polyval(self.pi, s)

    def jet(self, s0, order: int = DEFAULT_ORDER) -> Jet:
        return eval_poly_curve(self.chi_coeffs, s0, order)

    def translated(self, shift) -> NullCurve:
        return NullCurve(self.base + np.asarray(shift, dtype=complex), self.lam, self.pi)


def _polyval(coeffs, s):
    out = np.zeros(coeffs.shape[1:], dtype=complex)
    for c in coeffs[::-1]:
        out = out * s + c
    return out


def make_null_curve(base, lam, pi) -> NullCurve:
    curve = NullCurve(base, lam, pi)
    if not np.any(curve.lam) or not np.any(curve.pi):
        raise DegenerateCurveError("lambda and pi must both be nonzero polynomials")
    return curve


def is_regular(curve: NullCurve, samples=DEFAULT_SAMPLES, atol: float = NONSINGULAR_ATOL,
               twistor_regular: bool = True) -> bool:
    """Nonsingular tangent at every sample, and, if asked, a non-vanishing
    ``pi . pi'`` so that the inverse correspondence is defined there."""
    dpi = curve.pi[1:] * np.arange(1, curve.pi.shape[0])[:, None] if curve.pi.shape[0] > 1 else np.zeros((1, 2))
    for s in samples:
        if np.linalg.norm(curve.tangent(s)) < atol:
            return False
        if twistor_regular and abs(spinors.bracket(curve.pi_at(s), _polyval(dpi, s))) < atol:
            return False
    return True


def random_null_curve(seed, degree_bounds=(1, 1), samples=DEFAULT_SAMPLES, max_tries: int = 100,
                      twistor_regular: bool | None = None, base=None) -> NullCurve:
    """Seeded random polynomial null curve, resampled until regular.

    ``degree_bounds`` are the polynomial degrees of ``lam`` and ``pi``.
    ``twistor_regular`` defaults to ``True`` whenever ``pi`` is not constant.
    """
    rng = as_rng(seed)
    dl, dp = degree_bounds
    if twistor_regular is None:
        twistor_regular = dp >= 1
    for _ in range(max_tries):
        b = complex_normal(rng, (2, 2)) if base is None else base
        curve = NullCurve(b, complex_normal(rng, (dl + 1, 2)), complex_normal(rng, (dp + 1, 2)))
        if is_regular(curve, samples, twistor_regular=twistor_regular):
            return curve
    raise GenerationExhaustedError(f"no regular curve after {max_tries} draws")


class Tangency(NamedTuple):
    tangent: bool
    kind: str | None


def tangent_pair_at(a: NullCurve, b: NullCurve, s0, t0, tol: float = 1e-10) -> Tangency:
    """First-order tangency (same point, proportional tangents) or the
    weaker alpha-tangency (same point, same pi direction)."""
    xa, xb = a(s0), b(t0)
    if np.linalg.norm(xa - xb) > tol * max(1.0, np.linalg.norm(xa)):
        return Tangency(False, None)
    if spinors.projective_distance(a.tangent(s0), b.tangent(t0)) <= tol:
        return Tangency(True, "first-order")
    if spinors.projective_distance(a.pi_at(s0), b.pi_at(t0)) <= tol:
        return Tangency(True, "alpha")
    return Tangency(False, None)


def make_tangent_family(point: FPoint | GPoint, seed, n: int, higher: bool = True,
                        degree: int = 2) -> list[NullCurve]:
    """Curves through ``point.x`` at ``s = 0`` sharing its tangent data.

    For an :class:`FPoint` every curve has ``pi(0)`` along the given alpha
    plane while ``lam(0)`` is random.  For a :class:`GPoint` every curve has
    ``chi'(0)`` proportional to ``v``.  Higher coefficients are random unless
    ``higher`` is false.
    """
    rng = as_rng(seed)
    curves = []
    for _ in range(n):
        lam = np.zeros((degree + 1, 2), dtype=complex)
        pi = np.zeros((degree + 1, 2), dtype=complex)
        if isinstance(point, FPoint):
            lam[0] = complex_normal(rng, 2)
            pi[0] = spinors.raise_index(point.pi)
        else:
            a, p = spinors.null_factorize(point.v)
            c = complex_normal(rng)
            lam[0] = c * a
            pi[0] = p / c
        if higher:
            lam[1:] = complex_normal(rng, (degree, 2))
            pi[1:] = complex_normal(rng, (degree, 2))
        curves.append(NullCurve(point.x, lam, pi))
    return curves
