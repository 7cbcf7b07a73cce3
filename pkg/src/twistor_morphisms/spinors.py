"""Two-spinor algebra on numpy arrays.

Conventions
-----------
``eps[0, 1] = +1`` for both the raised and lowered epsilon, primed and
unprimed alike.  Indices are raised with ``k^A = eps^{AB} k_B`` and lowered
with ``k_B = k^A eps_{AB}``, so ``raise_index((k0, k1)) == (k1, -k0)`` and
``lower_index((k0, k1)) == (-k1, k0)``.

A point of C^4 is a 2x2 complex matrix ``x[A, A']``: the row index is the
unprimed spinor index, the column index the primed one, both upper.  Contractions are plain matrix products once every operand has been
brought to the right variance.

All array functions act on the last axis (spinors) or the last two axes
(matrices) and broadcast over any leading axes, which is how the jet code
feeds whole Taylor expansions through them.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ContractionError, NotNullError, SingularMatrixError, ZeroVectorError

EPS = np.array([[0.0, 1.0], [-1.0, 0.0]], dtype=complex)

NULL_RTOL = 1e-10
SINGULAR_RTOL = 1e-12


def raise_index(k):
    k = np.asarray(k)
    return np.stack([k[..., 1], -k[..., 0]], axis=-1)


def lower_index(k):
    k = np.asarray(k)
    return np.stack([-k[..., 1], k[..., 0]], axis=-1)


def pair(a_lower, b_upper):
    """``a_A b^A`` with the operands already at opposite variance."""
    return np.sum(np.asarray(a_lower) * np.asarray(b_upper), axis=-1)


def bracket(a_upper, b_upper):
    """``a_A b^A`` for two upper-index spinors: ``a^0 b^1 - a^1 b^0``."""
    a = np.asarray(a_upper)
    b = np.asarray(b_upper)
    return a[..., 0] * b[..., 1] - a[..., 1] * b[..., 0]


@dataclass(frozen=True)
class Spinor:
    """A tagged two-component spinor.

    The tags only matter for :func:`contract`; the numerical routines in this
    package pass bare arrays around.
    """

    components: np.ndarray
    upper: bool = True
    primed: bool = False

    def __post_init__(self):
        c = np.asarray(self.components, dtype=complex)
        if c.shape != (2,):
            raise ValueError(f"spinor needs two components, got shape {c.shape}")
        if not np.all(np.isfinite(c)):
            raise ValueError("spinor components must be finite")
        object.__setattr__(self, "components", c)

    def raised(self) -> Spinor:
        if self.upper:
            return self
        return Spinor(raise_index(self.components), True, self.primed)

    def lowered(self) -> Spinor:
        if not self.upper:
            return self
        return Spinor(lower_index(self.components), False, self.primed)


def contract(a: Spinor, b: Spinor) -> complex:
    """``a_A b^A``: ``a`` is lowered and ``b`` raised as needed."""
    if a.primed != b.primed:
        raise ContractionError("cannot contract a primed spinor with an unprimed one")
    return complex(pair(a.lowered().components, b.raised().components))


def det2(m):
    m = np.asarray(m)
    return m[..., 0, 0] * m[..., 1, 1] - m[..., 0, 1] * m[..., 1, 0]


def adjugate2(m):
    m = np.asarray(m)
    out = np.empty_like(m)
    out[..., 0, 0] = m[..., 1, 1]
    out[..., 1, 1] = m[..., 0, 0]
    out[..., 0, 1] = -m[..., 0, 1]
    out[..., 1, 0] = -m[..., 1, 0]
    return out


def minkowski_norm(v) -> complex:
    """Quadratic form ``<v, v> = 2 det(v)``; zero exactly on null vectors."""
    return 2.0 * det2(np.asarray(v, dtype=complex))


def is_null(v, rtol: float = NULL_RTOL) -> bool:
    v = np.asarray(v, dtype=complex)
    return abs(det2(v)) <= rtol * max(1.0, np.sum(np.abs(v) ** 2))


def null_factorize(v, rtol: float = NULL_RTOL):
    """Split a rank-one matrix as ``v[A, A'] = lam[A] * pi[A']``.

    The primed factor is taken from the row of ``v`` with the larger norm
    (first row on ties) and scaled so its largest-modulus component is 1.
    Both factors are returned with upper indices.
    """
    v = np.asarray(v, dtype=complex)
    norm2 = np.sum(np.abs(v) ** 2)
    if norm2 == 0.0:
        raise ZeroVectorError("cannot factorize the zero matrix")
    if abs(det2(v)) > rtol * max(1.0, norm2):
        raise NotNullError(f"matrix is not null: |det| = {abs(det2(v)):.3e}")
    row = int(np.argmax(np.sum(np.abs(v) ** 2, axis=1)))
    pi = v[row]
    col = int(np.argmax(np.abs(pi)))
    pi = pi / pi[col]
    lam = v[:, col].copy()
    return lam, pi


def invert2x2(b, rtol: float = SINGULAR_RTOL):
    b = np.asarray(b, dtype=complex)
    d = det2(b)
    if abs(d) <= rtol * max(1.0, np.sum(np.abs(b) ** 2)):
        raise SingularMatrixError(f"matrix is singular: |det| = {abs(d):.3e}")
    return adjugate2(b) / d


def projective_distance(u, w) -> float:
    """Chordal distance between the complex lines through ``u`` and ``w``."""
    u = np.ravel(np.asarray(u, dtype=complex))
    w = np.ravel(np.asarray(w, dtype=complex))
    nu = np.vdot(u, u).real
    nw = np.vdot(w, w).real
    if nu == 0.0 or nw == 0.0:
        raise ZeroVectorError("projective distance of a zero vector")
    # sine of the angle via the orthogonal residual; 1 - cos^2 cancels badly
    r = u - w * (np.vdot(w, u) / nw)
    return float(min(1.0, np.sqrt(np.vdot(r, r).real / nu)))
