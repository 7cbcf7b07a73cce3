"""Truncated Taylor series in one complex parameter.

A :class:`Jet` of order ``K`` holds the Taylor-normalized coefficients
``a_k = f^(k)(s0) / k!`` for ``k = 0..K`` of an array-valued holomorphic
function.  The coefficient axis is axis 0 of :attr:`Jet.coeffs`; the
remaining axes are the value shape, so a spinor curve is a jet of shape
``(2,)`` and a curve in C^4 written as a matrix is a jet of shape ``(2, 2)``.

Arithmetic is exact up to truncation: products are Cauchy products and
quotients use the usual recursive reciprocal, so derivatives of every
formula built from jets come out without finite differencing.
"""

from __future__ import annotations

import itertools
from math import comb, factorial

import numpy as np

from .errors import DivisionBySingularJetError, InsufficientJetOrderError

DEFAULT_ORDER = 3
DIVISION_ATOL = 1e-300


class Jet:
    __array_priority__ = 1000

    def __init__(self, coeffs):
        coeffs = np.array(coeffs, dtype=complex)
        if coeffs.ndim == 0:
            raise ValueError("jet coefficients need a leading order axis")
        self.coeffs = coeffs

    # construction -------------------------------------------------------

    @classmethod
    def constant(cls, value, order: int = DEFAULT_ORDER) -> Jet:
        value = np.asarray(value, dtype=complex)
        c = np.zeros((order + 1,) + value.shape, dtype=complex)
        c[0] = value
        return cls(c)

    @classmethod
    def variable(cls, s0, order: int = DEFAULT_ORDER) -> Jet:
        """The identity function ``s`` expanded about ``s0``."""
        c = np.zeros(order + 1, dtype=complex)
        c[0] = s0
        if order >= 1:
            c[1] = 1.0
        return cls(c)

    @classmethod
    def linear(cls, value, tangent) -> Jet:
        """First-order jet ``value + s * tangent``."""
        return cls(np.stack([np.asarray(value, complex), np.asarray(tangent, complex)]))

    # shape / access -----------------------------------------------------

    @property
    def order(self) -> int:
        return self.coeffs.shape[0] - 1

    @property
    def shape(self):
        return self.coeffs.shape[1:]

    @property
    def value(self) -> np.ndarray:
        return self.coeffs[0]

    def derivative(self, n: int = 1) -> np.ndarray:
        """The n-th derivative at the expansion point."""
        if n > self.order:
            raise InsufficientJetOrderError(f"derivative {n} requested from a jet of order {self.order}")
        return self.coeffs[n] * factorial(n)

    def differentiate(self) -> Jet:
        """Jet of ``d/ds``; one order is lost."""
        if self.order < 1:
            raise InsufficientJetOrderError("cannot differentiate an order-0 jet")
        k = np.arange(1, self.order + 1).reshape((-1,) + (1,) * len(self.shape))
        return Jet(self.coeffs[1:] * k)

    def truncate(self, order: int) -> Jet:
        if order > self.order:
            raise InsufficientJetOrderError(f"cannot raise jet order {self.order} to {order}")
        return Jet(self.coeffs[: order + 1])

    def apply(self, linear_fn) -> Jet:
        """Push a linear map through every coefficient."""
        return Jet(linear_fn(self.coeffs))

    def __getitem__(self, idx) -> Jet:
        if not isinstance(idx, tuple):
            idx = (idx,)
        return Jet(self.coeffs[(slice(None),) + idx])

    def __repr__(self):
        return f"Jet(order={self.order}, shape={self.shape})"

    # arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> Jet:
        if isinstance(other, Jet):
            if other.order != self.order:
                raise ValueError(f"jet order mismatch: {self.order} vs {other.order}")
            return other
        return Jet.constant(other, self.order)

    def __add__(self, other):
        return Jet(self.coeffs + self._coerce(other).coeffs)

    __radd__ = __add__

    def __sub__(self, other):
        return Jet(self.coeffs - self._coerce(other).coeffs)

    def __rsub__(self, other):
        return Jet(self._coerce(other).coeffs - self.coeffs)

    def __neg__(self):
        return Jet(-self.coeffs)

    def __mul__(self, other):
        if not isinstance(other, Jet):
            return Jet(self.coeffs * np.asarray(other))
        return _cauchy(self, self._coerce(other), np.multiply)

    def __rmul__(self, other):
        if not isinstance(other, Jet):
            return Jet(np.asarray(other) * self.coeffs)
        return other.__mul__(self)

    def __matmul__(self, other):
        if not isinstance(other, Jet):
            return Jet(self.coeffs @ np.asarray(other))
        return _cauchy(self, self._coerce(other), np.matmul)

    def __rmatmul__(self, other):
        return Jet(np.asarray(other) @ self.coeffs)

    def reciprocal(self, atol: float = DIVISION_ATOL) -> Jet:
        b = self.coeffs
        if np.any(np.abs(b[0]) <= atol):
            raise DivisionBySingularJetError("jet value is zero; reciprocal undefined")
        q = np.zeros_like(b)
        q[0] = 1.0 / b[0]
        for k in range(1, self.order + 1):
            acc = np.zeros_like(b[0])
            for j in range(1, k + 1):
                acc = acc + b[j] * q[k - j]
            q[k] = -acc * q[0]
        return Jet(q)

    def __truediv__(self, other):
        if not isinstance(other, Jet):
            other = np.asarray(other)
            if np.any(other == 0):
                raise DivisionBySingularJetError("division by zero constant")
            return Jet(self.coeffs / other)
        return self * self._coerce(other).reciprocal()

    def __rtruediv__(self, other):
        return self.reciprocal() * other


def _cauchy(a: Jet, b: Jet, op) -> Jet:
    out = [op(a.coeffs[0], b.coeffs[0])]
    for k in range(1, a.order + 1):
        acc = op(a.coeffs[0], b.coeffs[k])
        for i in range(1, k + 1):
            acc = acc + op(a.coeffs[i], b.coeffs[k - i])
        out.append(acc)
    return Jet(np.stack(out))


def jet_einsum(subscripts: str, *operands):
    """``np.einsum`` over a mix of constant arrays and jets of equal order.

    Meant for the handful of multilinear maps in this package (two or three
    jet operands at low order), so the Cauchy sum is enumerated directly.
    """
    jets = [i for i, op in enumerate(operands) if isinstance(op, Jet)]
    if not jets:
        return np.einsum(subscripts, *operands)
    order = operands[jets[0]].order
    if any(operands[i].order != order for i in jets):
        raise ValueError("jet order mismatch in jet_einsum")
    out = None
    for combo in itertools.product(range(order + 1), repeat=len(jets)):
        k = sum(combo)
        if k > order:
            continue
        ops = list(operands)
        for i, c in zip(jets, combo):
            ops[i] = operands[i].coeffs[c]
        term = np.einsum(subscripts, *ops)
        if out is None:
            out = np.zeros((order + 1,) + term.shape, dtype=complex)
        out[k] += term
    return Jet(out)


def det2(m: Jet) -> Jet:
    return m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]


def inv2(m: Jet) -> Jet:
    """Inverse of a 2x2 matrix jet by the adjugate formula."""
    from .spinors import adjugate2

    return m.apply(adjugate2) * det2(m).reciprocal()


def stack(jets, axis: int = 0) -> Jet:
    """Stack jets along a value axis."""
    order = jets[0].order
    if any(j.order != order for j in jets):
        raise ValueError("jet order mismatch in stack")
    ax = axis + 1 if axis >= 0 else axis
    return Jet(np.stack([j.coeffs for j in jets], axis=ax))


def concatenate(jets, axis: int = 0) -> Jet:
    order = jets[0].order
    if any(j.order != order for j in jets):
        raise ValueError("jet order mismatch in concatenate")
    ax = axis + 1 if axis >= 0 else axis
    return Jet(np.concatenate([j.coeffs for j in jets], axis=ax))


def taylor_shift(poly_coeffs, s0, order: int = DEFAULT_ORDER) -> np.ndarray:
    """Taylor-normalized coefficients about ``s0`` of a polynomial given by
    ascending-power coefficients (axis 0)."""
    c = np.asarray(poly_coeffs, dtype=complex)
    n = c.shape[0]
    out = np.zeros((order + 1,) + c.shape[1:], dtype=complex)
    for k in range(min(order, n - 1) + 1):
        for m in range(k, n):
            out[k] += comb(m, k) * s0 ** (m - k) * c[m]
    return out


def eval_poly_curve(poly_coeffs, s0, order: int = DEFAULT_ORDER) -> Jet:
    """Jet at ``s0`` of the polynomial with ascending coefficients ``poly_coeffs``."""
    return Jet(taylor_shift(poly_coeffs, s0, order))
