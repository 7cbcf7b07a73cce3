import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from twistor_morphisms import jets
from twistor_morphisms.errors import DivisionBySingularJetError, InsufficientJetOrderError
from twistor_morphisms.jets import Jet, jet_einsum

from conftest import cnormal


def fd(f, s0, h=1e-5):
    """Central difference of a holomorphic function along the real axis."""
    return (f(s0 + h) - f(s0 - h)) / (2 * h)


def test_variable_and_derivatives():
    s = Jet.variable(0.3, 4)
    e = s * s * s  # s^3
    assert e.value == pytest.approx(0.027)
    assert e.derivative(1) == pytest.approx(3 * 0.09)
    assert e.derivative(2) == pytest.approx(6 * 0.3)
    assert e.derivative(3) == pytest.approx(6)
    assert e.derivative(4) == pytest.approx(0)
    with pytest.raises(InsufficientJetOrderError):
        e.derivative(5)


def test_reciprocal_matches_geometric_series():
    # 1/(1 - s) = sum s^k
    s = Jet.variable(0.0, 6)
    r = (1 - s).reciprocal()
    assert np.allclose(r.coeffs, np.ones(7))
    with pytest.raises(DivisionBySingularJetError):
        s.reciprocal()


@given(st.floats(-0.9, 0.9), st.floats(-0.9, 0.9))
def test_quotient_rule(a, b):
    s0 = complex(a, b)
    s = Jet.variable(s0, 3)
    f = (s * s + 2) / (s - 3)
    exact = lambda t: (t * t + 2) / (t - 3)
    assert f.value == pytest.approx(exact(s0))
    dexact = ((2 * s0) * (s0 - 3) - (s0 * s0 + 2)) / (s0 - 3) ** 2
    assert f.derivative(1) == pytest.approx(dexact)


def test_matrix_inverse_jet_against_finite_differences(rng):
    a, b, c = cnormal(rng, 3, 2, 2)
    m = lambda t: a + t * b + t * t * c
    j = jets.inv2(jets.eval_poly_curve(np.stack([a, b, c]), 0.2, 3))
    assert np.allclose(j.value, np.linalg.inv(m(0.2)))
    assert np.allclose(j.derivative(1), fd(lambda t: np.linalg.inv(m(t)), 0.2), atol=1e-8)
    assert np.allclose(j.derivative(2), fd(lambda t: fd(lambda u: np.linalg.inv(m(u)), t), 0.2, 1e-3), atol=1e-4)


def test_matmul_and_det(rng):
    a, b = cnormal(rng, 2, 2, 2), cnormal(rng, 2, 2, 2)
    A, B = Jet(np.concatenate([a, np.zeros((1, 2, 2))])), Jet(np.concatenate([b, np.zeros((1, 2, 2))]))
    P = A @ B
    assert np.allclose(P.coeffs[1], a[0] @ b[1] + a[1] @ b[0])
    assert np.allclose(P.coeffs[2], a[1] @ b[1])
    d = jets.det2(A)
    assert d.value == pytest.approx(np.linalg.det(a[0]))


def test_jet_einsum_mixes_arrays_and_jets(rng):
    T = cnormal(rng, 2, 2, 2)
    x = Jet(cnormal(rng, 3, 2))
    y = jet_einsum("abc,b,c->a", T, x, x)
    # second coefficient of a quadratic form: 2 T(x0, x1) for symmetric use
    expect = np.einsum("abc,b,c->a", T, x.coeffs[0], x.coeffs[1]) + np.einsum("abc,b,c->a", T, x.coeffs[1], x.coeffs[0])
    assert np.allclose(y.coeffs[1], expect)
    assert np.allclose(jet_einsum("ab,b->a", T[0], x.coeffs[0]), T[0] @ x.coeffs[0])


def test_taylor_shift_is_exact():
    poly = np.array([1.0, -2.0, 0.5, 3.0])
    c = jets.taylor_shift(poly, 0.7, 3)
    p = np.polynomial.Polynomial(poly)
    for k in range(4):
        assert c[k] == pytest.approx(p.deriv(k)(0.7) / math.factorial(k))


def test_truncate_and_indexing():
    j = Jet(np.arange(12.0).reshape(3, 4))
    assert j.truncate(1).order == 1
    assert np.array_equal(j[2:].coeffs, np.arange(12.0).reshape(3, 4)[:, 2:])
    assert j.shape == (4,)
