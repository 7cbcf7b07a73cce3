import numpy as np
import pytest
from hypothesis import given, strategies as st

from twistor_morphisms import spinors
from twistor_morphisms.errors import ContractionError, NotNullError, SingularMatrixError, ZeroVectorError
from twistor_morphisms.spinors import Spinor, contract

from conftest import cnormal

finite = st.floats(-10, 10, allow_nan=False, allow_infinity=False)
cplx = st.builds(complex, finite, finite)
spinor2 = st.lists(cplx, min_size=2, max_size=2).map(np.array)


@given(spinor2)
def test_seesaw_is_exact(k):
    assert np.array_equal(spinors.lower_index(spinors.raise_index(k)), k)
    assert np.array_equal(spinors.raise_index(spinors.lower_index(k)), k)


def test_raise_convention():
    # eps^{01} = 1: k^0 = k_1, k^1 = -k_0
    assert np.array_equal(spinors.raise_index(np.array([2.0, 3.0])), [3.0, -2.0])
    assert contract(Spinor([1, 0]), Spinor([0, 1])) == 1


@given(spinor2, spinor2)
def test_contraction_antisymmetry(a, b):
    # a_A b^A = - a^A b_A and k_A k^A = 0
    lhs = spinors.pair(a, spinors.raise_index(b))
    rhs = -spinors.pair(b, spinors.raise_index(a))
    assert abs(lhs - rhs) <= 1e-12 * (1 + abs(lhs))
    assert abs(contract(Spinor(a, upper=False), Spinor(a, upper=False))) <= 1e-12 * (1 + np.vdot(a, a).real)


def test_contraction_needs_matching_primes():
    with pytest.raises(ContractionError):
        contract(Spinor([1, 2], primed=True), Spinor([1, 0], upper=False))
    # variance is adjusted automatically
    assert contract(Spinor([1, 0], upper=False), Spinor([0, 1])) == contract(Spinor([0, -1]), Spinor([0, 1]))


def test_det_and_norm():
    assert spinors.det2(np.eye(2)) == 1
    assert spinors.minkowski_norm(np.eye(2)) == 2
    assert spinors.is_null(np.outer([1, 2j], [3, -1]))
    assert not spinors.is_null(np.eye(2))


def test_null_factorize_reconstructs(rng):
    for _ in range(200):
        a, p = cnormal(rng, 2), cnormal(rng, 2)
        v = np.outer(a, p)
        lam, pi = spinors.null_factorize(v)
        assert np.max(np.abs(pi)) == pytest.approx(1.0)
        assert spinors.projective_distance(np.outer(lam, pi), v) <= 1e-12
        assert np.allclose(np.outer(lam, pi), v, atol=1e-12 * np.linalg.norm(v))


def test_null_factorize_errors():
    with pytest.raises(ZeroVectorError):
        spinors.null_factorize(np.zeros((2, 2)))
    with pytest.raises(NotNullError):
        spinors.null_factorize(np.eye(2))


def test_invert2x2(rng):
    b = cnormal(rng, 2, 2)
    assert np.allclose(b @ spinors.invert2x2(b), np.eye(2), atol=1e-13)
    assert np.array_equal(spinors.invert2x2(np.eye(2)), np.eye(2))
    with pytest.raises(SingularMatrixError):
        spinors.invert2x2(np.outer([1, 2], [3, 4]))


def test_projective_distance(rng):
    u = cnormal(rng, 2, 2)
    assert spinors.projective_distance(u, (2 - 3j) * u) <= 1e-15
    assert spinors.projective_distance(np.array([1, 0]), np.array([0, 1])) == pytest.approx(1.0)
    # small angles are resolved well below sqrt(eps)
    assert spinors.projective_distance(np.array([1, 0]), np.array([1, 1e-12])) == pytest.approx(1e-12, rel=1e-6)
