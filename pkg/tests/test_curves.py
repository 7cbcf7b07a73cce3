import numpy as np
import pytest

from twistor_morphisms import spinors
from twistor_morphisms.curves import (
    FPoint,
    GPoint,
    NullCurve,
    is_regular,
    make_null_curve,
    make_tangent_family,
    random_null_curve,
    tangent_pair_at,
)
from twistor_morphisms.errors import DegenerateCurveError, NotNullError, ZeroVectorError
from twistor_morphisms.seeding import DEFAULT_SAMPLES

from conftest import cnormal


@pytest.mark.parametrize("degrees", [(1, 1), (2, 1), (1, 3), (3, 2)])
def test_random_curves_are_null_and_integrate_their_tangent(degrees):
    curve = random_null_curve(11, degrees)
    h = 1e-6
    for s in DEFAULT_SAMPLES:
        t = curve.tangent(s)
        assert abs(spinors.det2(t)) <= 1e-12 * np.linalg.norm(t) ** 2
        numeric = (curve(s + h) - curve(s - h)) / (2 * h)
        assert np.allclose(numeric, t, atol=1e-8)
        assert np.allclose(np.outer(curve.lam_at(s), curve.pi_at(s)), t)


def test_random_curve_is_deterministic():
    a, b = random_null_curve(5, (2, 2)), random_null_curve(5, (2, 2))
    assert np.array_equal(a.chi_coeffs, b.chi_coeffs)
    assert not np.array_equal(a.chi_coeffs, random_null_curve(6, (2, 2)).chi_coeffs)


def test_jet_matches_curve():
    curve = random_null_curve(3, (2, 1))
    j = curve.jet(0.25 - 0.1j, 3)
    assert np.allclose(j.value, curve(0.25 - 0.1j))
    assert np.allclose(j.derivative(1), curve.tangent(0.25 - 0.1j))


def test_degenerate_curves_rejected():
    with pytest.raises(DegenerateCurveError):
        make_null_curve(np.eye(2), np.zeros((1, 2)), [[1, 0]])
    # constant pi is a fine null curve but not twistor-regular
    flat = NullCurve(np.eye(2), [[1, 0], [0, 1]], [[1, 2]])
    assert is_regular(flat, twistor_regular=False)
    assert not is_regular(flat, twistor_regular=True)


def test_point_types_validate():
    with pytest.raises(ZeroVectorError):
        FPoint(np.eye(2), [0, 0])
    with pytest.raises(NotNullError):
        GPoint(np.eye(2), np.eye(2))
    GPoint(np.eye(2), np.outer([1, 1j], [2, 0]))


def test_tangent_family_fpoint(rng):
    p = FPoint(cnormal(rng, 2, 2), cnormal(rng, 2))
    curves = make_tangent_family(p, 1, 5)
    for c in curves:
        assert np.allclose(c(0.0), p.x)
        # tangent lies in the alpha plane: chi' pi = 0 (pi lower)
        assert np.linalg.norm(c.tangent(0.0) @ p.pi) <= 1e-12
    assert tangent_pair_at(curves[0], curves[1], 0.0, 0.0).kind == "alpha"


def test_tangent_family_gpoint(rng):
    v = np.outer(cnormal(rng, 2), cnormal(rng, 2))
    g = GPoint(cnormal(rng, 2, 2), v)
    a, b = make_tangent_family(g, 2, 2)
    assert spinors.projective_distance(a.tangent(0.0), v) <= 1e-12
    assert tangent_pair_at(a, b, 0.0, 0.0) == (True, "first-order")
    assert not np.allclose(a(0.5), b(0.5))
    assert tangent_pair_at(a, b, 0.0, 0.5) == (False, None)
