import numpy as np
import pytest
from hypothesis import given, strategies as st

from twistor_morphisms import spinors
from twistor_morphisms.correspondence import (
    beta_incidence,
    dual_kappa,
    dual_kappa_inverse,
    incidence_omega,
    kappa,
    kappa_inverse,
    lambda_inverse,
)
from twistor_morphisms.curves import NullCurve, random_null_curve
from twistor_morphisms.errors import (
    InsufficientJetOrderError,
    NotNullTangentError,
    SingularCorrespondenceError,
    SingularTangentError,
)
from twistor_morphisms.jets import Jet
from twistor_morphisms.seeding import DEFAULT_SAMPLES


def test_twistor_curve_satisfies_incidence_along_the_curve():
    curve = random_null_curve(8, (2, 2))
    for s in DEFAULT_SAMPLES[:4]:
        z = kappa(curve.jet(s, 3))
        omega, pi = z.value[:2], z.value[2:]
        assert np.allclose(omega, incidence_omega(curve(s), pi))
        # pi annihilates the tangent: the curve lies in each alpha plane to first order
        assert np.linalg.norm(curve.tangent(s) @ pi) <= 1e-12 * np.linalg.norm(curve.tangent(s))
        assert np.max(np.abs(z.value)) == pytest.approx(1.0)


def test_twistor_derivative_against_pointwise_values():
    # pointwise twistors are only defined up to scale, so compare the
    # first-order prediction projectively: the gap must shrink like h^2
    curve = random_null_curve(9, (1, 2))
    z = kappa(curve.jet(0.1, 3))
    gaps = []
    for h in (1e-3, 5e-4):
        pred = z.value + h * z.derivative(1) + h * h * z.derivative(2) / 2
        gaps.append(spinors.projective_distance(pred, kappa(curve.jet(0.1 + h, 3)).value))
    assert gaps[0] < 1e-7
    assert 6 < gaps[0] / gaps[1] < 10


@given(st.integers(0, 10_000), st.integers(1, 3), st.integers(1, 3))
def test_round_trip(seed, dl, dp):
    curve = random_null_curve(seed, (dl, dp))
    s = DEFAULT_SAMPLES[seed % 8]
    chi = curve.jet(s, 3)
    back = kappa_inverse(kappa(chi))
    assert back.order == 1
    assert np.allclose(back.coeffs, chi.coeffs[:2], rtol=1e-9, atol=1e-9 * np.abs(chi.value).max())


def test_lambda_recovery_is_exact():
    curve = random_null_curve(4, (2, 2))
    for s in DEFAULT_SAMPLES[:4]:
        z = kappa(curve.jet(s, 3))
        lam = lambda_inverse(z)
        pi_up = spinors.raise_index(z.value[2:])
        assert np.allclose(np.outer(lam, pi_up), curve.tangent(s), atol=1e-10)


def test_constant_pi_is_singular():
    curve = NullCurve(np.eye(2), [[1, 0], [0.5, 1]], [[1, 2]])
    with pytest.raises(SingularCorrespondenceError):
        kappa_inverse(kappa(curve.jet(0.3, 3)))


def test_kappa_input_checks():
    with pytest.raises(SingularTangentError):
        kappa(Jet.constant(np.eye(2), 2))
    with pytest.raises(NotNullTangentError):
        kappa(Jet.linear(np.eye(2), np.eye(2)))
    with pytest.raises(InsufficientJetOrderError):
        kappa(Jet.constant(np.eye(2), 0))


def test_dual_round_trip():
    curve = random_null_curve(12, (2, 1))
    for s in DEFAULT_SAMPLES[:4]:
        chi = curve.jet(s, 3)
        w = dual_kappa(chi)
        lam, mu = w.value[:2], w.value[2:]
        assert np.allclose(mu, beta_incidence(lam, chi.value))
        back = dual_kappa_inverse(w)
        assert np.allclose(back.coeffs, chi.coeffs[:2], atol=1e-9)
