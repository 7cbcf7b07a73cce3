import numpy as np
import pytest
from hypothesis import given, strategies as st

from twistor_morphisms import spinors
from twistor_morphisms.curves import FPoint, random_null_curve
from twistor_morphisms.endomorphisms import Degree1Map, Degree2Map, random_map
from twistor_morphisms.errors import SingularDenominatorError, SingularImageError
from twistor_morphisms.seeding import DEFAULT_SAMPLES, complex_normal, make_rng
from twistor_morphisms.selfdual import (
    apply_f1,
    apply_to_curve,
    default_psi,
    degree2_closed_form,
    degree2_ratio_form,
    moebius_closed_form,
    moebius_ratio_form,
    verify_locality_F,
)

from conftest import cnormal


def random_fpoint(seed):
    rng = make_rng(seed, 99)
    return FPoint(complex_normal(rng, (2, 2)), complex_normal(rng, 2))


def test_default_psi_is_independent(rng):
    for _ in range(50):
        pi = cnormal(rng, 2)
        psi = default_psi(pi)
        assert abs(spinors.bracket(pi, psi)) > 0.1 * np.linalg.norm(pi) * np.linalg.norm(psi)


def test_identity_map_fixes_points(rng):
    p = FPoint(cnormal(rng, 2, 2), cnormal(rng, 2))
    img = apply_f1(Degree1Map.identity(), p)
    assert np.allclose(img.x, p.x, atol=1e-13)
    assert spinors.projective_distance(img.pi, p.pi) <= 1e-13


def test_identity_map_fixes_curves():
    curve = random_null_curve(3, (1, 2))
    for rec in apply_to_curve(Degree1Map.identity(), curve):
        assert np.allclose(rec.xi, curve(rec.s), atol=1e-12)


def test_translation_block():
    # B acts as a translation: with A = D = 1, C = 0 the image is x - i B
    B = np.array([[1, 2j], [0.5, -1]])
    p = FPoint(np.eye(2), [1, 3])
    xi = apply_f1(Degree1Map.from_blocks(B=B), p).x
    assert np.allclose(xi, np.eye(2) - 1j * B)


@given(st.integers(0, 10_000))
def test_degree1_paths_agree_and_ignore_pi(seed):
    m = random_map("degree1", seed)
    p = random_fpoint(seed)
    xi = apply_f1(m, p).x
    assert np.allclose(xi, moebius_closed_form(m, p.x), rtol=1e-9, atol=1e-10)
    assert np.allclose(xi, moebius_ratio_form(m, p), rtol=1e-9, atol=1e-10)
    other = apply_f1(m, FPoint(p.x, p.pi + complex_normal(make_rng(seed), 2))).x
    assert np.allclose(xi, other, rtol=1e-9, atol=1e-10)


@given(st.integers(0, 10_000))
def test_degree2_paths_agree(seed):
    m = random_map("degree2", seed)
    p = random_fpoint(seed)
    pipe = apply_f1(m, p)
    closed = degree2_closed_form(m, p)
    assert np.allclose(closed.x, pipe.x, rtol=1e-8, atol=1e-9)
    assert spinors.projective_distance(closed.pi, pipe.pi) <= 1e-10
    assert np.allclose(degree2_ratio_form(m, p), pipe.x, rtol=1e-8, atol=1e-9)


@given(st.integers(0, 10_000), st.floats(-3, 3), st.floats(-3, 3))
def test_psi_choice_is_immaterial(seed, re, im):
    # shifting psi by a multiple of pi moves z' by a multiple of z
    m = random_map("degree2", seed)
    p = random_fpoint(seed)
    a = apply_f1(m, p)
    b = apply_f1(m, p, default_psi(p.pi) + complex(re, im) * p.pi)
    c = apply_f1(m, p, complex_normal(make_rng(seed, 1), 2))
    for img in (b, c):
        assert np.allclose(img.x, a.x, rtol=1e-9, atol=1e-10)


def test_image_tangents_are_null_and_alpha():
    for kind in ("degree1", "degree2"):
        m = random_map(kind, 1)
        recs = apply_to_curve(m, random_null_curve(2, (2, 2)))
        assert all(r.ok for r in recs)
        assert max(r.null_residual for r in recs) <= 1e-9
        assert max(r.alpha_residual for r in recs) <= 1e-9


def test_image_tangent_against_finite_differences():
    m = random_map("degree2", 4)
    curve = random_null_curve(5, (1, 1))
    s, h = DEFAULT_SAMPLES[0], 1e-5
    rec, = apply_to_curve(m, curve, [s])
    xp, = apply_to_curve(m, curve, [s + h])
    xm, = apply_to_curve(m, curve, [s - h])
    assert np.allclose((xp.xi - xm.xi) / (2 * h), rec.xi_dot, atol=1e-6)


def test_locality():
    m = random_map("degree2", 12)
    rep = verify_locality_F(m, random_fpoint(12), n_curves=8, seed=3)
    assert rep.failures == 0
    assert rep.spread <= 1e-9


def test_singular_denominators():
    # C = 0, D = 0 kills the primed part of the image
    m = Degree1Map.from_blocks(C=np.zeros((2, 2)), D=np.zeros((2, 2)))
    p = FPoint(np.eye(2), [1, 0])
    with pytest.raises(SingularDenominatorError):
        moebius_closed_form(m, p.x)
    with pytest.raises(SingularImageError):
        apply_f1(m, p)


def test_degree2_closed_form_singular_N():
    zero = np.zeros((2, 4, 4))
    m = Degree2Map(random_map("degree2", 0).F_tensors, zero)
    with pytest.raises(SingularDenominatorError):
        degree2_closed_form(m, random_fpoint(0))
