"""Seeded property suites.

Each suite is a function ``trial(rng, cfg) -> residual``.  A trial passes
when its residual is at most the suite tolerance (or, for the witness
suites that must exhibit an effect, strictly above it).  Trial ``i`` draws
from ``make_rng(cfg.seed, i)``, so the report does not depend on how the
trials are scheduled.

The default tolerance of every residual suite can be overridden through the
``TWISTOR_MORPHISMS_TOL`` environment variable.
"""

from __future__ import annotations

import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from . import causal, identities, selfdual, spinors
from .correspondence import kappa, kappa_inverse
from .curves import FPoint, GPoint, make_tangent_family, random_null_curve
from .endomorphisms import random_map
from .errors import ConfigInvalidError, TwistorError, UnknownSuiteError
from .jets import DEFAULT_ORDER
from .seeding import DEFAULT_SAMPLES, complex_normal, make_rng

TOL_ENV = "TWISTOR_MORPHISMS_TOL"


@dataclass
class SuiteConfig:
    suite_name: str
    trials: int = 100
    seed: int = 0
    tolerances: dict = field(default_factory=dict)
    sample_points: list = field(default_factory=lambda: list(DEFAULT_SAMPLES))
    degree_bounds: tuple = (1, 1)  # polynomial degrees of lam and pi

    def validate(self):
        if self.suite_name not in SUITES:
            raise UnknownSuiteError(f"unknown suite {self.suite_name!r}; known: {', '.join(sorted(SUITES))}")
        if not isinstance(self.trials, int) or self.trials < 1:
            raise ConfigInvalidError("trials must be a positive integer")
        for name, tol in self.tolerances.items():
            if not tol > 0:
                raise ConfigInvalidError(f"tolerance {name!r} must be positive")
        if len(self.sample_points) == 0:
            raise ConfigInvalidError("need at least one sample point")
        if len(self.degree_bounds) != 2 or min(self.degree_bounds) < 0:
            raise ConfigInvalidError("degree_bounds must be two non-negative degrees (lam, pi)")

    @property
    def tol(self) -> float:
        return self.tolerances.get("default", default_tolerance(self.suite_name))


@dataclass
class SuiteReport:
    suite_name: str
    trials: int
    pass_count: int
    max_residual: float
    min_residual: float
    failures: list
    wall_time: float
    tolerance: float
    mode: str
    required_fraction: float

    @property
    def passed(self) -> bool:
        return self.pass_count >= math.ceil(self.required_fraction * self.trials - 1e-9)

    def to_dict(self, wall_time: bool = True) -> dict:
        d = asdict(self)
        d["passed"] = self.passed
        if not wall_time:
            del d["wall_time"]
        return d


@dataclass(frozen=True)
class Suite:
    trial: object
    tol: float
    mode: str = "le"  # "le": residual <= tol passes; "gt": residual > tol passes
    required_fraction: float = 1.0
    description: str = ""


def default_tolerance(name: str) -> float:
    suite = SUITES[name]
    env = os.environ.get(TOL_ENV)
    if env and suite.mode == "le":
        return float(env)
    return suite.tol


# random inputs --------------------------------------------------------------

def _fpoint(rng) -> FPoint:
    return FPoint(complex_normal(rng, (2, 2)), complex_normal(rng, 2))


def _gpoint(rng) -> GPoint:
    return GPoint(complex_normal(rng, (2, 2)), np.outer(complex_normal(rng, 2), complex_normal(rng, 2)))


def _curve(rng, cfg, **kw):
    return random_null_curve(rng, cfg.degree_bounds, samples=cfg.sample_points, **kw)


def _rel(a, b) -> float:
    return float(np.linalg.norm(a - b) / max(1.0, np.linalg.norm(b)))


# trials ---------------------------------------------------------------------

def _identities(rng, cfg):
    H, b, db = complex_normal(rng, (3, 2, 2))
    return max(identities.antisymmetrization_residual(*complex_normal(rng, (2, 2))),
               identities.determinant_residual(H),
               identities.inverse_residual(H),
               identities.inverse_differential_residual(b, db),
               identities.seesaw_residual(complex_normal(rng, 2)))


def _roundtrip(rng, cfg):
    curve = _curve(rng, cfg, twistor_regular=True)
    worst = 0.0
    for s in cfg.sample_points:
        chi = curve.jet(s, DEFAULT_ORDER)
        back = kappa_inverse(kappa(chi))
        worst = max(worst, _rel(back.value, chi.value), _rel(back.derivative(1), chi.derivative(1)))
    return worst


def _locality(rng, cfg):
    m = random_map("degree2", rng)
    rep = selfdual.verify_locality_F(m, _fpoint(rng), 8, rng)
    if rep.failures:
        raise TwistorError(f"{rep.failures} curves hit a singular image")
    return rep.spread


def _psi_independence(rng, cfg):
    m = random_map("degree2", rng)
    p = _fpoint(rng)
    a = selfdual.apply_f1(m, p)
    psi = complex_normal(rng, 2) + complex_normal(rng) * p.pi
    b = selfdual.apply_f1(m, p, psi)
    return max(_rel(b.x, a.x), spinors.projective_distance(b.pi, a.pi))


def _moebius(rng, cfg):
    m = random_map("degree1", rng)
    p = _fpoint(rng)
    xi = selfdual.apply_f1(m, p).x
    other = selfdual.apply_f1(m, FPoint(p.x, complex_normal(rng, 2))).x
    return max(_rel(xi, selfdual.moebius_closed_form(m, p.x)), _rel(other, xi))


def _composition(rng, cfg):
    m1, m2 = random_map("degree1", rng), random_map("degree1", rng)
    p = _fpoint(rng)
    step = selfdual.apply_f1(m1, selfdual.apply_f1(m2, p))
    once = selfdual.apply_f1(m1.compose(m2), p)
    return max(_rel(step.x, once.x), spinors.projective_distance(step.pi, once.pi))


def _degree2(rng, cfg):
    m = random_map("degree2", rng)
    p = _fpoint(rng)
    pipe = selfdual.apply_f1(m, p)
    closed = selfdual.degree2_closed_form(m, p)
    ratio = selfdual.degree2_ratio_form(m, p, complex_normal(rng, 2))
    return max(_rel(closed.x, pipe.x), _rel(ratio, pipe.x), spinors.projective_distance(closed.pi, pipe.pi))


def _pi_dependence(rng, cfg):
    m = random_map("degree2", rng)
    p = _fpoint(rng)
    a = selfdual.apply_f1(m, p).x
    b = selfdual.apply_f1(m, FPoint(p.x, complex_normal(rng, 2))).x
    return _rel(a, b)


def _null_selfdual(kind):
    def trial(rng, cfg):
        m = random_map(kind, rng)
        curve = _curve(rng, cfg, twistor_regular=True)
        samples = selfdual.apply_to_curve(m, curve, cfg.sample_points)
        bad = [s.error for s in samples if not s.ok]
        if bad:
            raise TwistorError(bad[0])
        return max(max(s.null_residual, s.alpha_residual) for s in samples)
    return trial


def _causal_samples(rng, cfg):
    m = random_map("invariant", rng)
    curve = _curve(rng, cfg)
    samples = causal.apply_causal_to_curve(m, curve, cfg.sample_points)
    bad = [s.error for s in samples if not s.ok]
    if bad:
        raise TwistorError(bad[0])
    return samples


def _null_causal(rng, cfg):
    return max(s.null_residual for s in _causal_samples(rng, cfg))


def _causal_consistency(rng, cfg):
    return max(s.consistency_residual for s in _causal_samples(rng, cfg))


def _causal_routes(rng, cfg):
    m = random_map("invariant", rng)
    g = _gpoint(rng)
    a = causal.apply_causal(m, g, closed_form=True)
    b = causal.apply_causal(m, g, closed_form=False)
    return max(_rel(a.x, b.x), spinors.projective_distance(a.v, b.v))


def _causal_invariance(rng, cfg):
    m = random_map("invariant", rng)
    p, lift = causal.lift_g_point(_gpoint(rng))
    u = complex_normal(rng, (2, 2))
    a = causal.apply_causal_lift(m, p, lift)
    b = causal.apply_causal_lift(m, p.right_act(u), lift.right_act(u))
    return max(_rel(b.x, a.x), spinors.projective_distance(b.v, a.v))


def _causal_locality(rng, cfg):
    m = random_map("invariant", rng)
    g = _gpoint(rng)
    c1, c2 = make_tangent_family(g, rng, 2)
    x1, v1 = causal.causal_image_jet(m, c1, 0.0)
    x2, v2 = causal.causal_image_jet(m, c2, 0.0)
    return max(_rel(x2.value, x1.value), spinors.projective_distance(x1.derivative(1), x2.derivative(1)),
               spinors.projective_distance(v1, v2))


def _nonlocality(kind):
    def trial(rng, cfg):
        return causal.demonstrate_nonlocality(random_map(kind, rng), rng).direction_distance
    return trial


def beta_plane_ratio(rng, h: float = 1e-2) -> float:
    """Ratio of first-order errors of the beta-plane chart at ``h`` and ``h/2``."""
    p, lift = causal.lift_g_point(_gpoint(rng))
    p = p.right_act(complex_normal(rng, (2, 2)))
    delta = complex_normal(rng, 2)
    errs = [np.linalg.norm(causal.beta_plane_point(p, lift, delta, t) - causal.beta_plane_first_order(p, lift, delta, t))
            for t in (h, h / 2)]
    return float(errs[0] / errs[1])


def _beta_plane(rng, cfg):
    return abs(beta_plane_ratio(rng) - 4.0)


SUITES: dict[str, Suite] = {
    "appendix-identities": Suite(_identities, 1e-12, description="spinor identities used in the simplifications"),
    "roundtrip": Suite(_roundtrip, 1e-9, description="kappa^-1 o kappa on random null curves"),
    "locality": Suite(_locality, 1e-9, description="alpha-tangent curves share image point and pi~"),
    "psi-independence": Suite(_psi_independence, 1e-10, description="self-dual image does not depend on psi"),
    "moebius": Suite(_moebius, 1e-10, description="degree-1 pipeline equals the Moebius form, pi-independent"),
    "composition": Suite(_composition, 1e-10, description="morphism of a product equals the composite"),
    "degree2": Suite(_degree2, 1e-9, description="quadratic closed form, ratio form and pipeline agree"),
    "pi-dependence": Suite(_pi_dependence, 1e-3, "gt", 0.95, "quadratic image point depends on pi"),
    "null-selfdual-1": Suite(_null_selfdual("degree1"), 1e-9, description="degree-1 image tangents are null"),
    "null-selfdual-2": Suite(_null_selfdual("degree2"), 1e-9, description="degree-2 image tangents are null"),
    "null-causal": Suite(_null_causal, 1e-9, description="causal image tangents are null"),
    "causal-routes": Suite(_causal_routes, 1e-9, description="closed causal form equals slot-by-slot route"),
    "causal-invariance": Suite(_causal_invariance, 1e-10, description="causal image invariant under right action"),
    "causal-consistency": Suite(_causal_consistency, 1e-8, description="image tangent along output direction"),
    "causal-locality": Suite(_causal_locality, 1e-9, description="curves with equal 1-jets have equal image 1-jets"),
    "nonlocality": Suite(_nonlocality("degree2"), 1e-3, "gt", 0.95, "naive quadratic construction sees 2-jets"),
    "nonlocality-degree1": Suite(_nonlocality("degree1"), 1e-10, description="naive linear construction is local"),
    "beta-plane": Suite(_beta_plane, 0.5, description="chart error ratio under halving is near 4"),
}


def _run_trial(suite: Suite, cfg: SuiteConfig, tol: float, index: int):
    rng = make_rng(cfg.seed, index)
    try:
        r = float(suite.trial(rng, cfg))
    except TwistorError as exc:
        return index, math.nan, type(exc).__name__
    ok = r <= tol if suite.mode == "le" else r > tol
    return index, r, None if ok else "tolerance"


def run_suite(cfg: SuiteConfig, workers: int = 1) -> SuiteReport:
    cfg.validate()
    suite = SUITES[cfg.suite_name]
    tol = cfg.tol
    start = time.perf_counter()
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            results = list(pool.map(lambda i: _run_trial(suite, cfg, tol, i), range(cfg.trials)))
    else:
        results = [_run_trial(suite, cfg, tol, i) for i in range(cfg.trials)]
    finite = [r for _, r, _ in results if not math.isnan(r)]
    failures = [{"seed_index": i, "residual": None if math.isnan(r) else r, "error_kind": kind}
                for i, r, kind in results if kind is not None]
    return SuiteReport(
        suite_name=cfg.suite_name,
        trials=cfg.trials,
        pass_count=cfg.trials - len(failures),
        max_residual=max(finite) if finite else math.nan,
        min_residual=min(finite) if finite else math.nan,
        failures=failures,
        wall_time=time.perf_counter() - start,
        tolerance=tol,
        mode=suite.mode,
        required_fraction=suite.required_fraction,
    )
