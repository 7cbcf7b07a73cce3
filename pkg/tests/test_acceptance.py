"""Acceptance criteria, one test each.

Every test records a one-line PASS/FAIL verdict that is printed in the
terminal summary, with the measured residuals next to the thresholds.
"""

import json
import subprocess
import sys

import numpy as np
import pytest

from twistor_morphisms.correspondence import kappa, kappa_inverse
from twistor_morphisms.curves import NullCurve
from twistor_morphisms.errors import SingularCorrespondenceError
from twistor_morphisms.harness import SuiteConfig, run_suite
from twistor_morphisms.seeding import complex_normal, make_rng

from conftest import ACCEPTANCE_LINES

SEED = 20260101


def suite(name, trials, **kw):
    return run_suite(SuiteConfig(name, trials, SEED, **kw))


def describe(rep):
    if rep.mode == "gt":
        return (f"{rep.suite_name} {rep.pass_count}/{rep.trials} above {rep.tolerance:g} "
                f"(need {rep.required_fraction:.0%}, smallest {rep.min_residual:.2e})")
    return f"{rep.suite_name} {rep.pass_count}/{rep.trials} (max residual {rep.max_residual:.2e}, tol {rep.tolerance:g})"


def verdict(number, title, ok, details):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number:2d}: {title} -- {'; '.join(details)}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def check(number, title, reports, extra=()):
    ok = all(r.passed for r in reports) and all(e[0] for e in extra)
    verdict(number, title, ok, [describe(r) for r in reports] + [e[1] for e in extra])


def test_criterion_01_identity_battery():
    check(1, "spinor identity battery", [suite("appendix-identities", 1000)])


def test_criterion_02_shaw_round_trip():
    rep = suite("roundtrip", 100, degree_bounds=(2, 2))
    raised = 0
    for i in range(20):
        rng = make_rng(SEED, 10_000 + i)
        curve = NullCurve(complex_normal(rng, (2, 2)), complex_normal(rng, (3, 2)), complex_normal(rng, (1, 2)))
        try:
            kappa_inverse(kappa(curve.jet(0.3, 3)))
        except SingularCorrespondenceError:
            raised += 1
    check(2, "kappa round trip", [rep], [(raised == 20, f"constant-pi curves rejected {raised}/20")])


def test_criterion_03_locality():
    check(3, "self-dual locality and psi independence",
          [suite("locality", 100), suite("psi-independence", 1000)])


def test_criterion_04_conformal_reduction():
    check(4, "degree-1 reduction to Moebius maps", [suite("moebius", 1000), suite("composition", 1000)])


def test_criterion_05_degree2_closed_form():
    check(5, "quadratic closed form", [suite("degree2", 1000), suite("pi-dependence", 100)])


def test_criterion_06_null_preservation():
    check(6, "image tangents are null",
          [suite("null-selfdual-1", 100), suite("null-selfdual-2", 100), suite("null-causal", 100)])


def test_criterion_07_causal_morphism():
    check(7, "causal morphism correctness",
          [suite("causal-routes", 100), suite("causal-invariance", 1000),
           suite("causal-consistency", 100), suite("causal-locality", 100)])


def test_criterion_08_negative_control():
    check(8, "naive construction is nonlocal", [suite("nonlocality", 100), suite("nonlocality-degree1", 100)])


def test_criterion_09_beta_plane():
    check(9, "beta-plane chart is first-order exact", [suite("beta-plane", 100)])


def _verify(*extra):
    cmd = [sys.executable, "-m", "twistor_morphisms", "verify", "--suite", "degree2", "--trials", "200",
           "--seed", str(SEED), "--json", "--no-time", *extra]
    res = subprocess.run(cmd, capture_output=True, text=True, check=False)
    return res.returncode, res.stdout


def test_criterion_10_determinism():
    runs = [_verify(), _verify(), _verify("--workers", "4")]
    same = runs[0] == runs[1] == runs[2]
    parsed = json.loads(runs[0][1])
    verdict(10, "verify reports are reproducible", same and runs[0][0] == 0,
            [f"two runs identical: {runs[0] == runs[1]}", f"1 vs 4 workers identical: {runs[0] == runs[2]}",
             f"pass_count {parsed['pass_count']}/{parsed['trials']}"])
