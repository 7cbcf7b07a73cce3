"""Command line entry point.

Exit codes: 0 success, 1 usage error or unreadable file, 2 singular input,
3 verification suite failure.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import serialization as io
from .causal import apply_causal, apply_causal_to_curve, demonstrate_nonlocality
from .correspondence import kappa
from .curves import FPoint, GPoint, NullCurve, random_null_curve
from .endomorphisms import Degree1Map, Degree2Map, InvariantCausalMap, random_map
from .errors import SingularInputError, TwistorError
from .harness import SUITES, SuiteConfig, run_suite
from .jets import DEFAULT_ORDER
from .seeding import sample_points
from .selfdual import apply_f1, apply_to_curve

EXIT_USAGE, EXIT_SINGULAR, EXIT_SUITE = 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _complex(text: str) -> complex:
    try:
        return complex(text.replace(" ", ""))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}")


def _load(path, *types):
    try:
        obj = io.load(path)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror or exc}")
    except SingularInputError:
        raise
    except (ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"{path}: malformed input ({exc})")
    if types and not isinstance(obj, types):
        names = " or ".join(t.__name__ for t in types)
        raise UsageError(f"{path}: expected {names}, got {type(obj).__name__}")
    return obj


def _emit(payload: dict, out=None):
    text = json.dumps(payload, indent=1)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _residual(v):
    return None if v is None else float(v)


def cmd_gen_curve(args):
    pi_degree = args.degree if args.pi_degree is None else args.pi_degree
    curve = random_null_curve(args.seed, (args.degree, pi_degree))
    _emit(io.to_dict(curve), args.out)
    return 0


def cmd_kappa(args):
    curve = _load(args.curve, NullCurve)
    z = kappa(curve.jet(args.at, args.order))
    _emit(io.twistor_jet_to_dict(z, args.at), args.out)
    return 0


def cmd_map_sd(args):
    m = _load(args.map, Degree1Map, Degree2Map)
    if args.point:
        p = _load(args.point, FPoint)
        img = apply_f1(m, p)
        _emit({"input": io.to_dict(p), "image": io.to_dict(img)}, args.out)
        return 0
    curve = _load(args.curve, NullCurve)
    s_values = sample_points(args.samples)
    samples = apply_to_curve(m, curve, s_values)
    rows = []
    for s in samples:
        row = {"s": io.encode_complex(s.s), "error": s.error}
        if s.ok:
            row.update(xi=io.encode_complex(s.xi), pi_tilde=io.encode_complex(s.pi_tilde),
                       null_residual=s.null_residual, alpha_residual=s.alpha_residual)
        rows.append(row)
    if args.csv:
        ok = [s for s in samples if s.ok]
        io.write_curve_csv(args.csv, [s.s for s in ok], [s.xi for s in ok])
    _emit({"samples": rows}, args.out)
    return EXIT_SINGULAR if all(not s.ok for s in samples) else 0


def cmd_map_causal(args):
    m = _load(args.map, InvariantCausalMap)
    if args.gpoint:
        g = _load(args.gpoint, GPoint)
        img = apply_causal(m, g)
        _emit({"input": io.to_dict(g), "image": io.to_dict(img)}, args.out)
        return 0
    curve = _load(args.curve, NullCurve)
    s_values = sample_points(args.samples)
    samples = apply_causal_to_curve(m, curve, s_values)
    rows = []
    for s in samples:
        row = {"s": io.encode_complex(s.s), "error": s.error}
        if s.ok:
            row.update(xi=io.encode_complex(s.xi), v=io.encode_complex(s.v),
                       null_residual=_residual(s.null_residual),
                       consistency_residual=_residual(s.consistency_residual))
        rows.append(row)
    if args.csv:
        ok = [s for s in samples if s.ok]
        io.write_curve_csv(args.csv, [s.s for s in ok], [s.xi for s in ok])
    _emit({"samples": rows}, args.out)
    return EXIT_SINGULAR if all(not s.ok for s in samples) else 0


def _report(cfg, args):
    report = run_suite(cfg, workers=args.workers)
    if args.json:
        print(json.dumps(report.to_dict(wall_time=not args.no_time), indent=1))
    else:
        status = "PASS" if report.passed else "FAIL"
        print(f"{status} {report.suite_name}: {report.pass_count}/{report.trials} trials, "
              f"max residual {report.max_residual:.3e} (tol {report.tolerance:g})")
    return 0 if report.passed else EXIT_SUITE


def cmd_verify(args):
    tolerances = {} if args.tol is None else {"default": args.tol}
    degrees = (args.degree, args.degree if args.pi_degree is None else args.pi_degree)
    cfg = SuiteConfig(args.suite, args.trials, args.seed, tolerances, degree_bounds=degrees)
    return _report(cfg, args)


def cmd_identities(args):
    return _report(SuiteConfig("appendix-identities", args.trials, args.seed), args)


def cmd_nonlocality(args):
    if args.map:
        m = _load(args.map, Degree1Map, Degree2Map)
    else:
        m = random_map("degree2", args.seed)
    rep = demonstrate_nonlocality(m, args.seed)
    payload = {"map_degree": m.degree, "direction_distance": rep.direction_distance,
               "point_gap": rep.point_gap, "one_jet_gap": rep.one_jet_gap}
    if args.json:
        print(json.dumps(payload, indent=1))
    else:
        print(f"curves share their 1-jet (gap {rep.one_jet_gap:.1e}); image points differ by {rep.point_gap:.1e}")
        print(f"image null directions differ by {rep.direction_distance:.3e}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="twistor-morphisms", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("gen-curve", help="random regular polynomial null curve")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--degree", type=int, default=1, help="degree of lambda (and pi unless --pi-degree)")
    p.add_argument("--pi-degree", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen_curve)

    p = sub.add_parser("kappa", help="twistor jet of a curve at a parameter value")
    p.add_argument("--curve", required=True)
    p.add_argument("--at", type=_complex, default=0j)
    p.add_argument("--order", type=int, default=DEFAULT_ORDER)
    p.add_argument("--out")
    p.set_defaults(func=cmd_kappa)

    p = sub.add_parser("map-sd", help="apply a self-dual morphism")
    p.add_argument("--map", required=True)
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--point")
    src.add_argument("--curve")
    p.add_argument("--samples", type=int, default=8)
    p.add_argument("--csv", help="also write sampled image points as CSV")
    p.add_argument("--out")
    p.set_defaults(func=cmd_map_sd)

    p = sub.add_parser("map-causal", help="apply the causal morphism of an invariant map")
    p.add_argument("--map", required=True)
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--gpoint")
    src.add_argument("--curve")
    p.add_argument("--samples", type=int, default=8)
    p.add_argument("--csv")
    p.add_argument("--out")
    p.set_defaults(func=cmd_map_causal)

    for name, func, help_ in [("verify", cmd_verify, "run a seeded property suite"),
                              ("identities", cmd_identities, "spinor identity battery")]:
        p = sub.add_parser(name, help=help_)
        if name == "verify":
            p.add_argument("--suite", required=True, choices=sorted(SUITES))
            p.add_argument("--tol", type=float)
            p.add_argument("--degree", type=int, default=1)
            p.add_argument("--pi-degree", type=int)
        p.add_argument("--trials", type=int, default=100 if name == "verify" else 1000)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--workers", type=int, default=1)
        p.add_argument("--json", action="store_true", help="machine-readable report on stdout")
        p.add_argument("--no-time", action="store_true", help="omit wall_time from the JSON report")
        p.set_defaults(func=func)

    p = sub.add_parser("nonlocality-demo", help="the naive causal construction sees second derivatives")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--map")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_nonlocality)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # --help or a usage error
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SingularInputError as exc:
        print(f"singular input: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_SINGULAR
    except TwistorError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
