"""JSON and CSV formats.

Complex numbers are written as ``[re, im]`` pairs; arrays become nested
lists of pairs.  Floats go through ``json`` which emits the shortest repr
that round-trips, so decoding reproduces every double bit for bit.

Schemas (all arrays complex)::

    curve        {"kind": "null-curve", "base": 2x2, "lambda": (d+1)x2, "pi": (e+1)x2}
    twistor jet  {"kind": "twistor-jet", "s0": c, "order": K, "coeffs": (K+1)x4}
    degree-1 map {"kind": "degree1", "F": 4x4}
    degree-2 map {"kind": "degree2", "F": 2x4x4, "G": 2x4x4}
    invariant    {"kind": "invariant", "A": 2x2x2, "B": 2, ..., "G": 2x2x2, "H": 2}
    F point      {"kind": "fpoint", "x": 2x2, "pi": 2}
    G point      {"kind": "gpoint", "x": 2x2, "v": 2x2}
    BP1 point    {"kind": "bp1", "b0": 2x2, "b1": 2x2}
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from .causal import BP1Point
from .curves import FPoint, GPoint, NullCurve
from .endomorphisms import Degree1Map, Degree2Map, InvariantCausalMap
from .jets import Jet


def encode_complex(a):
    a = np.asarray(a, dtype=complex)
    return np.stack([a.real, a.imag], axis=-1).tolist()


def decode_complex(obj) -> np.ndarray:
    a = np.asarray(obj, dtype=float)
    if a.shape[-1] != 2:
        raise ValueError("complex values must be [re, im] pairs")
    out = np.empty(a.shape[:-1], dtype=complex)
    out.real, out.imag = a[..., 0], a[..., 1]  # keeps signed zeros
    return out


def to_dict(obj) -> dict:
    if isinstance(obj, NullCurve):
        return {"kind": "null-curve", "base": encode_complex(obj.base),
                "lambda": encode_complex(obj.lam), "pi": encode_complex(obj.pi)}
    if isinstance(obj, Degree1Map):
        return {"kind": "degree1", "F": encode_complex(obj.F)}
    if isinstance(obj, Degree2Map):
        return {"kind": "degree2", "F": encode_complex(obj.F_tensors), "G": encode_complex(obj.G_tensors)}
    if isinstance(obj, InvariantCausalMap):
        d = {"kind": "invariant"}
        d.update({n: encode_complex(getattr(obj, n)) for n in "ABCDEFGH"})
        return d
    if isinstance(obj, FPoint):
        return {"kind": "fpoint", "x": encode_complex(obj.x), "pi": encode_complex(obj.pi)}
    if isinstance(obj, GPoint):
        return {"kind": "gpoint", "x": encode_complex(obj.x), "v": encode_complex(obj.v)}
    if isinstance(obj, BP1Point):
        return {"kind": "bp1", "b0": encode_complex(obj.b0), "b1": encode_complex(obj.b1)}
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def twistor_jet_to_dict(z: Jet, s0) -> dict:
    return {"kind": "twistor-jet", "s0": encode_complex(s0), "order": z.order, "coeffs": encode_complex(z.coeffs)}


def from_dict(d: dict):
    kind = d.get("kind")
    if kind is None:
        kind = _guess_kind(d)
    c = decode_complex
    if kind == "null-curve":
        return NullCurve(c(d["base"]).reshape(2, 2), c(d["lambda"]), c(d["pi"]))
    if kind == "degree1":
        return Degree1Map(c(d["F"]))
    if kind == "degree2":
        return Degree2Map(c(d["F"]), c(d["G"]))
    if kind == "invariant":
        return InvariantCausalMap(*(c(d[n]) for n in "ABCDEFGH"))
    if kind == "fpoint":
        return FPoint(c(d["x"]), c(d["pi"]))
    if kind == "gpoint":
        return GPoint(c(d["x"]), c(d["v"]))
    if kind == "bp1":
        return BP1Point(c(d["b0"]), c(d["b1"]))
    if kind == "twistor-jet":
        return Jet(c(d["coeffs"]))
    raise ValueError(f"unknown object kind {kind!r}")


def _guess_kind(d: dict) -> str:
    keys = set(d)
    for kind, required in [("null-curve", {"base", "lambda", "pi"}), ("fpoint", {"x", "pi"}),
                           ("gpoint", {"x", "v"}), ("bp1", {"b0", "b1"}), ("degree2", {"F", "G"}),
                           ("invariant", set("ABCDEFGH")), ("degree1", {"F"}),
                           ("twistor-jet", {"coeffs"})]:
        if required <= keys:
            return kind
    raise ValueError("cannot infer the object kind from its keys")


def dumps(obj) -> str:
    return json.dumps(obj if isinstance(obj, dict) else to_dict(obj), indent=1)


def save(obj, path) -> None:
    Path(path).write_text(dumps(obj) + "\n")


def load(path):
    return from_dict(json.loads(Path(path).read_text()))


def write_curve_csv(path, s_values, points) -> None:
    """One row per sample: ``s_re, s_im`` then the four complex entries of the
    point as re/im pairs (row-major)."""
    header = ["s_re", "s_im"] + [f"x{a}{b}_{part}" for a in range(2) for b in range(2) for part in ("re", "im")]
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        for s, x in zip(s_values, points):
            row = [complex(s).real, complex(s).imag]
            for v in np.asarray(x, dtype=complex).ravel():
                row += [v.real, v.imag]
            w.writerow([repr(float(v)) for v in row])
