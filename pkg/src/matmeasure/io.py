"""JSON encoding.  Complex numbers are ``[re, im]`` pairs, matrices are
row-major lists of pairs, infinities are the strings ``"inf"``/``"-inf"``."""
from __future__ import annotations

import json
import math
from typing import Any

import numpy as np

from .borel import Interval
from .cyclic import HermitianOperator, VectorSystem
from .errors import ParseError
from .l2 import VectorFunction
from .measure import MatrixMeasure


def complex_to_json(z) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def complex_from_json(x, where: str = "") -> complex:
    if isinstance(x, (int, float)):
        return complex(x)
    if isinstance(x, list) and len(x) == 2 and all(isinstance(v, (int, float)) for v in x):
        return complex(x[0], x[1])
    raise ParseError(f"expected a number or [re, im] pair, got {x!r}", where or None)


def array_to_json(a) -> Any:
    a = np.asarray(a, dtype=complex)
    if a.ndim == 0:
        return complex_to_json(a)
    return [array_to_json(row) for row in a]


def array_from_json(x, ndim: int, where: str = "") -> np.ndarray:
    if ndim == 0:
        return np.asarray(complex_from_json(x, where))
    if not isinstance(x, list):
        raise ParseError(f"expected a list, got {type(x).__name__}", where or None)
    rows = [array_from_json(v, ndim - 1, f"{where}[{i}]") for i, v in enumerate(x)]
    if ndim > 1 and len({r.shape for r in rows}) > 1:
        raise ParseError("ragged array", where or None)
    return np.array(rows, dtype=complex).reshape((len(rows),) + (rows[0].shape if rows else (0,) * (ndim - 1)))


def real_to_json(x: float):
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return float(x)


def real_from_json(x, where: str = "") -> float:
    if isinstance(x, str) and x.strip().lower() in ("inf", "+inf", "-inf"):
        return -math.inf if x.strip().startswith("-") else math.inf
    if isinstance(x, (int, float)) and not isinstance(x, bool):
        return float(x)
    raise ParseError(f"expected a real number, got {x!r}", where or None)


def _require(obj: dict, key: str, where: str):
    if not isinstance(obj, dict) or key not in obj:
        raise ParseError(f"missing key {key!r}", where or "<root>")
    return obj[key]


def measure_to_json(M: MatrixMeasure) -> dict:
    return {
        "d": M.d,
        "atoms": [{"t": at.t, "weight": array_to_json(at.weight)} for at in M.atoms],
        "segments": [{"a": s.a, "b": s.b, "density": array_to_json(s.density)} for s in M.segments],
    }


def measure_from_json(obj: dict) -> MatrixMeasure:
    d = _require(obj, "d", "")
    if not isinstance(d, int) or d < 1:
        raise ParseError("d must be a positive integer", "d")
    atoms = [
        (real_from_json(_require(a, "t", f"atoms[{i}]"), f"atoms[{i}].t"),
         array_from_json(_require(a, "weight", f"atoms[{i}]"), 2, f"atoms[{i}].weight"))
        for i, a in enumerate(obj.get("atoms", []))
    ]
    segments = [
        (real_from_json(_require(s, "a", f"segments[{i}]"), f"segments[{i}].a"),
         real_from_json(_require(s, "b", f"segments[{i}]"), f"segments[{i}].b"),
         array_from_json(_require(s, "density", f"segments[{i}]"), 2, f"segments[{i}].density"))
        for i, s in enumerate(obj.get("segments", []))
    ]
    return MatrixMeasure(d, atoms, segments)


def function_to_json(f: VectorFunction) -> dict:
    return {
        "d": f.d,
        "atoms": {repr(float(t)): array_to_json(v) for t, v in sorted(f.atom_values.items())},
        "segments": [
            {"a": real_to_json(iv.lo), "b": real_to_json(iv.hi),
             "a_closed": bool(iv.lo_closed), "b_closed": bool(iv.hi_closed),
             "polys": array_to_json(c)}
            for iv, c in f.pieces
        ],
    }


def function_from_json(obj: dict) -> VectorFunction:
    d = _require(obj, "d", "")
    values = {}
    for key, v in obj.get("atoms", {}).items():
        try:
            t = float(key)
        except ValueError:
            raise ParseError(f"atom key {key!r} is not a number", "atoms") from None
        values[t] = array_from_json(v, 1, f"atoms[{key}]")
    pieces = []
    for i, s in enumerate(obj.get("segments", [])):
        lo = real_from_json(_require(s, "a", f"segments[{i}]"))
        hi = real_from_json(_require(s, "b", f"segments[{i}]"))
        iv = Interval(lo, hi, s.get("a_closed", not math.isinf(lo)), s.get("b_closed", not math.isinf(hi)))
        pieces.append((iv, array_from_json(_require(s, "polys", f"segments[{i}]"), 2, f"segments[{i}].polys")))
    return VectorFunction(d, values, pieces)


def operator_to_json(A: HermitianOperator, phi: VectorSystem) -> dict:
    return {"matrix": array_to_json(A.matrix), "vectors": array_to_json(phi.columns.T)}


def operator_from_json(obj: dict) -> tuple[HermitianOperator, VectorSystem | None]:
    A = HermitianOperator(array_from_json(_require(obj, "matrix", ""), 2, "matrix"))
    vecs = obj.get("vectors", [])
    if not vecs:
        return A, None
    arr = array_from_json(vecs, 2, "vectors")
    return A, VectorSystem(list(arr))


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def load_path(path: str) -> Any:
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON in {path}: {exc.msg}", f"line {exc.lineno} col {exc.colno}") from None
