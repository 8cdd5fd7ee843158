"""Multiplication operators ``T_F [f] = [F f]`` on ``L^2(M)``.

Pointwise work (``apply``) accepts any piecewise polynomial symbol.  Set-level
work (spectra, preimages, projections) needs the symbol to be real and affine
wherever it meets a measure segment; at atoms it is only ever evaluated.
"""
from __future__ import annotations

import ast
import re
import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as P

from .borel import (
    AFFINE_TOL,
    BorelSet,
    affine_coefficients,
    intersect,
    parse_set,
    preimage,
    set_minus,
    union,
    union_all,
)
from .errors import InSpectrum, ParseError, TrivialSpace, UnsupportedFunction, ValidationError
from .l2 import VectorFunction, _coeffs
from .measure import MatrixMeasure, restrict


def _poly(c) -> np.ndarray:
    c = np.atleast_1d(np.asarray(c, dtype=complex))
    return c if c.size else np.zeros(1, dtype=complex)


class PiecewiseScalarFn:
    """Scalar symbol: polynomials on disjoint Borel pieces, zero elsewhere."""

    def __init__(self, pieces=()):
        ps = []
        seen = BorelSet()
        for S, c in pieces:
            if not intersect(seen, S).is_empty():
                raise ValidationError("symbol pieces must be disjoint")
            seen = union(seen, S)
            ps.append((S, _poly(c)))
        self.pieces = tuple(ps)

    def __repr__(self):
        return "PiecewiseScalarFn(%s)" % "; ".join(f"{S}: {np.round(c, 12).tolist()}" for S, c in self.pieces)

    @classmethod
    def polynomial(cls, coeffs) -> "PiecewiseScalarFn":
        return cls([(BorelSet.real_line(), coeffs)])

    @classmethod
    def identity(cls) -> "PiecewiseScalarFn":
        return cls.polynomial([0.0, 1.0])

    @classmethod
    def constant(cls, c: complex) -> "PiecewiseScalarFn":
        return cls.polynomial([c])

    @classmethod
    def indicator(cls, S: BorelSet) -> "PiecewiseScalarFn":
        return cls([(S, [1.0])]) if S else cls()

    def __call__(self, t: float) -> complex:
        for S, c in self.pieces:
            if t in S:
                return complex(P.polyval(t, c))
        return 0j

    def conj(self) -> "PiecewiseScalarFn":
        return PiecewiseScalarFn([(S, c.conj()) for S, c in self.pieces])

    def __mul__(self, other: "PiecewiseScalarFn") -> "PiecewiseScalarFn":
        pieces = []
        for S, c in self.pieces:
            for T, e in other.pieces:
                cut = intersect(S, T)
                if cut:
                    pieces.append((cut, P.polymul(c, e)))
        return PiecewiseScalarFn(pieces)

    def shift(self, lam: complex) -> "PiecewiseScalarFn":
        """``F - lam`` everywhere (including off the pieces)."""
        covered = union_all([S for S, _ in self.pieces])
        pieces = [(S, P.polysub(c, [lam])) for S, c in self.pieces]
        rest = set_minus(BorelSet.real_line(), covered)
        if rest:
            pieces.append((rest, [-lam]))
        return PiecewiseScalarFn(pieces)


@dataclass(frozen=True)
class MultOp:
    measure: MatrixMeasure
    symbol: PiecewiseScalarFn

    @classmethod
    def identity(cls, M: MatrixMeasure) -> "MultOp":
        return cls(M, PiecewiseScalarFn.identity())


def apply(op: MultOp, f: VectorFunction) -> VectorFunction:
    """Pointwise product ``F f``; pieces of ``f`` are split where ``F`` changes."""
    F = op.symbol
    pieces, values = [], {}
    for iv, c in f.pieces:
        for S, p in F.pieces:
            cut = intersect(BorelSet((iv,)), S)
            if not cut:
                continue
            rows = [P.polymul(p, row) for row in c]
            width = max(r.size for r in rows)
            prod = np.array([np.pad(r, (0, width - r.size)) for r in rows])
            for sub in cut.intervals:
                pieces.append((sub, _coeffs(prod, f.d)))
            for t in cut.points:
                values[t] = F(t) * f(t)
    for t in list(f.atom_values) + op.measure.atom_points:
        values[t] = F(t) * f(t)
    return VectorFunction(f.d, values, pieces)


def _real_value(v: complex) -> float:
    if abs(v.imag) > AFFINE_TOL * (1.0 + abs(v)):
        raise UnsupportedFunction(f"symbol takes the non-real value {v} on the support")
    return float(v.real)


def _segment_parts(op: MultOp):
    """Yield (segment, [(interval, slope, offset)], uncovered_length) per segment."""
    for seg in op.measure.segments:
        S = seg.interval
        covered = BorelSet()
        parts = []
        for piece, c in op.symbol.pieces:
            cut = intersect(piece, S)
            covered = union(covered, cut)
            if not cut.intervals:
                continue
            ab = affine_coefficients(c)
            if ab is None:
                raise UnsupportedFunction("set-level spectral data needs a real affine symbol on every segment")
            parts.extend((iv, ab[0], ab[1]) for iv in cut.intervals)
        rest = set_minus(S, covered)
        yield seg, parts, sum(iv.length for iv in rest.intervals)


def essential_values(op: MultOp) -> BorelSet:
    """``VE_M(F)``: closed set of values ``F`` takes on non-null parts of ``M``."""
    F = op.symbol
    found = [BorelSet.point(*[_real_value(F(t)) for t in op.measure.atom_points])]
    for _, parts, uncovered in _segment_parts(op):
        for iv, slope, offset in parts:
            ends = (slope * iv.lo + offset, slope * iv.hi + offset)
            found.append(BorelSet.interval(min(ends), max(ends)))
        if uncovered > 0:
            found.append(BorelSet.point(0.0))
    return union_all(found)


def spectrum(op: MultOp) -> BorelSet:
    if op.measure.is_empty():
        raise TrivialSpace("L^2 of the empty measure is {0}")
    return essential_values(op)


def point_spectrum(op: MultOp) -> BorelSet:
    """Values whose level set has positive trace measure."""
    F = op.symbol
    pts = [_real_value(F(t)) for t in op.measure.atom_points]
    for _, parts, uncovered in _segment_parts(op):
        pts.extend(offset for _, slope, offset in parts if slope == 0)
        if uncovered > 0:
            pts.append(0.0)
    return BorelSet.point(*pts)


def op_norm(op: MultOp) -> float:
    ve = essential_values(op)
    vals = [abs(p) for p in ve.points]
    vals += [max(abs(iv.lo), abs(iv.hi)) for iv in ve.intervals]
    return max(vals, default=0.0)


def adjoint_symbol(op: MultOp) -> MultOp:
    return MultOp(op.measure, op.symbol.conj())


def distance_to_set(z: complex, s: BorelSet) -> float:
    """Distance from a complex number to a subset of the real line."""
    best = math.inf
    for p in s.points:
        best = min(best, abs(z - p))
    for iv in s.intervals:
        x = min(max(z.real, iv.lo), iv.hi)
        best = min(best, abs(z - x))
    return best


@dataclass(frozen=True)
class Resolvent:
    """``H(t) = 1 / (F(t) - lam)`` with ``||T_H|| = 1 / distance``."""

    symbol: PiecewiseScalarFn
    lam: complex
    distance: float

    def __call__(self, t: float) -> complex:
        return 1.0 / (self.symbol(t) - self.lam)

    @property
    def norm_bound(self) -> float:
        return 0.0 if math.isinf(self.distance) else 1.0 / self.distance


def resolvent_symbol(op: MultOp, lam: complex, tol: float = 1e-10) -> Resolvent:
    lam = complex(lam)
    delta = distance_to_set(lam, essential_values(op))
    if delta <= tol:
        raise InSpectrum(f"{lam} lies in the spectrum")
    return Resolvent(op.symbol, lam, delta)


def spectral_domain(op: MultOp, omega: BorelSet) -> BorelSet:
    """``F^{-1}(omega)`` intersected with the support of the measure."""
    return preimage(op.symbol, omega, op.measure.support())


def spectral_projection(op: MultOp, omega: BorelSet) -> MultOp:
    return MultOp(op.measure, PiecewiseScalarFn.indicator(spectral_domain(op, omega)))


def part_in_G(op: MultOp, G: BorelSet) -> MultOp:
    """``T_F`` restricted to ``Ran E(G)``, realized on ``restrict(M, F^{-1}(G))``."""
    return MultOp(restrict(op.measure, spectral_domain(op, G)), op.symbol)


# symbol grammar: polynomials in x, optionally piecewise  { [0,1]: 2*x+1 ; {2}: 5 }

def parse_symbol(text: str) -> PiecewiseScalarFn:
    text = text.strip()
    if text.startswith("{") and ":" in text:
        if not text.endswith("}"):
            raise ParseError("piecewise symbol must end with '}'", len(text))
        pieces = []
        for clause in text[1:-1].split(";"):
            if not clause.strip():
                continue
            if ":" not in clause:
                raise ParseError(f"clause {clause.strip()!r} needs 'set: expression'")
            where, expr = clause.rsplit(":", 1)
            pieces.append((parse_set(where), parse_polynomial(expr)))
        return PiecewiseScalarFn(pieces)
    return PiecewiseScalarFn.polynomial(parse_polynomial(text))


# "2i" or "0.5i" means 2*i; Python's own "2j" is left alone
_IMAG_LITERAL = re.compile(r"(?<![\w.])(\d+(?:\.\d*)?(?:[eE][-+]?\d+)?)i\b")


def parse_polynomial(text: str) -> np.ndarray:
    """Ascending coefficients of a polynomial in ``x`` (``i`` or ``1j`` for sqrt(-1))."""
    try:
        src = _IMAG_LITERAL.sub(r"\1*i", text.strip().replace("^", "**"))
        tree = ast.parse(src, mode="eval")
    except SyntaxError as exc:
        raise ParseError(f"bad expression {text.strip()!r}", exc.offset) from None
    return _trim(_poly_eval(tree.body, text))


def _trim(c: np.ndarray) -> np.ndarray:
    c = np.atleast_1d(c)
    while c.size > 1 and c[-1] == 0:
        c = c[:-1]
    return c


def _poly_eval(node, text):
    if isinstance(node, ast.Constant) and isinstance(node.value, (int, float, complex)):
        return np.array([complex(node.value)])
    if isinstance(node, ast.Name):
        if node.id == "x":
            return np.array([0j, 1 + 0j])
        if node.id == "i":
            return np.array([1j])
        raise ParseError(f"unknown name {node.id!r} in {text.strip()!r}", node.col_offset)
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _poly_eval(node.operand, text)
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.BinOp):
        left = _poly_eval(node.left, text)
        if isinstance(node.op, ast.Pow):
            right = _poly_eval(node.right, text)
            n = right[0].real if right.size == 1 else -1
            if right.size != 1 or right[0].imag != 0 or n < 0 or n != int(n):
                raise ParseError("exponents must be non-negative integers", node.col_offset)
            return P.polypow(left, int(n))
        right = _poly_eval(node.right, text)
        if isinstance(node.op, ast.Add):
            return P.polyadd(left, right)
        if isinstance(node.op, ast.Sub):
            return P.polysub(left, right)
        if isinstance(node.op, ast.Mult):
            return P.polymul(left, right)
        if isinstance(node.op, ast.Div):
            if _trim(right).size != 1 or right[0] == 0:
                raise ParseError("can only divide by a non-zero constant", node.col_offset)
            return left / right[0]
    raise ParseError(f"unsupported syntax in {text.strip()!r}", getattr(node, "col_offset", None))
