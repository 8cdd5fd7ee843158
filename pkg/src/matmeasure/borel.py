"""Finite unions of intervals and isolated points on the real line.

A set is stored in canonical form, so two sets are equal exactly when their
dataclass fields are equal.  All boolean operations go through one routine:
collect every endpoint and point of the operands, which cuts the line into
finitely many singletons and open gaps, evaluate membership on each cell,
combine, and rebuild maximal runs.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Callable, Iterable

import numpy as np

from .errors import ParseError, UnsupportedFunction, ValidationError

INF = math.inf


@dataclass(frozen=True, order=True)
class Interval:
    lo: float
    hi: float
    lo_closed: bool = True
    hi_closed: bool = True

    def __post_init__(self):
        if math.isnan(self.lo) or math.isnan(self.hi):
            raise ValidationError("interval endpoints must not be NaN")
        if not self.lo < self.hi:
            raise ValidationError(f"interval needs lo < hi, got {self.lo}, {self.hi}")
        if math.isinf(self.lo) and self.lo_closed or math.isinf(self.hi) and self.hi_closed:
            raise ValidationError("infinite endpoints are always open")

    def __contains__(self, x: float) -> bool:
        if x < self.lo or x > self.hi:
            return False
        if x == self.lo:
            return self.lo_closed
        if x == self.hi:
            return self.hi_closed
        return True

    @property
    def length(self) -> float:
        return self.hi - self.lo

    def closure(self) -> "Interval":
        return Interval(self.lo, self.hi, not math.isinf(self.lo), not math.isinf(self.hi))

    def __str__(self) -> str:
        return "%s%s,%s%s" % (
            "[" if self.lo_closed else "(",
            _fmt(self.lo),
            _fmt(self.hi),
            "]" if self.hi_closed else ")",
        )


def _fmt(x: float) -> str:
    if x == INF:
        return "inf"
    if x == -INF:
        return "-inf"
    return repr(float(x))


@dataclass(frozen=True)
class BorelSet:
    intervals: tuple = ()
    points: tuple = ()

    # constructors

    @classmethod
    def empty(cls) -> "BorelSet":
        return cls()

    @classmethod
    def real_line(cls) -> "BorelSet":
        return cls((Interval(-INF, INF, False, False),))

    @classmethod
    def interval(cls, lo: float, hi: float, lo_closed: bool = True, hi_closed: bool = True) -> "BorelSet":
        lo, hi = float(lo), float(hi)
        if lo == hi:
            return cls.point(lo) if lo_closed and hi_closed else cls()
        if lo > hi:
            return cls()
        return cls((Interval(lo, hi, lo_closed and not math.isinf(lo), hi_closed and not math.isinf(hi)),))

    @classmethod
    def point(cls, *xs: float) -> "BorelSet":
        return cls.from_parts((), xs)

    @classmethod
    def from_parts(cls, intervals: Iterable[Interval] = (), points: Iterable[float] = ()) -> "BorelSet":
        raw = _Raw(tuple(intervals), tuple(float(p) for p in points))
        return _rebuild(_cuts(raw), lambda x: raw.contains(x))

    # queries

    def __contains__(self, x: float) -> bool:
        return x in self.points or any(x in iv for iv in self.intervals)

    def contains(self, x: float) -> bool:
        return x in self

    def is_empty(self) -> bool:
        return not self.intervals and not self.points

    def __bool__(self) -> bool:
        return not self.is_empty()

    def issubset(self, other: "BorelSet") -> bool:
        return set_minus(self, other).is_empty()

    def is_bounded(self) -> bool:
        return all(not math.isinf(iv.lo) and not math.isinf(iv.hi) for iv in self.intervals)

    def __or__(self, other):
        return union(self, other)

    def __and__(self, other):
        return intersect(self, other)

    def __sub__(self, other):
        return set_minus(self, other)

    def __str__(self) -> str:
        return to_text(self)


@dataclass(frozen=True)
class _Raw:
    intervals: tuple
    points: tuple

    def contains(self, x: float) -> bool:
        return x in self.points or any(x in iv for iv in self.intervals)


def _cuts(*sets) -> list[float]:
    cuts = set()
    for s in sets:
        for iv in s.intervals:
            cuts.update(c for c in (iv.lo, iv.hi) if not math.isinf(c))
        cuts.update(s.points)
    return sorted(cuts)


def _cells(cuts: list[float]):
    """Yield (kind, lo, hi, sample) for the partition of R induced by ``cuts``.

    ``kind`` is "gap" for open intervals and "pt" for singletons.
    """
    if not cuts:
        yield "gap", -INF, INF, 0.0
        return
    yield "gap", -INF, cuts[0], cuts[0] - 1.0
    for i, c in enumerate(cuts):
        yield "pt", c, c, c
        nxt = cuts[i + 1] if i + 1 < len(cuts) else INF
        mid = c + 1.0 if math.isinf(nxt) else c + (nxt - c) / 2
        yield "gap", c, nxt, mid


def _rebuild(cuts: list[float], member: Callable[[float], bool]) -> BorelSet:
    cells = list(_cells(cuts))
    flags = [member(sample) for *_, sample in cells]
    intervals, points = [], []
    i = 0
    while i < len(cells):
        if not flags[i]:
            i += 1
            continue
        j = i
        while j + 1 < len(cells) and flags[j + 1]:
            j += 1
        first, last = cells[i], cells[j]
        if i == j and first[0] == "pt":
            points.append(first[1])
        else:
            lo_closed = first[0] == "pt"
            hi_closed = last[0] == "pt"
            intervals.append(Interval(first[1], last[2], lo_closed, hi_closed))
        i = j + 1
    return BorelSet(tuple(intervals), tuple(points))


def _combine(op: Callable[[bool, bool], bool], a: BorelSet, b: BorelSet) -> BorelSet:
    return _rebuild(_cuts(a, b), lambda x: op(x in a, x in b))


def union(a: BorelSet, b: BorelSet) -> BorelSet:
    return _combine(lambda p, q: p or q, a, b)


def intersect(a: BorelSet, b: BorelSet) -> BorelSet:
    return _combine(lambda p, q: p and q, a, b)


def set_minus(a: BorelSet, b: BorelSet) -> BorelSet:
    return _combine(lambda p, q: p and not q, a, b)


def complement(a: BorelSet) -> BorelSet:
    return _rebuild(_cuts(a), lambda x: x not in a)


def union_all(sets: Iterable[BorelSet]) -> BorelSet:
    sets = list(sets)
    if not sets:
        return BorelSet()
    return _rebuild(_cuts(*sets), lambda x: any(x in s for s in sets))


def leb_measure(s: BorelSet) -> float:
    return float(sum(iv.length for iv in s.intervals))


def closure(s: BorelSet) -> BorelSet:
    return BorelSet.from_parts([iv.closure() for iv in s.intervals], s.points)


def leb_closure(g: BorelSet) -> BorelSet:
    """Points whose every neighbourhood meets ``g`` in positive length.

    Isolated points carry no length, so this is the closure of the interval part.
    """
    return BorelSet.from_parts([iv.closure() for iv in g.intervals])


def affine_preimage(s: BorelSet, slope: float, offset: float) -> BorelSet:
    """``{t : slope*t + offset in s}`` for ``slope != 0``."""
    ivs = []
    for iv in s.intervals:
        lo, hi = (iv.lo - offset) / slope, (iv.hi - offset) / slope
        if slope > 0:
            ivs.append(Interval(lo, hi, iv.lo_closed, iv.hi_closed))
        else:
            ivs.append(Interval(hi, lo, iv.hi_closed, iv.lo_closed))
    pts = [(p - offset) / slope for p in s.points]
    return BorelSet.from_parts(ivs, pts)


def affine_image(s: BorelSet, slope: float, offset: float) -> BorelSet:
    if slope == 0:
        return BorelSet.point(offset) if s else BorelSet()
    return affine_preimage(s, 1.0 / slope, -offset / slope)


AFFINE_TOL = 1e-14


def affine_coefficients(coeffs) -> tuple[float, float] | None:
    """Return (slope, offset) when the ascending coefficients describe a real
    polynomial of degree at most one, else None."""
    c = np.atleast_1d(np.asarray(coeffs, dtype=complex))
    scale = 1.0 + float(np.max(np.abs(c))) if c.size else 1.0
    if np.any(np.abs(c.imag) > AFFINE_TOL * scale):
        return None
    if c.size > 2 and np.any(np.abs(c[2:]) > AFFINE_TOL * scale):
        return None
    offset = float(c[0].real) if c.size > 0 else 0.0
    slope = float(c[1].real) if c.size > 1 else 0.0
    return slope, offset


def preimage(F, s: BorelSet, domain: BorelSet | None = None) -> BorelSet:
    """``F^{-1}(s) & domain`` for a piecewise scalar function ``F``.

    ``F`` needs a ``pieces`` attribute: pairs of (BorelSet, ascending polynomial
    coefficients), zero outside the pieces.  Pieces meeting ``domain`` only in
    isolated points are evaluated pointwise; on positive-length parts the
    polynomial must be real and affine.
    """
    if domain is None:
        domain = BorelSet.real_line()
    parts = []
    covered = BorelSet()
    for piece, coeffs in F.pieces:
        covered = union(covered, piece)
        where = intersect(piece, domain)
        if where.is_empty():
            continue
        if where.intervals:
            ab = affine_coefficients(coeffs)
            if ab is None:
                raise UnsupportedFunction("set-level preimage needs a real affine symbol on every segment")
            slope, offset = ab
            if slope == 0:
                hit = where if offset in s else BorelSet()
            else:
                hit = intersect(affine_preimage(s, slope, offset), where)
        else:
            vals = np.polynomial.polynomial.polyval(np.array(where.points), np.asarray(coeffs, dtype=complex))
            hit = BorelSet.point(*[p for p, v in zip(where.points, np.atleast_1d(vals))
                                   if abs(v.imag) <= AFFINE_TOL * (1 + abs(v)) and v.real in s])
        parts.append(hit)
    if 0.0 in s:
        parts.append(set_minus(domain, covered))
    return union_all(parts)


# text grammar:  [0,1]u(2,3)u{5}  with inf/-inf and {p,q,...} for points

_TOKEN = re.compile(r"\s*([\[\(])\s*([^,\s\]\)]+)\s*,\s*([^,\s\]\)]+)\s*([\]\)])\s*|\s*\{([^}]*)\}\s*")


def _num(text: str, where: int) -> float:
    t = text.strip().lower()
    if t in ("inf", "+inf", "infinity"):
        return INF
    if t in ("-inf", "-infinity"):
        return -INF
    try:
        return float(t)
    except ValueError:
        raise ParseError(f"bad number {text!r}", where) from None


def parse_set(text: str) -> BorelSet:
    text = text.strip()
    if not text:
        raise ParseError("empty set description; write {} for the empty set", 0)
    if text in ("empty", "{}"):
        return BorelSet()
    if text in ("R", "reals"):
        return BorelSet.real_line()
    parts = []
    pos = 0
    for k, chunk in enumerate(_split_union(text)):
        m = _TOKEN.fullmatch(chunk)
        if not m:
            raise ParseError(f"cannot parse set component {chunk!r}", pos)
        if m.group(5) is not None:
            inner = m.group(5).strip()
            pts = [_num(x, pos) for x in inner.split(",")] if inner else []
            parts.append(BorelSet.point(*pts))
        else:
            lo, hi = _num(m.group(2), pos), _num(m.group(3), pos)
            if lo > hi:
                raise ParseError(f"interval {chunk!r} has lo > hi", pos)
            parts.append(BorelSet.interval(lo, hi, m.group(1) == "[", m.group(4) == "]"))
        pos += len(chunk) + 1
    return union_all(parts)


def _split_union(text: str) -> list[str]:
    out, depth, cur = [], 0, []
    for ch in text:
        if ch in "[({":
            depth += 1
        elif ch in "])}":
            depth -= 1
        if ch in "uU" and depth == 0:
            out.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    out.append("".join(cur))
    return out


def to_text(s: BorelSet) -> str:
    if s.is_empty():
        return "{}"
    chunks = [(iv.lo, str(iv)) for iv in s.intervals]
    chunks += [(p, "{%s}" % _fmt(p)) for p in s.points]
    return "u".join(c for _, c in sorted(chunks))
