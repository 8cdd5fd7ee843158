"""Matrix measures built from atoms and piecewise-constant densities.

``M(w) = sum_{t_k in w} W_k + sum_seg |w & [a, b]| * F_seg``
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .borel import BorelSet, intersect, leb_measure, union_all
from .errors import DimensionMismatch, NotHermitian, NotPSD, ValidationError

PSD_TOL = 1e-10
ZERO_TRACE = 1e-14


def _psd_weight(W, d: int, what: str) -> np.ndarray:
    W = linalg.as_matrix(W)
    if W.shape != (d, d):
        raise DimensionMismatch(f"{what} has shape {W.shape}, expected {(d, d)}")
    if linalg.norm(W - W.conj().T) > PSD_TOL * (1.0 + linalg.norm(W)):
        raise NotHermitian(f"{what} is not Hermitian")
    if not linalg.is_psd(W, PSD_TOL):
        raise NotPSD(f"{what} is not positive semidefinite")
    return linalg.hermitian_part(W)


@dataclass(frozen=True)
class Atom:
    t: float
    weight: np.ndarray = field(repr=False)


@dataclass(frozen=True)
class Segment:
    a: float
    b: float
    density: np.ndarray = field(repr=False)

    @property
    def interval(self) -> BorelSet:
        return BorelSet.interval(self.a, self.b)


class MatrixMeasure:
    """A finite ``d x d`` matrix measure on the Borel sets of R.

    Weights and densities with trace at most ``ZERO_TRACE`` are dropped on
    construction: they charge nothing and would only blur the trace density.
    """

    def __init__(self, d: int, atoms=(), segments=()):
        if d < 1:
            raise ValidationError("d must be positive")
        self.d = int(d)
        kept_atoms = []
        for t, W in atoms:
            W = _psd_weight(W, self.d, f"atom weight at {t}")
            if np.trace(W).real > ZERO_TRACE:
                kept_atoms.append(Atom(float(t), W))
        kept_atoms.sort(key=lambda at: at.t)
        ts = [at.t for at in kept_atoms]
        if len(set(ts)) != len(ts):
            raise ValidationError("atom points must be distinct")

        kept_segs = []
        for a, b, F in segments:
            a, b = float(a), float(b)
            if not (np.isfinite(a) and np.isfinite(b) and a < b):
                raise ValidationError(f"segment [{a}, {b}] must be bounded with a < b")
            F = _psd_weight(F, self.d, f"density on [{a}, {b}]")
            if np.trace(F).real > ZERO_TRACE:
                kept_segs.append(Segment(a, b, F))
        kept_segs.sort(key=lambda s: s.a)
        for s, s2 in zip(kept_segs, kept_segs[1:]):
            if s2.a < s.b:
                raise ValidationError("segments may only overlap at endpoints")
        self.atoms: tuple[Atom, ...] = tuple(kept_atoms)
        self.segments: tuple[Segment, ...] = tuple(kept_segs)

    def __repr__(self):
        return f"MatrixMeasure(d={self.d}, atoms={[a.t for a in self.atoms]}, segments={[(s.a, s.b) for s in self.segments]})"

    @classmethod
    def empty(cls, d: int) -> "MatrixMeasure":
        return cls(d)

    def is_empty(self) -> bool:
        return not self.atoms and not self.segments

    @property
    def atom_points(self) -> list[float]:
        return [a.t for a in self.atoms]

    def support(self) -> BorelSet:
        return union_all([s.interval for s in self.segments] + [BorelSet.point(*self.atom_points)])

    def allclose(self, other: "MatrixMeasure", atol: float = 1e-12) -> bool:
        if self.d != other.d or len(self.atoms) != len(other.atoms) or len(self.segments) != len(other.segments):
            return False
        for x, y in zip(self.atoms, other.atoms):
            if abs(x.t - y.t) > atol or not np.allclose(x.weight, y.weight, atol=atol, rtol=0):
                return False
        for x, y in zip(self.segments, other.segments):
            if abs(x.a - y.a) > atol or abs(x.b - y.b) > atol:
                return False
            if not np.allclose(x.density, y.density, atol=atol, rtol=0):
                return False
        return True


def evaluate(M: MatrixMeasure, omega: BorelSet) -> np.ndarray:
    out = np.zeros((M.d, M.d), dtype=complex)
    for at in M.atoms:
        if at.t in omega:
            out += at.weight
    for seg in M.segments:
        length = leb_measure(intersect(omega, seg.interval))
        if length > 0:
            out += length * seg.density
    return out


def entry_variation(M: MatrixMeasure, i: int, j: int, omega: BorelSet) -> float:
    """Total variation ``|M_ij|(omega)`` of one entry measure.

    With atoms and constant densities the variation measure has atom weights
    ``|W_ij|`` and density ``|F_ij|``, so this is exact.
    """
    total = sum(abs(at.weight[i, j]) for at in M.atoms if at.t in omega)
    for seg in M.segments:
        total += leb_measure(intersect(omega, seg.interval)) * abs(seg.density[i, j])
    return float(total)


def trace_measure(M: MatrixMeasure, omega: BorelSet) -> float:
    return float(np.trace(evaluate(M, omega)).real)


def total_mass(M: MatrixMeasure) -> np.ndarray:
    return evaluate(M, BorelSet.real_line())


def trace_density_at(M: MatrixMeasure, t: float) -> np.ndarray | None:
    """``D_M(t)``, normalized to trace one, or None off the support.

    Atoms win over densities at a shared point; at a common endpoint of two
    segments the left one is used (both choices are null for ``tr_M``).
    """
    for at in M.atoms:
        if at.t == t:
            return at.weight / np.trace(at.weight).real
    for seg in M.segments:
        if seg.a <= t <= seg.b:
            return seg.density / np.trace(seg.density).real
    return None


def is_zero_set(M: MatrixMeasure, omega: BorelSet, tol: float = 1e-12) -> bool:
    return trace_measure(M, omega) <= tol


def restrict(M: MatrixMeasure, omega: BorelSet) -> MatrixMeasure:
    """``M`` restricted to ``omega``: atoms inside are kept, segments are clipped.

    Clipped pieces are stored as closed segments; their endpoints are null sets.
    """
    atoms = [(at.t, at.weight) for at in M.atoms if at.t in omega]
    segments = []
    for seg in M.segments:
        for iv in intersect(omega, seg.interval).intervals:
            segments.append((iv.lo, iv.hi, seg.density))
    return MatrixMeasure(M.d, atoms, segments)


def ac_sing_split(M: MatrixMeasure) -> tuple[MatrixMeasure, MatrixMeasure]:
    ac = MatrixMeasure(M.d, (), [(s.a, s.b, s.density) for s in M.segments])
    sing = MatrixMeasure(M.d, [(a.t, a.weight) for a in M.atoms], ())
    return ac, sing


def minimal_support_ac(M: MatrixMeasure) -> BorelSet:
    return union_all([s.interval for s in M.segments])
