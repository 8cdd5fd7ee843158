"""The space L^2(M) for piecewise-polynomial vector functions.

Inner products against a measure segment are integrated in closed form from
monomial antiderivatives; quadrature only appears in ``parseval_defect``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable

import numpy as np
from numpy.polynomial import polynomial as P

from . import linalg
from .borel import BorelSet, Interval, intersect
from .errors import DegreeOverflow, DimensionMismatch, RangeViolation, ValidationError
from .measure import MatrixMeasure, restrict, trace_density_at

MAX_DEGREE = 64
ZERO_LAYER_TOL = 1e-12


def _coeffs(c, d: int) -> np.ndarray:
    c = np.asarray(c, dtype=complex)
    if c.ndim == 1:
        c = c.reshape(1, -1)
    if c.shape[0] != d:
        raise DimensionMismatch(f"expected {d} polynomial components, got {c.shape[0]}")
    if c.shape[1] - 1 > MAX_DEGREE:
        raise DegreeOverflow(f"degree {c.shape[1] - 1} exceeds cap {MAX_DEGREE}")
    if not np.all(np.isfinite(c)):
        raise ValidationError("coefficients must be finite")
    return c


def _polyval_vec(c: np.ndarray, t) -> np.ndarray:
    """Evaluate each row of ``c`` (ascending coefficients) at ``t``."""
    return P.polyval(t, c.T)


def _integrate(p: np.ndarray, lo: float, hi: float) -> complex:
    anti = P.polyint(p)
    return complex(P.polyval(hi, anti) - P.polyval(lo, anti))


class VectorFunction:
    """A C^d-valued function: polynomial pieces on intervals plus point values.

    ``pieces`` is a list of ``(Interval, coeffs)`` with ``coeffs`` of shape
    ``(d, degree + 1)`` in ascending powers of t.  ``atom_values`` override the
    pieces at individual points.  Everywhere else the function is zero.
    """

    def __init__(self, d: int, atom_values=None, pieces=()):
        self.d = int(d)
        self.atom_values = {
            float(t): np.asarray(v, dtype=complex).reshape(self.d) for t, v in (atom_values or {}).items()
        }
        ps = []
        for iv, c in pieces:
            if not isinstance(iv, Interval):
                iv = Interval(float(iv[0]), float(iv[1]), not math.isinf(iv[0]), not math.isinf(iv[1]))
            ps.append((iv, _coeffs(c, self.d)))
        ps.sort(key=lambda p: (p[0].lo, p[0].hi))
        for (a, _), (b, _) in zip(ps, ps[1:]):
            if b.lo < a.hi or (b.lo == a.hi and a.hi_closed and b.lo_closed):
                raise ValidationError("function pieces must be disjoint")
        self.pieces = tuple(ps)

    def __repr__(self):
        return f"VectorFunction(d={self.d}, atoms={sorted(self.atom_values)}, pieces={[str(iv) for iv, _ in self.pieces]})"

    # constructors

    @classmethod
    def zero(cls, d: int) -> "VectorFunction":
        return cls(d)

    @classmethod
    def polynomial(cls, coeffs, lo: float = -math.inf, hi: float = math.inf) -> "VectorFunction":
        c = np.atleast_2d(np.asarray(coeffs, dtype=complex))
        return cls(c.shape[0], pieces=[(BorelSet.interval(lo, hi).intervals[0], c)])

    @classmethod
    def constant(cls, c, lo: float = -math.inf, hi: float = math.inf) -> "VectorFunction":
        c = np.asarray(c, dtype=complex).reshape(-1, 1)
        return cls.polynomial(c, lo, hi)

    @classmethod
    def monomial(cls, d: int, j: int, n: int) -> "VectorFunction":
        """``x^n e_j`` on the whole line (``j`` is 0-based)."""
        c = np.zeros((d, n + 1), dtype=complex)
        c[j, n] = 1.0
        return cls.polynomial(c)

    @classmethod
    def indicator(cls, omega: BorelSet, c) -> "VectorFunction":
        """``chi_omega * c`` for a constant vector ``c``."""
        c = np.asarray(c, dtype=complex).reshape(-1)
        d = c.size
        return cls(d, {p: c for p in omega.points}, [(iv, c.reshape(d, 1)) for iv in omega.intervals])

    @classmethod
    def on_atoms(cls, values: dict) -> "VectorFunction":
        values = {float(t): np.asarray(v, dtype=complex).reshape(-1) for t, v in values.items()}
        d = next(iter(values.values())).size if values else 1
        return cls(d, values)

    # evaluation

    def piece_at(self, t: float):
        for iv, c in self.pieces:
            if t in iv:
                return c
        return None

    def poly_on(self, lo: float, hi: float) -> np.ndarray | None:
        """Coefficients valid on the open interval (lo, hi), which must not
        contain a piece endpoint."""
        if math.isinf(lo) and math.isinf(hi):
            mid = 0.0
        elif math.isinf(lo):
            mid = hi - 1.0
        elif math.isinf(hi):
            mid = lo + 1.0
        else:
            mid = lo + (hi - lo) / 2
        return self.piece_at(mid)

    def __call__(self, t: float) -> np.ndarray:
        t = float(t)
        if t in self.atom_values:
            return self.atom_values[t]
        c = self.piece_at(t)
        if c is None:
            return np.zeros(self.d, dtype=complex)
        return _polyval_vec(c, t)

    def breakpoints(self) -> list[float]:
        cuts = set(self.atom_values)
        for iv, _ in self.pieces:
            cuts.update(x for x in (iv.lo, iv.hi) if not math.isinf(x))
        return sorted(cuts)

    def degree(self) -> int:
        return max((c.shape[1] - 1 for _, c in self.pieces), default=0)

    # linear structure

    def _combine(self, other: "VectorFunction", op: Callable) -> "VectorFunction":
        if other.d != self.d:
            raise DimensionMismatch(f"dimension {self.d} vs {other.d}")
        cuts = sorted(set(self.breakpoints()) | set(other.breakpoints()))
        bounds = [-math.inf] + cuts + [math.inf]
        pieces = []
        for lo, hi in zip(bounds, bounds[1:]):
            f, g = self.poly_on(lo, hi), other.poly_on(lo, hi)
            if f is None and g is None:
                continue
            pieces.append((Interval(lo, hi, False, False), _poly_op(f, g, op, self.d)))
        values = {t: op(self(t), other(t)) for t in cuts}
        return VectorFunction(self.d, values, pieces)

    def __add__(self, other):
        return self._combine(other, lambda x, y: x + y)

    def __sub__(self, other):
        return self._combine(other, lambda x, y: x - y)

    def scale(self, z: complex) -> "VectorFunction":
        return VectorFunction(self.d, {t: z * v for t, v in self.atom_values.items()},
                              [(iv, z * c) for iv, c in self.pieces])

    def __rmul__(self, z):
        return self.scale(z)

    def __neg__(self):
        return self.scale(-1.0)

    def restricted_to(self, omega: BorelSet) -> "VectorFunction":
        """``chi_omega * self``, exactly (open/closed ends respected)."""
        values = {t: v for t, v in self.atom_values.items() if t in omega}
        pieces = []
        for iv, c in self.pieces:
            cut = intersect(BorelSet((iv,)), omega)
            for sub in cut.intervals:
                pieces.append((sub, c))
            for p in cut.points:
                values.setdefault(p, _polyval_vec(c, p))
        return VectorFunction(self.d, values, pieces)


def _poly_op(f, g, op, d):
    if f is None:
        f = np.zeros((d, 1), dtype=complex)
    if g is None:
        g = np.zeros((d, 1), dtype=complex)
    n = max(f.shape[1], g.shape[1])
    f = np.pad(f, ((0, 0), (0, n - f.shape[1])))
    g = np.pad(g, ((0, 0), (0, n - g.shape[1])))
    return op(f, g)


def _check(M: MatrixMeasure, *fs: VectorFunction):
    for f in fs:
        if f.d != M.d:
            raise DimensionMismatch(f"function has d={f.d}, measure has d={M.d}")


def _subintervals(a: float, b: float, *fs: VectorFunction):
    cuts = {a, b}
    for f in fs:
        cuts.update(x for x in f.breakpoints() if a < x < b)
    cuts = sorted(cuts)
    return list(zip(cuts, cuts[1:]))


def _conj_poly(c: np.ndarray) -> np.ndarray:
    # t is real, so conj(p(t)) has conjugated coefficients
    return c.conj()


def inner(M: MatrixMeasure, f: VectorFunction, g: VectorFunction) -> complex:
    """``<<f, g>>_M = int <D_M f, g> d tr_M``, exact for polynomial pieces."""
    _check(M, f, g)
    total = 0j
    for at in M.atoms:
        tr = np.trace(at.weight).real
        D = at.weight / tr
        total += tr * np.vdot(g(at.t), D @ f(at.t))
    for seg in M.segments:
        tr = np.trace(seg.density).real
        D = seg.density / tr
        for lo, hi in _subintervals(seg.a, seg.b, f, g):
            fc, gc = f.poly_on(lo, hi), g.poly_on(lo, hi)
            if fc is None or gc is None:
                continue
            Df = D @ fc
            q = sum(np.convolve(_conj_poly(gc[i]), Df[i]) for i in range(M.d))
            total += tr * _integrate(q, lo, hi)
    return complex(total)


def seminorm(M: MatrixMeasure, f: VectorFunction) -> float:
    return math.sqrt(max(inner(M, f, f).real, 0.0))


def sigma_inner(M: MatrixMeasure, f: VectorFunction, g: VectorFunction) -> complex:
    """``sum_{i,j} int f_j conj(g_i) dM_ij``, entry by entry, no trace density."""
    _check(M, f, g)
    total = 0j
    d = M.d
    for at in M.atoms:
        fv, gv = f(at.t), g(at.t)
        for i in range(d):
            for j in range(d):
                total += fv[j] * np.conj(gv[i]) * at.weight[i, j]
    for seg in M.segments:
        for lo, hi in _subintervals(seg.a, seg.b, f, g):
            fc, gc = f.poly_on(lo, hi), g.poly_on(lo, hi)
            if fc is None or gc is None:
                continue
            for i in range(d):
                for j in range(d):
                    if seg.density[i, j] != 0:
                        total += seg.density[i, j] * _integrate(np.convolve(fc[j], _conj_poly(gc[i])), lo, hi)
    return complex(total)


def is_zero_layer(M: MatrixMeasure, f: VectorFunction, tol: float = ZERO_LAYER_TOL) -> bool:
    """``f(t) in Ker D_M(t)`` at every atom and on every segment."""
    _check(M, f)
    for at in M.atoms:
        if not linalg.in_kernel(at.weight, f(at.t), tol):
            return False
    for seg in M.segments:
        part = MatrixMeasure(M.d, (), [(seg.a, seg.b, seg.density)])
        if inner(part, f, f).real > tol * (1.0 + np.trace(seg.density).real):
            return False
    return True


@dataclass(eq=False)
class L2Class:
    """The class ``[f]`` in ``L^2(M)``; equality ignores zero-layer differences."""

    representative: VectorFunction
    measure: MatrixMeasure

    def _same_space(self, other: "L2Class"):
        if other.measure is not self.measure:
            raise ValidationError("classes live in different L^2 spaces")

    def inner(self, other: "L2Class") -> complex:
        self._same_space(other)
        return inner(self.measure, self.representative, other.representative)

    def norm(self) -> float:
        return seminorm(self.measure, self.representative)

    def __eq__(self, other):
        if not isinstance(other, L2Class):
            return NotImplemented
        self._same_space(other)
        return is_zero_layer(self.measure, self.representative - other.representative)

    __hash__ = None


class FHat:
    """``t -> sqrt(D_M(t)) f(t)``, evaluated on demand."""

    def __init__(self, M: MatrixMeasure, f: VectorFunction):
        _check(M, f)
        self.measure = M
        self.f = f
        self._roots = {}

    def _root(self, t: float) -> np.ndarray | None:
        D = trace_density_at(self.measure, t)
        if D is None:
            return None
        key = D.tobytes()
        if key not in self._roots:
            self._roots[key] = linalg.sqrt_psd(D)
        return self._roots[key]

    def __call__(self, t: float) -> np.ndarray:
        R = self._root(float(t))
        if R is None:
            return np.zeros(self.measure.d, dtype=complex)
        return R @ self.f(t)


def fhat(M: MatrixMeasure, f: VectorFunction) -> FHat:
    return FHat(M, f)


def parseval_quadrature(fh: FHat, nodes: int) -> float:
    """``sum_j int |(F^f)_j|^2 d tr_M``: exact at atoms, trapezoid rule with
    ``nodes`` points on every smooth piece of each segment."""
    M, f = fh.measure, fh.f
    total = 0.0
    for at in M.atoms:
        total += np.trace(at.weight).real * float(np.sum(np.abs(fh(at.t)) ** 2))
    for seg in M.segments:
        tr = np.trace(seg.density).real
        R = linalg.sqrt_psd(seg.density / tr)
        for lo, hi in _subintervals(seg.a, seg.b, f):
            c = f.poly_on(lo, hi)
            if c is None:
                continue
            ts = np.linspace(lo, hi, nodes)
            vals = np.sum(np.abs(R @ _polyval_vec(c, ts)) ** 2, axis=0)
            h = (hi - lo) / (nodes - 1)
            total += tr * h * (vals.sum() - 0.5 * (vals[0] + vals[-1]))
    return float(total)


def parseval_defect(M: MatrixMeasure, f: VectorFunction, nodes: int) -> float:
    """Relative gap between ``seminorm(f)^2`` and the quadrature norm of ``F^f``."""
    exact = seminorm(M, f) ** 2
    approx = parseval_quadrature(fhat(M, f), nodes)
    return abs(exact - approx) / max(1.0, exact)


def fhat_inverse(M: MatrixMeasure, g: Callable[[float], np.ndarray], degree: int = 8,
                 tol: float = 1e-9) -> VectorFunction:
    """``t -> G(D_M(t)) g(t)``.

    At atoms ``g`` must take values in ``Ran D_M``.  On segments the result is
    sampled at Chebyshev nodes and refitted as a polynomial of ``degree``.
    """
    values = {}
    for at in M.atoms:
        D = at.weight / np.trace(at.weight).real
        v = np.asarray(g(at.t), dtype=complex)
        if not linalg.in_range(D, v, 1e-9):
            raise RangeViolation(f"g({at.t}) is not in the range of the trace density")
        values[at.t] = linalg.g_pseudo_inv_sqrt(D) @ v
    pieces = []
    for seg in M.segments:
        G = linalg.g_pseudo_inv_sqrt(seg.density / np.trace(seg.density).real)
        k = 2 * (degree + 1)
        x = np.cos(np.pi * (np.arange(k) + 0.5) / k)
        ts = seg.a + (x + 1) * (seg.b - seg.a) / 2
        ys = np.array([G @ np.asarray(g(t), dtype=complex) for t in ts])
        fit = P.polyfit(ts, ys, degree)  # shape (degree+1, d)
        resid = np.max(np.abs(P.polyval(ts, fit).T - ys)) if ys.size else 0.0
        if resid > tol * (1.0 + np.max(np.abs(ys))):
            raise DegreeOverflow(f"degree {degree} fit residual {resid:.2e} on [{seg.a}, {seg.b}]")
        pieces.append((Interval(seg.a, seg.b), fit.T))
    return VectorFunction(M.d, values, pieces)


def embed_extension(M: MatrixMeasure, omega: BorelSet, g: VectorFunction) -> L2Class:
    """Extend a function on ``restrict(M, omega)`` by zero to a class on ``M``."""
    _check(M, g)
    return L2Class(g.restricted_to(omega), M)


def restrict_class(x: L2Class, omega: BorelSet, restricted: MatrixMeasure | None = None) -> L2Class:
    """Inverse of ``embed_extension``: restrict the representative to ``omega``."""
    if restricted is None:
        restricted = restrict(x.measure, omega)
    return L2Class(x.representative.restricted_to(omega), restricted)


def gamma(M: MatrixMeasure, f: VectorFunction, g: VectorFunction, t: float) -> complex:
    """Pointwise density ``<D_M(t) f(t), g(t)>``; 0 off the support."""
    D = trace_density_at(M, t)
    if D is None:
        return 0j
    return complex(np.vdot(g(t), D @ f(t)))


def gram_matrix(M: MatrixMeasure, fs: Iterable[VectorFunction]) -> np.ndarray:
    fs = list(fs)
    return np.array([[inner(M, fj, fi) for fj in fs] for fi in fs])
