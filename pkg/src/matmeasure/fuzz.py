"""Seeded random instances with known ground truth."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .borel import BorelSet, Interval, union_all
from .l2 import VectorFunction
from .measure import MatrixMeasure


def random_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """Product of ``n`` complex Householder reflectors and a diagonal phase."""
    Q = np.eye(n, dtype=complex)
    for _ in range(n):
        v = rng.normal(size=n) + 1j * rng.normal(size=n)
        v /= np.linalg.norm(v)
        Q = Q - 2.0 * np.outer(Q @ v, v.conj())
    return Q * np.exp(2j * np.pi * rng.random(n))


@dataclass
class PlantedHermitian:
    matrix: np.ndarray
    eigenvalues: np.ndarray  # distinct, ascending
    projections: list  # one per distinct eigenvalue
    multiplicities: list


def planted_hermitian(n: int, rng: np.random.Generator, max_multiplicity: int = 1,
                      spread: float = 3.0, min_gap: float = 0.05) -> PlantedHermitian:
    """``Q D Q*`` with distinct eigenvalues at least ``min_gap`` apart."""
    mults = []
    left = n
    while left:
        m = int(rng.integers(1, min(max_multiplicity, left) + 1))
        mults.append(m)
        left -= m
    k = len(mults)
    while True:
        lams = np.sort(rng.uniform(-spread, spread, k))
        if k < 2 or np.min(np.diff(lams)) >= min_gap:
            break
    Q = random_unitary(n, rng)
    projections, col = [], 0
    D = np.zeros(n)
    for lam, m in zip(lams, mults):
        B = Q[:, col:col + m]
        projections.append(B @ B.conj().T)
        D[col:col + m] = lam
        col += m
    A = (Q * D) @ Q.conj().T
    A = (A + A.conj().T) / 2
    return PlantedHermitian(A, lams, projections, mults)


def random_psd(d: int, rng: np.random.Generator, rank: int | None = None, scale: float = 1.0) -> np.ndarray:
    if rank is None:
        rank = int(rng.integers(1, d + 1))
    X = rng.normal(size=(d, rank)) + 1j * rng.normal(size=(d, rank))
    W = X @ X.conj().T
    return scale * W / np.trace(W).real * rng.uniform(0.5, 2.0)


def random_measure(d: int, rng: np.random.Generator, max_atoms: int = 3, max_segments: int = 3,
                   lo: float = -4.0, hi: float = 4.0, allow_empty: bool = False) -> MatrixMeasure:
    while True:
        n_at = int(rng.integers(0, max_atoms + 1))
        n_seg = int(rng.integers(0, max_segments + 1))
        if n_at + n_seg or allow_empty:
            break
    # segment endpoints on a coarse grid keep test sets from grazing them
    grid = np.round(np.sort(rng.choice(np.arange(lo, hi + 0.25, 0.25), size=2 * n_seg, replace=False)), 2)
    segments = [(grid[2 * i], grid[2 * i + 1], random_psd(d, rng)) for i in range(n_seg)]
    pts = np.round(rng.uniform(lo, hi, n_at), 3)
    atoms = [(float(t), random_psd(d, rng)) for t in np.unique(pts)]
    return MatrixMeasure(d, atoms, segments)


def random_set(rng: np.random.Generator, max_intervals: int = 6, max_points: int = 4,
               lo: float = -5.0, hi: float = 5.0, allow_infinite: bool = True,
               grid: float | None = None) -> BorelSet:
    def draw(k):
        x = rng.uniform(lo, hi, k)
        return np.round(x / grid) * grid if grid else x

    ivs = []
    for _ in range(int(rng.integers(0, max_intervals + 1))):
        a, b = np.sort(draw(2))
        if allow_infinite and rng.random() < 0.1:
            a = -np.inf
        if allow_infinite and rng.random() < 0.1:
            b = np.inf
        if a < b:
            ivs.append(Interval(float(a), float(b),
                                bool(rng.integers(2)) and np.isfinite(a), bool(rng.integers(2)) and np.isfinite(b)))
    pts = [float(p) for p in draw(int(rng.integers(0, max_points + 1)))]
    return BorelSet.from_parts(ivs, pts)


def random_function(d: int, rng: np.random.Generator, M: MatrixMeasure | None = None,
                    max_degree: int = 3, max_breaks: int = 2, lo: float = -5.0, hi: float = 5.0) -> VectorFunction:
    """Random piecewise polynomial; point values at some atoms of ``M``."""
    cuts = np.sort(rng.uniform(lo, hi, int(rng.integers(0, max_breaks + 1))))
    bounds = [-np.inf] + [float(c) for c in cuts] + [np.inf]
    pieces = []
    for a, b in zip(bounds, bounds[1:]):
        deg = int(rng.integers(0, max_degree + 1))
        c = rng.normal(size=(d, deg + 1)) + 1j * rng.normal(size=(d, deg + 1))
        pieces.append((Interval(a, b, False, np.isfinite(b)), c / (1 + np.arange(deg + 1)) ** 2))
    values = {}
    if M is not None:
        for t in M.atom_points:
            if rng.random() < 0.3:
                values[t] = rng.normal(size=d) + 1j * rng.normal(size=d)
    return VectorFunction(d, values, pieces)


def random_vector_system(N: int, d: int, rng: np.random.Generator) -> list[np.ndarray]:
    return [rng.normal(size=N) + 1j * rng.normal(size=N) for _ in range(d)]


def segment_omega(M: MatrixMeasure, rng: np.random.Generator) -> BorelSet:
    """A random set that touches segments and atoms of ``M`` non-trivially."""
    parts = [random_set(rng, 2, 0, allow_infinite=False, grid=0.125)]
    for t in M.atom_points:
        if rng.random() < 0.5:
            parts.append(BorelSet.point(t))
    return union_all(parts)
