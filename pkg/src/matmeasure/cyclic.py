"""Finite Hermitian operators with vector systems.

For ``A`` on C^N and ``phi = (phi_1, ..., phi_d)`` the spectral matrix measure
``E_{A,phi}`` is atomic, so ``L^2(E_{A,phi})`` is finite dimensional and the
canonical spectral transformation ``U[f] = sum_j f_j(A) phi_j`` is an explicit
``N x K`` matrix in an orthonormal basis of ``L^2``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from . import linalg
from .borel import BorelSet
from .errors import DimensionMismatch, NotCyclic, ValidationError
from .l2 import VectorFunction
from .measure import MatrixMeasure

KRYLOV_TOL = 1e-8


class HermitianOperator:
    def __init__(self, matrix, tol: float = linalg.HERMITIAN_TOL):
        A = linalg.as_matrix(matrix)
        if linalg.norm(A - A.conj().T) > tol * (1.0 + linalg.norm(A)):
            raise linalg.NotHermitian("operator matrix is not Hermitian")
        self.matrix = linalg.hermitian_part(A)
        self._eig = None

    @property
    def N(self) -> int:
        return self.matrix.shape[0]

    @property
    def eig(self) -> linalg.HermitianEig:
        if self._eig is None:
            self._eig = linalg.eig_hermitian(self.matrix)
        return self._eig

    def spectral_projection(self, omega: BorelSet) -> np.ndarray:
        """``E_A(omega)``."""
        out = np.zeros((self.N, self.N), dtype=complex)
        for lam, P in zip(self.eig.eigenvalues, self.eig.projections):
            if lam in omega:
                out += P
        return out


class VectorSystem:
    """``d`` vectors in C^N stored as the columns of an ``N x d`` matrix."""

    def __init__(self, vectors: Sequence):
        vecs = [np.asarray(v, dtype=complex).reshape(-1) for v in vectors]
        if not vecs:
            raise ValidationError("a vector system needs at least one vector")
        if len({v.size for v in vecs}) != 1:
            raise DimensionMismatch("all vectors of a system must have the same length")
        self.columns = np.stack(vecs, axis=1)

    @property
    def d(self) -> int:
        return self.columns.shape[1]

    @property
    def N(self) -> int:
        return self.columns.shape[0]

    def gram(self) -> np.ndarray:
        """``(<phi_j, phi_i>)_{ij}``."""
        return self.columns.conj().T @ self.columns


def _check(A: HermitianOperator, phi: VectorSystem):
    if phi.N != A.N:
        raise DimensionMismatch(f"vectors have length {phi.N}, operator acts on C^{A.N}")


def func_calc(A: HermitianOperator, f: Callable[[float], complex]) -> np.ndarray:
    return A.eig.apply(f)


def krylov_singular_values(A: HermitianOperator, phi: VectorSystem) -> np.ndarray:
    """Singular values of the column-normalized block ``[A^n phi_j]``, n < N."""
    _check(A, phi)
    cols = []
    for j in range(phi.d):
        v = phi.columns[:, j]
        for _ in range(A.N):
            nv = np.linalg.norm(v)
            if nv == 0:
                break
            v = v / nv
            cols.append(v)
            v = A.matrix @ v
    if not cols:
        return np.zeros(0)
    return np.linalg.svd(np.stack(cols, axis=1), compute_uv=False)


def cyclicity_rank(A: HermitianOperator, phi: VectorSystem, tol: float = KRYLOV_TOL) -> int:
    s = krylov_singular_values(A, phi)
    if s.size == 0 or s[0] == 0:
        return 0
    return int(np.sum(s > tol * s[0]))


def is_cyclic(A: HermitianOperator, phi: VectorSystem, tol: float = KRYLOV_TOL) -> bool:
    return cyclicity_rank(A, phi, tol) == A.N


def spectral_matrix_measure(A: HermitianOperator, phi: VectorSystem) -> MatrixMeasure:
    """Atoms at the eigenvalues with weights ``(<P_k phi_j, phi_i>)_{ij}``."""
    _check(A, phi)
    Phi = phi.columns
    floor = 1e-12 * (1.0 + linalg.norm(phi.gram()))
    atoms = []
    for lam, P in zip(A.eig.eigenvalues, A.eig.projections):
        W = linalg.hermitian_part(Phi.conj().T @ P @ Phi)
        if np.trace(W).real > floor:
            atoms.append((float(lam), W))
    return MatrixMeasure(phi.d, atoms)


@dataclass
class CST:
    """Canonical spectral transformation as a matrix.

    Column ``m`` is ``U`` applied to the basis class ``[b_m chi_{lambda_k}]``
    where ``atom_index[m] = k``; the ``b`` vectors are orthonormal for the
    weight ``W_k``.
    """

    matrix_form: np.ndarray
    measure: MatrixMeasure
    atom_index: list[int]
    basis: list[np.ndarray] = field(repr=False)

    @property
    def K(self) -> int:
        return self.matrix_form.shape[1]

    def multiplication_by_x(self) -> np.ndarray:
        """``T_x`` in the orthonormal basis: diagonal of atom points."""
        pts = self.measure.atom_points
        return np.diag([pts[k] for k in self.atom_index]).astype(complex)

    def projection_in_basis(self, omega: BorelSet) -> np.ndarray:
        """``E_{T_x}(omega)`` in the orthonormal basis."""
        pts = self.measure.atom_points
        return np.diag([1.0 if pts[k] in omega else 0.0 for k in self.atom_index]).astype(complex)

    def coordinates(self, f: VectorFunction) -> np.ndarray:
        """Coordinates of ``[f]`` in the orthonormal basis: ``<W_k f(lambda_k), b>``."""
        if f.d != self.measure.d:
            raise DimensionMismatch(f"function has d={f.d}, measure has d={self.measure.d}")
        atoms = self.measure.atoms
        return np.array([np.vdot(b, atoms[k].weight @ f(atoms[k].t))
                         for k, b in zip(self.atom_index, self.basis)], dtype=complex)


def _weight_basis(W: np.ndarray) -> list[np.ndarray]:
    eig = linalg.eig_hermitian(W)
    floor = linalg.RANK_CUTOFF * (1.0 + linalg.norm(W))
    out = []
    for mu, B in zip(eig.eigenvalues, eig.bases):
        if mu > floor:
            out.extend(B[:, m] / np.sqrt(mu) for m in range(B.shape[1]))
    return out


def build_cst(A: HermitianOperator, phi: VectorSystem, measure: MatrixMeasure | None = None) -> CST:
    if measure is None:
        measure = spectral_matrix_measure(A, phi)
    lams = A.eig.eigenvalues
    cols, index, basis = [], [], []
    for k, at in enumerate(measure.atoms):
        P = A.eig.projections[int(np.argmin(np.abs(lams - at.t)))]
        PPhi = P @ phi.columns
        for b in _weight_basis(at.weight):
            cols.append(PPhi @ b)
            index.append(k)
            basis.append(b)
    U = np.stack(cols, axis=1) if cols else np.zeros((A.N, 0), dtype=complex)
    return CST(U, measure, index, basis)


def apply_cst(cst: CST, f: VectorFunction) -> np.ndarray:
    return cst.matrix_form @ cst.coordinates(f)


@dataclass
class XmueReport:
    N: int
    K: int
    rank: int
    isometry_residual: float
    coisometry_residual: float
    conjugation_residual: float
    projection_residuals: list[float]
    tol: float
    scale: float

    @property
    def max_residual(self) -> float:
        return max([self.isometry_residual, self.coisometry_residual, self.conjugation_residual]
                   + self.projection_residuals)

    @property
    def ok(self) -> bool:
        return self.max_residual <= self.tol

    def to_dict(self) -> dict:
        return {
            "N": self.N,
            "K": self.K,
            "cyclicity_rank": self.rank,
            "isometry_residual": self.isometry_residual,
            "coisometry_residual": self.coisometry_residual,
            "conjugation_residual": self.conjugation_residual,
            "projection_residuals": self.projection_residuals,
            "max_residual": self.max_residual,
            "tol": self.tol,
            "ok": self.ok,
        }


def fuzz_sets(points: Sequence[float], rng: np.random.Generator, count: int) -> list[BorelSet]:
    """A family of test sets around ``points``: random intervals, unions, singletons."""
    pts = sorted(points)
    lo, hi = (pts[0] - 1.0, pts[-1] + 1.0) if pts else (-1.0, 1.0)
    out = []
    for i in range(count):
        kind = i % 3
        if kind == 0:
            a, b = np.sort(rng.uniform(lo, hi, 2))
            out.append(BorelSet.interval(a, b, bool(rng.integers(2)), bool(rng.integers(2))))
        elif kind == 1 and pts:
            chosen = rng.choice(pts, size=int(rng.integers(1, len(pts) + 1)), replace=False)
            out.append(BorelSet.point(*chosen))
        else:
            a, b, c, e = np.sort(rng.uniform(lo, hi, 4))
            out.append(BorelSet.interval(a, b) | BorelSet.interval(c, e, False, False))
    return out


def verify_xmue(A: HermitianOperator, phi: VectorSystem, tol: float = 1e-10,
                omegas: Sequence[BorelSet] | None = None, seed: int = 0, n_sets: int = 20) -> XmueReport:
    """Residuals of ``A = U T_x U^{-1}`` and ``E_A(w) U = U E_{T_x}(w)``.

    Residuals are reported relative to ``1 + ||A||``.
    """
    _check(A, phi)
    rank = cyclicity_rank(A, phi)
    if rank != A.N:
        raise NotCyclic(f"Krylov rank {rank} < N = {A.N}")
    cst = build_cst(A, phi)
    if cst.K != A.N:
        raise NotCyclic(f"dim L^2(M) = {cst.K} differs from N = {A.N} although the Krylov rank is full")
    U = cst.matrix_form
    scale = 1.0 + linalg.norm(A.matrix)
    Uinv = U.conj().T
    iso = linalg.norm(Uinv @ U - np.eye(cst.K))
    coiso = linalg.norm(U @ Uinv - np.eye(A.N))
    conj = linalg.norm(U @ cst.multiplication_by_x() @ Uinv - A.matrix) / scale
    if omegas is None:
        omegas = fuzz_sets(cst.measure.atom_points, np.random.default_rng(seed), n_sets)
    proj = [linalg.norm(A.spectral_projection(w) @ U - U @ cst.projection_in_basis(w)) for w in omegas]
    return XmueReport(A.N, cst.K, rank, iso, coiso, conj, proj, tol, scale)


def check_spectral_measure_identity(A: HermitianOperator, x, y, f: Callable, g: Callable) -> float:
    """``max_k |<P_k f(A)x, g(A)y> - f(l_k) conj(g(l_k)) <P_k x, y>|``."""
    x = np.asarray(x, dtype=complex)
    y = np.asarray(y, dtype=complex)
    fA, gA = func_calc(A, f), func_calc(A, g)
    worst = 0.0
    for lam, P in zip(A.eig.eigenvalues, A.eig.projections):
        lhs = np.vdot(gA @ y, P @ fA @ x)
        rhs = complex(f(lam)) * np.conj(complex(g(lam))) * np.vdot(y, P @ x)
        worst = max(worst, abs(lhs - rhs))
    return float(worst)
