"""Hermitian matrix kernel: Jacobi eigensolver, spectral square roots, projections.

Every tolerance here is relative to ``1 + ||A||`` (spectral norm) so the same
defaults work for weights of very different magnitude.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import NoConvergence, NotHermitian, NotPSD, ValidationError

HERMITIAN_TOL = 1e-10
CLUSTER_TOL = 1e-8
RANK_CUTOFF = 1e-10
MAX_SWEEPS = 100


def as_matrix(A) -> np.ndarray:
    A = np.asarray(A, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValidationError(f"expected a square matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise ValidationError("matrix entries must be finite")
    return A


def norm(A) -> float:
    """Spectral norm; 0 for empty matrices."""
    A = np.asarray(A)
    if A.size == 0:
        return 0.0
    return float(np.linalg.norm(A, 2))


def hermitian_part(A: np.ndarray) -> np.ndarray:
    return (A + A.conj().T) / 2


@dataclass(frozen=True)
class HermitianEig:
    """Clustered spectral decomposition ``A = sum_i eigenvalues[i] * projections[i]``.

    ``bases[i]`` holds orthonormal columns spanning the i-th eigenspace, so
    ``projections[i] == bases[i] @ bases[i].conj().T``.
    """

    eigenvalues: np.ndarray
    projections: tuple
    bases: tuple

    @property
    def multiplicities(self) -> list[int]:
        return [b.shape[1] for b in self.bases]

    def reconstruct(self) -> np.ndarray:
        n = self.bases[0].shape[0] if self.bases else 0
        out = np.zeros((n, n), dtype=complex)
        for lam, P in zip(self.eigenvalues, self.projections):
            out += lam * P
        return out

    def apply(self, f: Callable[[float], complex]) -> np.ndarray:
        """Functional calculus ``f(A) = sum f(lambda_i) P_i``."""
        n = self.bases[0].shape[0] if self.bases else 0
        out = np.zeros((n, n), dtype=complex)
        for lam, P in zip(self.eigenvalues, self.projections):
            out += complex(f(float(lam))) * P
        return out


def _jacobi(A: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Cyclic complex Jacobi. Returns (real eigenvalues, unitary eigenvectors)."""
    a = A.copy()
    n = a.shape[0]
    v = np.eye(n, dtype=complex)
    scale = np.linalg.norm(a)
    if n < 2 or scale == 0.0:
        return np.real(np.diag(a)).copy(), v
    threshold = 1e-15 * scale
    for _ in range(MAX_SWEEPS):
        off = np.linalg.norm(a[~np.eye(n, dtype=bool)])
        if off <= threshold:
            return np.real(np.diag(a)).copy(), v
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                r = abs(apq)
                if r <= 1e-300:
                    continue
                phase = apq / r
                theta = (a[q, q].real - a[p, p].real) / (2.0 * r)
                t = 1.0 / (abs(theta) + np.sqrt(theta * theta + 1.0))
                if theta < 0.0:
                    t = -t
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                g = np.array([[c, s], [-s * phase.conjugate(), c * phase.conjugate()]])
                idx = [p, q]
                a[:, idx] = a[:, idx] @ g
                a[idx, :] = g.conj().T @ a[idx, :]
                a[p, q] = a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                v[:, idx] = v[:, idx] @ g
    raise NoConvergence(f"Jacobi iteration did not converge in {MAX_SWEEPS} sweeps")


def eig_hermitian(A, tol: float = HERMITIAN_TOL, cluster_tol: float = CLUSTER_TOL) -> HermitianEig:
    A = as_matrix(A)
    scale = 1.0 + norm(A)
    if norm(A - A.conj().T) > tol * scale:
        raise NotHermitian("matrix is not Hermitian within tolerance")
    w, v = _jacobi(hermitian_part(A))
    order = np.argsort(w, kind="stable")
    w, v = w[order], v[:, order]

    gap = cluster_tol * scale
    groups: list[list[int]] = []
    for i, lam in enumerate(w):
        if groups and lam - w[groups[-1][-1]] <= gap:
            groups[-1].append(i)
        else:
            groups.append([i])

    eigenvalues = np.array([w[g].mean() for g in groups])
    bases = tuple(v[:, g] for g in groups)
    projections = tuple(b @ b.conj().T for b in bases)
    return HermitianEig(eigenvalues, projections, bases)


def _psd_eig(A, tol: float) -> tuple[HermitianEig, float]:
    A = as_matrix(A)
    eig = eig_hermitian(A, tol=tol)
    scale = 1.0 + norm(A)
    if eig.eigenvalues.size and eig.eigenvalues[0] < -tol * scale:
        raise NotPSD(f"matrix has eigenvalue {eig.eigenvalues[0]:.3e} < 0")
    return eig, scale


def spectral_function(A, f: Callable[[float], float], tol: float = HERMITIAN_TOL) -> np.ndarray:
    """Apply ``f`` to a PSD matrix, clipping round-off negatives to zero."""
    eig, _ = _psd_eig(A, tol)
    return eig.apply(lambda lam: f(max(lam, 0.0)))


def sqrt_psd(A, tol: float = HERMITIAN_TOL) -> np.ndarray:
    """Square root with round-off eigenvalues flushed to zero, so that
    ``ker sqrt(A) = ker A`` survives floating point."""
    eig, scale = _psd_eig(A, tol)
    floor = 64 * np.finfo(float).eps * scale
    return eig.apply(lambda lam: np.sqrt(lam) if lam > floor else 0.0)


def g_pseudo_inv_sqrt(A, tol: float = HERMITIAN_TOL, cutoff: float = RANK_CUTOFF) -> np.ndarray:
    """``G(A)`` with ``G(0) = 0`` and ``G(x) = x**-1/2``; eigenvalues at or below
    ``cutoff * (1 + ||A||)`` count as zero."""
    eig, scale = _psd_eig(A, tol)
    floor = cutoff * scale
    return eig.apply(lambda lam: 0.0 if lam <= floor else 1.0 / np.sqrt(lam))


def range_projection(A, tol: float = HERMITIAN_TOL, cutoff: float = RANK_CUTOFF) -> np.ndarray:
    """Orthogonal projection onto ``Ran A``, i.e. ``sqrt(A) @ G(A)``."""
    eig, scale = _psd_eig(A, tol)
    floor = cutoff * scale
    return eig.apply(lambda lam: 0.0 if lam <= floor else 1.0)


def in_kernel(A, v, tol: float = RANK_CUTOFF) -> bool:
    A = as_matrix(A)
    v = np.asarray(v, dtype=complex)
    return bool(np.linalg.norm(A @ v) <= tol * (1.0 + norm(A)) * np.linalg.norm(v))


def in_range(A, v, tol: float = RANK_CUTOFF) -> bool:
    A = as_matrix(A)
    v = np.asarray(v, dtype=complex)
    P = range_projection(A @ A.conj().T)
    return bool(np.linalg.norm(v - P @ v) <= tol * np.linalg.norm(v))


def is_psd(A, tol: float = HERMITIAN_TOL) -> bool:
    try:
        _psd_eig(A, tol)
    except (NotPSD, NotHermitian):
        return False
    return True
