"""Absolute continuity of ``T_x`` in a Borel set and the a.c. spectrum.

Singular mass of an atoms-plus-densities measure is exactly its atoms, so the
Lebesgue decomposition is read off the representation.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .borel import BorelSet, leb_closure, leb_measure, to_text
from .measure import (
    MatrixMeasure,
    ac_sing_split,
    minimal_support_ac,
    trace_measure,
)
from .multop import MultOp, essential_values, part_in_G, point_spectrum

SING_TOL = 1e-12


def singular_mass(M: MatrixMeasure, G: BorelSet) -> float:
    """``mu_sing(G)`` for ``mu = tr_M``."""
    return trace_measure(ac_sing_split(M)[1], G)


def is_ac_in_G(M: MatrixMeasure, G: BorelSet, tol: float = SING_TOL) -> bool:
    return singular_mass(M, G) <= tol


def ac_spectrum(M: MatrixMeasure) -> BorelSet:
    return essential_values(MultOp.identity(ac_sing_split(M)[0]))


@dataclass(frozen=True)
class AcReport:
    mu_sing_G: float
    is_ac_in_G: bool
    leb_closure_G: BorelSet
    sigma_ac: BorelSet
    sigma_p: BorelSet
    part_spectrum: BorelSet
    hypotheses_hold: bool
    inclusion_holds: bool

    def to_dict(self) -> dict:
        return {
            "mu_sing_G": self.mu_sing_G,
            "is_ac_in_G": self.is_ac_in_G,
            "leb_closure_G": to_text(self.leb_closure_G),
            "sigma_ac": to_text(self.sigma_ac),
            "sigma_p": to_text(self.sigma_p),
            "part_spectrum": to_text(self.part_spectrum),
            "hypotheses_hold": self.hypotheses_hold,
            "inclusion_holds": self.inclusion_holds,
        }


def theorem_c7_report(M: MatrixMeasure, G: BorelSet, tol: float = SING_TOL) -> AcReport:
    """All quantities of the a.c.-in-G statement for ``T_x`` on ``L^2(M)``.

    ``part_spectrum`` is the spectrum of ``(T_x)_G`` (empty for the zero
    space); under the hypotheses it coincides with the Lebesgue closure of G.
    """
    mu_sing = singular_mass(M, G)
    ac = mu_sing <= tol
    closure = leb_closure(G)
    sigma_ac = ac_spectrum(M)
    T = MultOp.identity(M)
    part = essential_values(part_in_G(T, G))
    hyp = ac and G.issubset(minimal_support_ac(M))
    return AcReport(
        mu_sing_G=mu_sing,
        is_ac_in_G=ac,
        leb_closure_G=closure,
        sigma_ac=sigma_ac,
        sigma_p=point_spectrum(T),
        part_spectrum=part,
        hypotheses_hold=hyp,
        inclusion_holds=closure.issubset(sigma_ac),
    )


def _sample_sets(M: MatrixMeasure, S: BorelSet, rng: np.random.Generator, n: int) -> list[BorelSet]:
    out = [BorelSet((iv,)) for iv in S.intervals]
    out += [BorelSet.point(p) for p in S.points]
    out += [BorelSet.point(t) for t in M.atom_points]
    bounds = [iv.lo for iv in S.intervals] + [iv.hi for iv in S.intervals] + M.atom_points
    bounds += [x for s in M.segments for x in (s.a, s.b)]
    finite = [b for b in bounds if np.isfinite(b)]
    lo, hi = (min(finite) - 1.0, max(finite) + 1.0) if finite else (-1.0, 1.0)
    for _ in range(n):
        if S.intervals and rng.random() < 0.5:
            iv = S.intervals[rng.integers(len(S.intervals))]
            a = max(iv.lo, lo)
            b = min(iv.hi, hi)
            x, y = np.sort(rng.uniform(a, b, 2))
            out.append(BorelSet.interval(x, y))
        else:
            x, y = np.sort(rng.uniform(lo, hi, 2))
            out.append(BorelSet.interval(x, y) | BorelSet.point(float(rng.uniform(lo, hi))))
    return out


def minimal_support_check(M: MatrixMeasure, S: BorelSet, omegas: Iterable[BorelSet] | None = None,
                          rng: np.random.Generator | None = None, n: int = 200,
                          tol: float = SING_TOL) -> bool:
    """Both predicates of a minimal support of ``mu_ac`` w.r.t. Lebesgue on a
    family of test sets: (i) ``mu_sing(w)=0, |w|=0 => mu(w)=0``;
    (ii) ``w <= S, mu(w)=0 => |w|=0``."""
    if omegas is None:
        omegas = _sample_sets(M, S, rng if rng is not None else np.random.default_rng(0), n)
    for w in omegas:
        mu = trace_measure(M, w)
        leb = leb_measure(w)
        if singular_mass(M, w) <= tol and leb == 0 and mu > tol:
            return False
        if w.issubset(S) and mu <= tol and leb > 0:
            return False
    return True
