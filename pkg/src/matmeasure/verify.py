"""Property batteries behind ``matmeasure verify``.

Each suite is a list of deterministic checks plus fuzzed properties; a fuzzed
property is called ``fuzz_cases`` times with a generator split off the seed.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import accont, borel, cyclic, fuzz, l2, linalg, measure, multop
from .borel import BorelSet, parse_set
from .errors import UnknownSuite, ValidationError
from .l2 import VectorFunction
from .measure import MatrixMeasure

Check = Callable[[], bool]
Prop = Callable[[np.random.Generator], bool]

SUITES = ("linalg", "borel", "measure", "l2", "multop", "cyclic", "accont")


@dataclass
class Config:
    tol: float = 1e-10
    cluster_tol: float = 1e-8
    seed: int = 0
    fuzz_cases: int = 200

    def __post_init__(self):
        if self.tol <= 0 or self.cluster_tol <= 0:
            raise ValidationError("tolerances must be positive")
        if self.fuzz_cases < 1:
            raise ValidationError("fuzz_cases must be at least 1")


def _close(a, b, tol=1e-12) -> bool:
    return bool(np.max(np.abs(np.asarray(a) - np.asarray(b)), initial=0.0) <= tol)


def example_measure() -> MatrixMeasure:
    """Two-dimensional density e1e1* on [-1, 0] and e2e2* on [0, 1]."""
    return MatrixMeasure(2, segments=[(-1, 0, np.diag([1.0, 0.0])), (0, 1, np.diag([0.0, 1.0]))])


def example_function() -> VectorFunction:
    return VectorFunction(2, pieces=[(borel.Interval(-1, 0), [[0], [1]]),
                                     (borel.Interval(0, 1, False, True), [[1], [0]])])


def mixed_measure() -> MatrixMeasure:
    """Lebesgue times I on [0, 1] plus an identity atom at 2."""
    return MatrixMeasure(2, atoms=[(2.0, np.eye(2))], segments=[(0.0, 1.0, np.eye(2))])


# linalg

def _linalg_examples() -> dict[str, Check]:
    def swap():
        e = linalg.eig_hermitian([[0, 1], [1, 0]])
        return (_close(e.eigenvalues, [-1, 1])
                and _close(e.projections[0], 0.5 * np.array([[1, -1], [-1, 1]]))
                and _close(e.projections[1], 0.5 * np.ones((2, 2))))

    return {
        "eig_diagonal": lambda: _close(linalg.eig_hermitian(np.diag([3.0, 5.0])).eigenvalues, [3, 5]),
        "eig_swap": swap,
        "eig_identity": lambda: linalg.eig_hermitian(np.eye(3)).multiplicities == [3],
        "g_pseudo_inverse": lambda: _close(linalg.g_pseudo_inv_sqrt(np.diag([4.0, 0.0])), np.diag([0.5, 0])),
        "range_projection": lambda: _close(linalg.range_projection(np.diag([4.0, 0.0])), np.diag([1.0, 0])),
        "kernel_rank_one": lambda: linalg.in_kernel(np.ones((2, 2)), np.array([1, -1]) / np.sqrt(2)),
        "range_rank_one": lambda: linalg.in_range(np.ones((2, 2)), [1, 1]),
    }


def _linalg_props(cfg: Config) -> dict[str, Prop]:
    def planted(rng):
        n = int(rng.integers(1, 9))
        p = fuzz.planted_hermitian(n, rng, max_multiplicity=2)
        e = linalg.eig_hermitian(p.matrix, cluster_tol=cfg.cluster_tol)
        scale = 1 + linalg.norm(p.matrix)
        return (len(e.eigenvalues) == len(p.eigenvalues)
                and _close(e.eigenvalues, p.eigenvalues, 1e-10 * scale)
                and all(_close(P, Q, 1e-8) for P, Q in zip(e.projections, p.projections))
                and _close(e.reconstruct(), p.matrix, 1e-10 * scale))

    def sqrt_roundtrip(rng):
        d = int(rng.integers(1, 7))
        A = fuzz.random_psd(d, rng, scale=float(rng.uniform(0.1, 10)))
        R = linalg.sqrt_psd(A)
        return _close(R @ R, A, 1e-9) and linalg.is_psd(R)

    def kernel_equivalence(rng):
        d = int(rng.integers(2, 6))
        A = fuzz.random_psd(d, rng, rank=int(rng.integers(1, d)))
        basis = linalg.eig_hermitian(A).bases[0]  # smallest eigenvalue: the kernel
        v = basis @ (rng.normal(size=basis.shape[1]) + 0j)
        w = rng.normal(size=d) + 1j * rng.normal(size=d)
        R = linalg.sqrt_psd(A)
        def verdicts(x):
            quad = abs(np.vdot(x, A @ x)) <= 1e-14 * np.vdot(x, x).real * (1 + linalg.norm(A))
            return [bool(linalg.in_kernel(A, x)), bool(linalg.in_kernel(R, x)), bool(quad)]

        return verdicts(v) == [True] * 3 and verdicts(w) == [False] * 3

    def continuity(rng):
        d = int(rng.integers(1, 6))
        A = fuzz.random_psd(d, rng)
        E = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
        E = (E + E.conj().T)
        E *= 1e-6 / linalg.norm(E)
        Ap = A + E
        w = np.linalg.eigvalsh(Ap)
        if w[0] < 0:
            Ap = Ap - w[0] * np.eye(d)
        return linalg.norm(linalg.sqrt_psd(Ap) - linalg.sqrt_psd(A)) <= 1e-2

    def trace_dominates(rng):
        d = int(rng.integers(1, 6))
        A = fuzz.random_psd(d, rng)
        return linalg.is_psd(np.trace(A).real * np.eye(d) - A)

    return {"planted_eigenstructure": planted, "sqrt_roundtrip": sqrt_roundtrip,
            "kernel_equivalence": kernel_equivalence, "sqrt_continuity": continuity,
            "trace_dominates": trace_dominates}


# borel

def _borel_examples() -> dict[str, Check]:
    return {
        "union": lambda: borel.union(parse_set("[0,1]"), parse_set("{2}")) == parse_set("[0,1]u{2}"),
        "intersect": lambda: borel.intersect(parse_set("(0,2)"), parse_set("[1,3]")) == parse_set("[1,2)"),
        "complement_R": lambda: borel.complement(BorelSet.real_line()).is_empty(),
        "leb_closure_open": lambda: borel.leb_closure(parse_set("(0,1)u{2}")) == parse_set("[0,1]"),
        "leb_closure_null": lambda: borel.leb_closure(parse_set("{1,2,3}")).is_empty(),
    }


def _borel_props(cfg: Config) -> dict[str, Prop]:
    def de_morgan(rng):
        a, b = fuzz.random_set(rng), fuzz.random_set(rng)
        return (borel.complement(a | b) == borel.complement(a) & borel.complement(b)
                and borel.complement(a & b) == borel.complement(a) | borel.complement(b)
                and borel.complement(borel.complement(a)) == a
                and BorelSet.from_parts(a.intervals, a.points) == a)

    def inclusion_exclusion(rng):
        a = fuzz.random_set(rng, allow_infinite=False)
        b = fuzz.random_set(rng, allow_infinite=False)
        lhs = borel.leb_measure(a | b) + borel.leb_measure(a & b)
        return abs(lhs - borel.leb_measure(a) - borel.leb_measure(b)) <= 1e-12

    def closure_inside(rng):
        g = fuzz.random_set(rng)
        return borel.leb_closure(g).issubset(borel.closure(g))

    return {"de_morgan": de_morgan, "inclusion_exclusion": inclusion_exclusion,
            "leb_closure_in_closure": closure_inside}


# measure

def _measure_examples() -> dict[str, Check]:
    M = example_measure()
    at = MatrixMeasure(2, atoms=[(2.0, np.diag([3.0, 1.0]))])
    return {
        "example_total": lambda: _close(measure.evaluate(M, parse_set("[-1,1]")), np.eye(2), 1e-14),
        "example_left": lambda: _close(measure.evaluate(M, parse_set("[-1,0]")), np.diag([1, 0]), 1e-14),
        "example_trace": lambda: abs(measure.trace_measure(M, parse_set("[-1,1]")) - 2) <= 1e-14,
        "atom_trace": lambda: measure.trace_measure(at, parse_set("{2}")) == 4,
        "atom_density": lambda: _close(measure.trace_density_at(at, 2.0), np.diag([0.75, 0.25])),
        "zero_set_point": lambda: measure.is_zero_set(M, parse_set("{0.5}")),
        "restrict_left": lambda: measure.restrict(M, parse_set("[-1,0]")).allclose(
            MatrixMeasure(2, segments=[(-1, 0, np.diag([1.0, 0.0]))])),
    }


def _measure_props(cfg: Config) -> dict[str, Prop]:
    def additivity(rng):
        M = fuzz.random_measure(int(rng.integers(1, 4)), rng)
        a = fuzz.segment_omega(M, rng)
        b = fuzz.segment_omega(M, rng) - a
        return _close(measure.evaluate(M, a | b), measure.evaluate(M, a) + measure.evaluate(M, b), 1e-12)

    def monotone(rng):
        M = fuzz.random_measure(int(rng.integers(1, 4)), rng)
        big = fuzz.segment_omega(M, rng)
        small = big & fuzz.segment_omega(M, rng)
        diff = measure.evaluate(M, big) - measure.evaluate(M, small)
        return linalg.is_psd(diff) and _close(diff, diff.conj().T, 0)

    def zero_sets(rng):
        M = fuzz.random_measure(int(rng.integers(1, 4)), rng)
        w = fuzz.segment_omega(M, rng)
        return measure.is_zero_set(M, w) == (linalg.norm(measure.evaluate(M, w)) <= 1e-12)

    def trace_bound(rng):
        M = fuzz.random_measure(int(rng.integers(1, 4)), rng)
        w = fuzz.segment_omega(M, rng)
        Mw = measure.evaluate(M, w)
        return linalg.is_psd(measure.trace_measure(M, w) * np.eye(M.d) - Mw)

    def densities(rng):
        M = fuzz.random_measure(int(rng.integers(1, 4)), rng)
        ts = M.atom_points + [(s.a + s.b) / 2 for s in M.segments]
        for t in ts:
            D = measure.trace_density_at(M, t)
            w = np.linalg.eigvalsh(D)
            if not (_close(D, D.conj().T, 0) and abs(np.trace(D) - 1) <= 1e-12
                    and w[0] >= -1e-12 and w[-1] <= 1 + 1e-12 and np.max(np.abs(D)) <= 1 + 1e-12):
                return False
        return True

    def restriction(rng):
        M = fuzz.random_measure(int(rng.integers(1, 4)), rng)
        S, w = fuzz.segment_omega(M, rng), fuzz.segment_omega(M, rng)
        return _close(measure.evaluate(measure.restrict(M, S), w), measure.evaluate(M, w & S), 1e-12)

    return {"finite_additivity": additivity, "monotonicity": monotone, "zero_sets": zero_sets,
            "trace_bound": trace_bound, "trace_density_laws": densities, "restriction": restriction}


# l2

def _l2_examples() -> dict[str, Check]:
    M, f = example_measure(), example_function()
    e1 = VectorFunction.constant([1, 0])
    return {
        "example_zero_norm": lambda: abs(l2.inner(M, f, f)) <= 1e-14,
        "example_zero_layer": lambda: l2.is_zero_layer(M, f),
        "constant_not_zero_layer": lambda: not l2.is_zero_layer(M, e1),
        "indicator_norm": lambda: abs(l2.seminorm(M, VectorFunction.indicator(parse_set("[-1,0]"), [1, 0])) - 1)
        <= 1e-14,
        "atom_inner": lambda: abs(l2.inner(MatrixMeasure(2, atoms=[(1.0, np.diag([2.0, 1.0]))]), e1, e1) - 2)
        <= 1e-14,
        "fhat_atom": lambda: _close(l2.fhat(MatrixMeasure(2, atoms=[(0.0, np.diag([4.0, 0.0]))]),
                                            VectorFunction.constant([1, 1]))(0.0), [1, 0]),
    }


def _l2_props(cfg: Config) -> dict[str, Prop]:
    def triple(rng):
        d = int(rng.integers(1, 4))
        M = fuzz.random_measure(d, rng)
        return M, fuzz.random_function(d, rng, M), fuzz.random_function(d, rng, M)

    def sesquilinear(rng):
        M, f, g = triple(rng)
        h = fuzz.random_function(M.d, rng, M)
        z = complex(rng.normal(), rng.normal())
        lhs = l2.inner(M, z * f + h, g)
        rhs = z * l2.inner(M, f, g) + l2.inner(M, h, g)
        scale = 1 + abs(z) * l2.seminorm(M, f) * l2.seminorm(M, g) + l2.seminorm(M, h) * l2.seminorm(M, g)
        return (abs(lhs - rhs) <= 1e-10 * scale
                and abs(l2.inner(M, f, g) - np.conj(l2.inner(M, g, f))) <= 1e-10 * scale)

    def schwarz(rng):
        M, f, g = triple(rng)
        return abs(l2.inner(M, f, g)) <= l2.seminorm(M, f) * l2.seminorm(M, g) * (1 + 1e-12) + 1e-12

    def sigma(rng):
        M, f, g = triple(rng)
        a, b = l2.sigma_inner(M, f, g), l2.inner(M, f, g)
        return abs(a - b) <= 1e-12 * max(1.0, abs(a), l2.seminorm(M, f) * l2.seminorm(M, g))

    def parseval(rng):
        d = int(rng.integers(1, 4))
        M = fuzz.random_measure(d, rng)
        f = fuzz.random_function(d, rng, M, max_degree=2)
        e1, e2 = l2.parseval_defect(M, f, 1024), l2.parseval_defect(M, f, 4096)
        return e2 <= 1e-6 and e2 <= e1 + 1e-13

    def embed_roundtrip(rng):
        M, g, _ = triple(rng)
        S = fuzz.segment_omega(M, rng)
        Mp = measure.restrict(M, S)
        x = l2.embed_extension(M, S, g)
        back = l2.restrict_class(x, S, Mp)
        return (abs(x.norm() - l2.seminorm(Mp, g)) <= 1e-12 * (1 + x.norm())
                and back == l2.L2Class(g, Mp))

    return {"sesquilinearity": sesquilinear, "semi_schwarz": schwarz, "sigma_form": sigma,
            "parseval": parseval, "embed_isometry": embed_roundtrip}


# multop

def _multop_examples() -> dict[str, Check]:
    M = mixed_measure()
    T = multop.MultOp.identity(M)
    return {
        "spectrum": lambda: multop.spectrum(T) == parse_set("[0,1]u{2}"),
        "point_spectrum": lambda: multop.point_spectrum(T) == parse_set("{2}"),
        "norm": lambda: multop.op_norm(T) == 2.0,
        "affine_projection": lambda: multop.spectral_domain(
            multop.MultOp(MatrixMeasure(1, segments=[(0, 1, [[1.0]])]), multop.parse_symbol("2*x+1")),
            parse_set("[1,2]")) == parse_set("[0,0.5]"),
        "resolvent_bound": lambda: abs(multop.resolvent_symbol(
            multop.MultOp.identity(MatrixMeasure(2, segments=[(0, 1, np.eye(2))])), 5).norm_bound - 0.25) <= 1e-15,
    }


def _multop_props(cfg: Config) -> dict[str, Prop]:
    def setup(rng):
        d = int(rng.integers(1, 4))
        M = fuzz.random_measure(d, rng)
        slope, offset = rng.normal(), rng.normal()
        F = multop.PiecewiseScalarFn.polynomial([offset, slope])
        return M, multop.MultOp(M, F), fuzz.random_function(d, rng, M, max_degree=2)

    def projections(rng):
        M, T, f = setup(rng)
        a, b = fuzz.random_set(rng, 2, 1, -3, 3), fuzz.random_set(rng, 2, 1, -3, 3)
        Ea, Eb, Eab = (multop.spectral_projection(T, w) for w in (a, b, a & b))
        lhs = multop.apply(Ea, multop.apply(Eb, f))
        once = multop.apply(Ea, f)
        return (l2.seminorm(M, lhs - multop.apply(Eab, f)) <= 1e-12 * (1 + l2.seminorm(M, f))
                and l2.seminorm(M, multop.apply(Ea, once) - once) <= 1e-12 * (1 + l2.seminorm(M, f)))

    def norm_bound(rng):
        M, T, f = setup(rng)
        n = l2.seminorm(M, f)
        if n == 0:
            return True
        return l2.seminorm(M, multop.apply(T, f)) / n <= multop.op_norm(T) * (1 + 1e-10) + 1e-10

    def adjoint(rng):
        M, T, f = setup(rng)
        g = fuzz.random_function(M.d, rng, M, max_degree=2)
        F = multop.PiecewiseScalarFn.polynomial(rng.normal(size=2) + 1j * rng.normal(size=2))
        op = multop.MultOp(M, F)
        lhs = l2.inner(M, multop.apply(op, f), g)
        rhs = l2.inner(M, f, multop.apply(multop.adjoint_symbol(op), g))
        return abs(lhs - rhs) <= 1e-12 * (1 + abs(lhs))

    def product(rng):
        M, T, f = setup(rng)
        G = multop.MultOp(M, multop.PiecewiseScalarFn.polynomial(rng.normal(size=3)))
        FG = multop.MultOp(M, T.symbol * G.symbol)
        diff = multop.apply(T, multop.apply(G, f)) - multop.apply(FG, f)
        return l2.seminorm(M, diff) <= 1e-10 * (1 + l2.seminorm(M, multop.apply(FG, f)))

    def point_in_spectrum(rng):
        M, T, _ = setup(rng)
        return multop.point_spectrum(T).issubset(multop.essential_values(T))

    def resolvent(rng):
        M, T, f = setup(rng)
        lam = complex(rng.normal() * 3, rng.normal() + 0.1)
        H = multop.resolvent_symbol(T, lam)
        ts = M.atom_points + [float(x) for s in M.segments for x in np.linspace(s.a, s.b, 7)]
        return all(_close((T.symbol(t) - lam) * H(t) * f(t), f(t), 1e-10 * (1 + np.linalg.norm(f(t))))
                   for t in ts)

    def kernel(rng):
        M, _, _ = setup(rng)
        pts = M.atom_points
        c = float(rng.choice(pts)) if pts and rng.random() < 0.5 else float(rng.uniform(-4, 4))
        T = multop.MultOp(M, multop.PiecewiseScalarFn.polynomial([-c, 1.0]))
        killed = any(np.isclose(c, t, atol=0) for t in pts)
        return (0.0 in multop.point_spectrum(T)) == killed

    return {"projection_algebra": projections, "norm_bound": norm_bound, "adjoint": adjoint,
            "product": product, "point_in_spectrum": point_in_spectrum, "resolvent": resolvent,
            "kernel_criterion": kernel}


# cyclic

def _cyclic_examples() -> dict[str, Check]:
    swap = cyclic.HermitianOperator([[0, 1], [1, 0]])
    e1 = cyclic.VectorSystem([[1, 0]])

    def swap_measure():
        M = cyclic.spectral_matrix_measure(swap, e1)
        return _close(M.atom_points, [-1, 1]) and all(_close(a.weight, [[0.5]]) for a in M.atoms)

    def multiplicity():
        A = cyclic.HermitianOperator(np.diag([1.0, 1.0, 2.0]))
        return (cyclic.cyclicity_rank(A, cyclic.VectorSystem([[1, 0, 0], [0, 1, 0]])) == 2
                and cyclic.verify_xmue(A, cyclic.VectorSystem([[1, 0, 0], [0, 1, 1]])).max_residual < 1e-10)

    return {
        "swap_measure": swap_measure,
        "swap_xmue": lambda: cyclic.verify_xmue(swap, e1).max_residual < 1e-12,
        "vandermonde_rank": lambda: cyclic.cyclicity_rank(cyclic.HermitianOperator(np.diag([1.0, 2.0])),
                                                         cyclic.VectorSystem([[1, 1]])) == 2,
        "multiplicity": multiplicity,
        "not_onto": lambda: cyclic.build_cst(cyclic.HermitianOperator(np.eye(2)), e1).K == 1,
    }


def _cyclic_props(cfg: Config) -> dict[str, Prop]:
    def xmue(rng):
        for _ in range(50):
            N = int(rng.integers(1, 9))
            d = int(rng.integers(1, 4))
            p = fuzz.planted_hermitian(N, rng, max_multiplicity=d)
            A = cyclic.HermitianOperator(p.matrix)
            phi = cyclic.VectorSystem(fuzz.random_vector_system(N, d, rng))
            if cyclic.is_cyclic(A, phi):
                rep = cyclic.verify_xmue(A, phi, tol=1e-9 * (1 + linalg.norm(p.matrix)), seed=int(rng.integers(2**31)))
                return rep.ok
        return True

    def isometry(rng):
        N, d = int(rng.integers(1, 7)), int(rng.integers(1, 4))
        p = fuzz.planted_hermitian(N, rng, max_multiplicity=3)
        A = cyclic.HermitianOperator(p.matrix)
        phi = cyclic.VectorSystem(fuzz.random_vector_system(N, d, rng))
        cst = cyclic.build_cst(A, phi)
        f = fuzz.random_function(d, rng, cst.measure)
        oracle = sum(A.eig.apply(lambda t, j=j: f(t)[j]) @ phi.columns[:, j] for j in range(d))
        out = cyclic.apply_cst(cst, f)
        return (_close(out, oracle, 1e-10 * (1 + np.linalg.norm(oracle)))
                and abs(np.linalg.norm(out) - l2.seminorm(cst.measure, f)) <= 1e-10 * (1 + np.linalg.norm(out)))

    def identity(rng):
        N = int(rng.integers(1, 7))
        p = fuzz.planted_hermitian(N, rng, max_multiplicity=2)
        A = cyclic.HermitianOperator(p.matrix)
        x, y = fuzz.random_vector_system(N, 2, rng)
        return cyclic.check_spectral_measure_identity(A, x, y, lambda t: t, lambda t: t * t) < 1e-11 * (
            1 + linalg.norm(p.matrix)) ** 3 * np.linalg.norm(x) * np.linalg.norm(y)

    def conjugation(rng):
        N, d = int(rng.integers(1, 7)), int(rng.integers(1, 4))
        p = fuzz.planted_hermitian(N, rng, max_multiplicity=2)
        V = fuzz.random_unitary(N, rng)
        vecs = fuzz.random_vector_system(N, d, rng)
        M1 = cyclic.spectral_matrix_measure(cyclic.HermitianOperator(p.matrix), cyclic.VectorSystem(vecs))
        M2 = cyclic.spectral_matrix_measure(cyclic.HermitianOperator(V @ p.matrix @ V.conj().T),
                                            cyclic.VectorSystem([V @ v for v in vecs]))
        return M1.allclose(M2, atol=1e-9)

    return {"xmue": xmue, "cst_isometry": isometry, "spectral_measure_identity": identity,
            "unitary_invariance": conjugation}


# accont

def _accont_examples() -> dict[str, Check]:
    M = mixed_measure()

    def report():
        r = accont.theorem_c7_report(M, parse_set("(0,0.5)"))
        return (r.mu_sing_G == 0 and r.leb_closure_G == parse_set("[0,0.5]")
                and r.sigma_ac == parse_set("[0,1]") and r.inclusion_holds and r.hypotheses_hold)

    return {
        "ac_in_segment": lambda: accont.is_ac_in_G(M, parse_set("[0,1]")),
        "not_ac_with_atom": lambda: not accont.is_ac_in_G(M, parse_set("[0,3]")),
        "ac_spectrum": lambda: accont.ac_spectrum(M) == parse_set("[0,1]"),
        "report": report,
        "atom_hypothesis": lambda: not accont.theorem_c7_report(M, parse_set("{2}")).hypotheses_hold,
        "support_padding": lambda: not accont.minimal_support_check(M, parse_set("[0,1]u[10,11]")),
    }


def _accont_props(cfg: Config) -> dict[str, Prop]:
    def inclusion(rng):
        d = int(rng.integers(1, 4))
        M = fuzz.random_measure(d, rng)
        S = measure.minimal_support_ac(M)
        G = fuzz.random_set(rng, 3, 2, allow_infinite=False) & S
        G = G - BorelSet.point(*M.atom_points)
        r = accont.theorem_c7_report(M, G)
        return r.hypotheses_hold and r.inclusion_holds and r.part_spectrum == r.leb_closure_G

    def minimal_support(rng):
        M = fuzz.random_measure(int(rng.integers(1, 4)), rng)
        return accont.minimal_support_check(M, measure.minimal_support_ac(M), rng=rng, n=30)

    def consistency(rng):
        M = fuzz.random_measure(int(rng.integers(1, 4)), rng)
        T = multop.MultOp.identity(M)
        return (multop.point_spectrum(T) == BorelSet.point(*M.atom_points)
                and accont.ac_spectrum(M) == measure.minimal_support_ac(M))

    return {"ac_inclusion": inclusion, "minimal_support": minimal_support, "multop_consistency": consistency}


_REGISTRY = {
    "linalg": (_linalg_examples, _linalg_props),
    "borel": (_borel_examples, _borel_props),
    "measure": (_measure_examples, _measure_props),
    "l2": (_l2_examples, _l2_props),
    "multop": (_multop_examples, _multop_props),
    "cyclic": (_cyclic_examples, _cyclic_props),
    "accont": (_accont_examples, _accont_props),
}


def _guard(fn, *args) -> bool:
    try:
        return bool(fn(*args))
    except Exception:  # a crash is a failed property, reported by name
        return False


def run_suite(name: str, cfg: Config) -> dict:
    if name == "all":
        return {s: run_suite(s, cfg)[s] for s in SUITES}
    if name not in _REGISTRY:
        raise UnknownSuite(f"unknown suite {name!r}; choose from {', '.join(SUITES + ('all',))}")
    examples, props = _REGISTRY[name]
    out = {}
    for key, check in examples().items():
        ok = _guard(check)
        out[f"example:{key}"] = {"passed": int(ok), "failed": int(not ok)}
    seeds = np.random.SeedSequence([cfg.seed, SUITES.index(name)])
    for (key, prop), ss in zip(props(cfg).items(), seeds.spawn(len(props(cfg)))):
        rng = np.random.default_rng(ss)
        passed = sum(_guard(prop, rng) for _ in range(cfg.fuzz_cases))
        out[key] = {"passed": passed, "failed": cfg.fuzz_cases - passed}
    return {name: out}


def all_passed(result: dict) -> bool:
    return all(c["failed"] == 0 for suite in result.values() for c in suite.values())
