import numpy as np
import pytest

from matmeasure import fuzz, l2, measure, multop
from matmeasure.borel import BorelSet, parse_set
from matmeasure.errors import InSpectrum, TrivialSpace, UnsupportedFunction, ValidationError
from matmeasure.l2 import VectorFunction
from matmeasure.measure import MatrixMeasure
from matmeasure.multop import MultOp, PiecewiseScalarFn


@pytest.fixture
def mixed():
    return MatrixMeasure(2, atoms=[(2.0, np.eye(2))], segments=[(0.0, 1.0, np.eye(2))])


@pytest.fixture
def unit():
    return MatrixMeasure(2, segments=[(0.0, 1.0, np.eye(2))])


def test_apply_examples(unit):
    f = VectorFunction.monomial(2, 0, 0)
    out = multop.apply(MultOp.identity(unit), f)
    assert out(0.3)[0] == pytest.approx(0.3) and out(0.3)[1] == 0
    chi = multop.apply(MultOp(unit, PiecewiseScalarFn.indicator(parse_set("[0,0.5]"))), f)
    assert chi(0.25)[0] == 1 and chi(0.75)[0] == 0
    assert l2.seminorm(unit, chi) ** 2 == pytest.approx(0.5)
    zero = multop.apply(MultOp(unit, PiecewiseScalarFn.constant(0)), f)
    assert l2.seminorm(unit, zero) == 0


def test_spectral_data_of_mixed_measure(mixed):
    T = MultOp.identity(mixed)
    assert multop.spectrum(T) == parse_set("[0,1]u{2}")
    assert multop.essential_values(T) == multop.spectrum(T)
    assert multop.point_spectrum(T) == parse_set("{2}")
    assert multop.op_norm(T) == 2


def test_spectrum_examples():
    atoms = MatrixMeasure(1, atoms=[(0.0, [[1.0]]), (1.0, [[1.0]])])
    assert multop.essential_values(MultOp.identity(atoms)) == parse_set("{0,1}")
    assert multop.spectrum(MultOp.identity(MatrixMeasure(1, atoms=[(5.0, [[1.0]])]))) == parse_set("{5}")
    seg = MatrixMeasure(1, segments=[(0, 1, [[1.0]])])
    assert multop.spectrum(MultOp(seg, PiecewiseScalarFn.constant(3))) == parse_set("{3}")
    assert multop.point_spectrum(MultOp(seg, PiecewiseScalarFn.constant(3))) == parse_set("{3}")
    assert multop.point_spectrum(MultOp.identity(seg)).is_empty()
    assert multop.op_norm(MultOp.identity(seg)) == 1
    assert multop.op_norm(MultOp.identity(MatrixMeasure(1, atoms=[(-3.0, [[1.0]])]))) == 3
    assert multop.essential_values(MultOp.identity(MatrixMeasure.empty(1))).is_empty()
    with pytest.raises(TrivialSpace):
        multop.spectrum(MultOp.identity(MatrixMeasure.empty(1)))


def test_atomic_measures_accept_any_polynomial():
    atoms = MatrixMeasure(1, atoms=[(-1.0, [[1.0]]), (1.0, [[1.0]])])
    assert multop.point_spectrum(MultOp(atoms, multop.parse_symbol("x^2"))) == parse_set("{1}")


def test_quadratic_on_segment_refused(unit):
    with pytest.raises(UnsupportedFunction):
        multop.spectral_domain(MultOp(unit, multop.parse_symbol("x^2")), parse_set("[0,0.25]"))


def test_adjoint():
    M = MatrixMeasure(1, segments=[(0, 1, [[1.0]])])
    T = MultOp(M, PiecewiseScalarFn.polynomial([0, 1j]))
    assert multop.adjoint_symbol(T).symbol(0.5) == pytest.approx(-0.5j)
    x = MultOp.identity(M)
    assert multop.adjoint_symbol(x).symbol(0.5) == 0.5


def test_resolvent_examples(unit):
    R = multop.resolvent_symbol(MultOp.identity(unit), 5)
    assert R.norm_bound == pytest.approx(0.25)
    assert R(0.5) == pytest.approx(1 / (0.5 - 5))
    with pytest.raises(InSpectrum):
        multop.resolvent_symbol(MultOp.identity(unit), 0.5)
    at = MatrixMeasure(1, atoms=[(2.0, [[1.0]])])
    assert multop.resolvent_symbol(MultOp.identity(at), 0)(2.0) == pytest.approx(0.5)


def test_resolvent_on_mixed_measure_is_one_third(mixed):
    # the atom at 2 is the closest spectral point to 5
    assert multop.resolvent_symbol(MultOp.identity(mixed), 5).norm_bound == pytest.approx(1 / 3)


def test_spectral_projection_examples(unit):
    T = MultOp.identity(unit)
    assert multop.spectral_domain(T, parse_set("[0,0.5]")) == parse_set("[0,0.5]")
    assert multop.spectral_domain(T, BorelSet.empty()).is_empty()
    F = MultOp(MatrixMeasure(1, segments=[(0, 1, [[1.0]])]), multop.parse_symbol("2*x+1"))
    assert multop.spectral_domain(F, parse_set("[1,2]")) == parse_set("[0,0.5]")
    f = VectorFunction.constant([1, 2])
    whole = multop.apply(multop.spectral_projection(T, BorelSet.real_line()), f)
    assert l2.seminorm(unit, whole - f) == 0


def test_part_in_G_examples(mixed):
    T = MultOp.identity(mixed)
    part = multop.part_in_G(T, parse_set("[0,0.5]"))
    assert part.measure.allclose(MatrixMeasure(2, segments=[(0, 0.5, np.eye(2))]))
    assert multop.part_in_G(T, parse_set("[-1,3]")).measure.allclose(mixed)
    assert multop.part_in_G(T, parse_set("[5,6]")).measure.is_empty()


@pytest.mark.parametrize("text, t, value", [
    ("x", 0.5, 0.5),
    ("2*x+1", 1.0, 3.0),
    ("3 - x^2", 2.0, -1.0),
    ("(1+2i)*x", 1.0, 1 + 2j),
    ("x/2", 3.0, 1.5),
    ("{ [0,1]: 2*x+1 ; {2}: 5 }", 2.0, 5.0),
    ("{ [0,1]: 2*x+1 ; {2}: 5 }", 0.5, 2.0),
    ("{ [0,1]: 2*x+1 ; {2}: 5 }", 1.5, 0.0),
])
def test_parse_symbol(text, t, value):
    assert multop.parse_symbol(text)(t) == pytest.approx(value)


@pytest.mark.parametrize("bad", ["x**", "1/x", "sin(x)", "{ [0,1] 2 }", "y+1", "{ [0,2]: x ; [1,3]: 1 }"])
def test_parse_symbol_errors(bad):
    with pytest.raises(ValidationError):
        multop.parse_symbol(bad)


def affine_instance(rng):
    d = int(rng.integers(1, 4))
    M = fuzz.random_measure(d, rng)
    slope = float(rng.choice([-1, 1]) * rng.uniform(0.25, 3))
    offset = float(rng.normal())
    return M, slope, offset


def probe_points(M, n=40):
    pts = list(M.atom_points)
    for seg in M.segments:
        pts += list(np.linspace(seg.a, seg.b, n))
    return pts


@pytest.mark.parametrize("seed", range(10))
def test_affine_symbols_against_hand_values(seed):
    rng = np.random.default_rng(seed)
    for _ in range(10):
        M, slope, offset = affine_instance(rng)
        F = PiecewiseScalarFn.polynomial([offset, slope])
        T = MultOp(M, F)
        image = lambda t: slope * t + offset
        # hand values: the support maps to intervals and points
        ends = [image(x) for s in M.segments for x in (s.a, s.b)] + [image(t) for t in M.atom_points]
        assert multop.op_norm(T) == pytest.approx(max(abs(v) for v in ends), abs=1e-12)
        assert multop.point_spectrum(T) == BorelSet.point(*[image(t) for t in M.atom_points])
        sigma = multop.spectrum(T)
        for t in probe_points(M):
            assert image(t) in sigma or min(abs(image(t) - e) for e in ends) < 1e-12
        omega = fuzz.random_set(rng, 3, 2, -6, 6, allow_infinite=False, grid=0.25)
        dom = multop.spectral_domain(T, omega)
        for t in probe_points(M):
            assert (t in dom) == (image(t) in omega)


@pytest.mark.parametrize("seed", range(10))
def test_operator_laws(seed):
    rng = np.random.default_rng(100 + seed)
    for _ in range(5):
        M, slope, offset = affine_instance(rng)
        T = MultOp(M, PiecewiseScalarFn.polynomial([offset, slope]))
        f = fuzz.random_function(M.d, rng, M, max_degree=2)
        g = fuzz.random_function(M.d, rng, M, max_degree=2)
        nf = l2.seminorm(M, f)
        # norm consistency
        assert l2.seminorm(M, multop.apply(T, f)) <= multop.op_norm(T) * nf * (1 + 1e-12) + 1e-10
        # projection algebra
        a = fuzz.random_set(rng, 2, 1, -5, 5, allow_infinite=False)
        b = fuzz.random_set(rng, 2, 1, -5, 5, allow_infinite=False)
        Ea, Eb, Eab = (multop.spectral_projection(T, w) for w in (a, b, a & b))
        twice = multop.apply(Ea, multop.apply(Eb, f))
        assert l2.seminorm(M, twice - multop.apply(Eab, f)) <= 1e-12 * (1 + nf)
        once = multop.apply(Ea, f)
        assert l2.seminorm(M, multop.apply(Ea, once) - once) <= 1e-12 * (1 + nf)
        assert abs(l2.inner(M, once, g) - l2.inner(M, f, multop.apply(Ea, g))) <= 1e-12 * (1 + nf * l2.seminorm(M, g))
        # product containment
        G = PiecewiseScalarFn.polynomial(rng.normal(size=3))
        lhs = multop.apply(T, multop.apply(MultOp(M, G), f))
        rhs = multop.apply(MultOp(M, T.symbol * G), f)
        assert l2.seminorm(M, lhs - rhs) <= 1e-10 * (1 + l2.seminorm(M, rhs))
        # adjoint
        Z = MultOp(M, PiecewiseScalarFn.polynomial(rng.normal(size=2) + 1j * rng.normal(size=2)))
        lhs = l2.inner(M, multop.apply(Z, f), g)
        rhs = l2.inner(M, f, multop.apply(multop.adjoint_symbol(Z), g))
        assert abs(lhs - rhs) <= 1e-12 * (1 + abs(lhs))
        # sigma_p inside sigma
        assert multop.point_spectrum(T).issubset(multop.spectrum(T))


@pytest.mark.parametrize("seed", range(5))
def test_kernel_criterion(seed):
    rng = np.random.default_rng(200 + seed)
    for _ in range(10):
        M = fuzz.random_measure(int(rng.integers(1, 4)), rng, max_atoms=4)
        on_atom = bool(M.atom_points) and rng.random() < 0.5
        c = float(rng.choice(M.atom_points)) if on_atom else float(rng.uniform(-4, 4))
        T = MultOp(M, PiecewiseScalarFn.polynomial([-c, 1.0]))
        # the indicator of {c} is a nonzero class exactly when M charges c
        e = VectorFunction.indicator(BorelSet.point(c), np.ones(M.d))
        killed = l2.seminorm(M, e) > 0 and l2.seminorm(M, multop.apply(T, e)) == 0
        assert killed == (c in M.atom_points) == (0.0 in multop.point_spectrum(T))


@pytest.mark.parametrize("lam", [5, -1 + 1j])
def test_resolvent_identity_on_mixed_measure(mixed, lam):
    T = MultOp.identity(mixed)
    H = multop.resolvent_symbol(T, lam)
    rng = np.random.default_rng(7)
    for _ in range(20):
        f = fuzz.random_function(2, rng, mixed)
        Tf = multop.apply(MultOp(mixed, T.symbol.shift(lam)), f)
        for t in probe_points(mixed, 17):
            assert np.linalg.norm(H(t) * Tf(t) - f(t)) <= 1e-10 * (1 + np.linalg.norm(f(t)))
            assert abs((t - lam) * H(t) - 1) <= 1e-12
    assert H.norm_bound == pytest.approx(1 / multop.distance_to_set(lam, multop.spectrum(T)))
