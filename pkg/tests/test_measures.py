import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import integrate

from generators import hermitian, psd, random_measure
from weylkit._linalg import SingularityError, norm
from weylkit.measures import (BorelSet, Interval, MatrixMeasure, PiecewiseLinear, apply,
                              cauchy_transform, imag_sampler, lebesgue_decompose,
                              poisson_transform, spectral_measure, stieltjes_invert,
                              weight_measure)
from weylkit.herglotz import HerglotzMatrixFunction


def quad_cauchy(sigma, z):
    """Independent oracle: numerical integration of the Cauchy kernel."""
    out = np.zeros((sigma.dim, sigma.dim), complex)
    for t, w in sigma.atoms:
        out += w * (1 / (t - z) - t / (1 + t * t))
    for a, b, d in sigma.pieces:
        re = integrate.quad(lambda t: (1 / (t - z) - t / (1 + t * t)).real, a, b,
                            epsabs=1e-13, limit=200)[0]
        im = integrate.quad(lambda t: (1 / (t - z)).imag, a, b, epsabs=1e-13, limit=200)[0]
        out += d * (re + 1j * im)
    return out


def test_cauchy_transform_matches_quadrature():
    rng = np.random.default_rng(1)
    for _ in range(10):
        sigma = random_measure(rng, 2)
        for z in (0.3 + 0.7j, -2 + 0.2j, 4 - 1j):
            np.testing.assert_allclose(cauchy_transform(sigma, z), quad_cauchy(sigma, z),
                                       atol=1e-9)


def test_cauchy_transform_lebesgue_part():
    sigma = MatrixMeasure(1, lebesgue=[[2.0]])
    assert cauchy_transform(sigma, 1j)[0, 0] == pytest.approx(2j * np.pi)
    assert cauchy_transform(sigma, -1j)[0, 0] == pytest.approx(-2j * np.pi)


def test_cauchy_transform_on_support_raises():
    sigma = MatrixMeasure(1, atoms=[(1.0, [[1.0]])], pieces=[(2.0, 3.0, [[1.0]])])
    for x in (1.0, 2.5):
        with pytest.raises(SingularityError):
            cauchy_transform(sigma, x)
    assert np.isfinite(cauchy_transform(sigma, 5.0)).all()


def test_poisson_is_imaginary_part_of_cauchy():
    rng = np.random.default_rng(2)
    sigma = random_measure(rng, 3)
    for x, y in ((0.1, 0.5), (-3.0, 0.01), (2.0, 4.0)):
        c = cauchy_transform(sigma, complex(x, y))
        np.testing.assert_allclose(poisson_transform(sigma, x, y), (c - c.conj().T) / 2j,
                                   atol=1e-10)
    with pytest.raises(ValueError):
        poisson_transform(sigma, 0.0, 0.0)


def test_apply_on_points_intervals_and_sets():
    w = np.diag([1.0, 2.0])
    sigma = MatrixMeasure(2, atoms=[(0.0, w)], pieces=[(1.0, 3.0, np.eye(2))])
    np.testing.assert_allclose(apply(sigma, [0.0]), w)
    np.testing.assert_allclose(apply(sigma, [(0.0, 2.0)]), w + np.eye(2))
    np.testing.assert_allclose(apply(sigma, Interval(0.0, 2.0, closed_left=False)), np.eye(2))
    np.testing.assert_allclose(apply(sigma, BorelSet([(-1.0, 0.5), (2.5, 10.0)])),
                               w + 0.5 * np.eye(2))
    with pytest.raises(ValueError):
        BorelSet([(0.0, 2.0), (1.0, 3.0)])


def test_measure_validation():
    with pytest.raises(ValueError):
        MatrixMeasure(1, atoms=[(0.0, [[-1.0]])])
    with pytest.raises(ValueError):
        MatrixMeasure(1, pieces=[(0.0, 2.0, [[1.0]]), (1.0, 3.0, [[1.0]])])
    with pytest.raises(ValueError):
        MatrixMeasure(1, atoms=[(0.0, [[1.0]]), (0.0, [[1.0]])])


def test_spectral_measure_merges_repeated_eigenvalues():
    h = np.diag([2.0, 2.0, -1.0]).astype(complex)
    sm = spectral_measure(h)
    assert len(sm.atoms) == 2
    (t1, p1), (t2, p2) = sm.atoms
    assert (t1, t2) == (-1.0, 2.0)
    np.testing.assert_allclose(p2, np.diag([1.0, 1.0, 0.0]), atol=1e-14)
    with pytest.raises(ValueError):
        spectral_measure(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_lebesgue_decomposition_and_equivalence():
    sigma = MatrixMeasure(1, atoms=[(0.0, [[1.0]])], pieces=[(-1.0, 1.0, [[1.0]])])
    ac, s = lebesgue_decompose(sigma)
    assert ac.atoms == () and s.pieces == ()
    assert sigma.is_lebesgue_equivalent_on((-0.5, 0.5))
    assert not sigma.is_lebesgue_equivalent_on((-2.0, 0.5))
    assert sigma.ac_covers((-1.0, 1.0))
    assert not sigma.ac_covers((-1.0, 2.0))
    assert MatrixMeasure(1, lebesgue=[[1.0]]).is_lebesgue_equivalent_on((-100.0, 100.0))


def test_weight_measure_exact_masses():
    sigma = MatrixMeasure(1, atoms=[(0.0, [[2.0]])], pieces=[(-1.0, 1.0, [[1.0]])])
    phi = PiecewiseLinear.notch(0.0, 1.0)
    wm = weight_measure(sigma, phi)
    assert wm.atoms == ()  # phi vanishes at the atom
    assert apply(wm, [(-1.0, 1.0)])[0, 0] == pytest.approx(1.0)  # integral of |t| on [-1, 1]
    with pytest.raises(ValueError):
        weight_measure(sigma, PiecewiseLinear([0.0, 1.0], [-1.0, 1.0]))


def test_stieltjes_recovers_density_and_atom():
    sigma = MatrixMeasure(1, atoms=[(0.5, [[0.7]])], pieces=[(-1.0, 1.0, [[0.2]])])
    f = HerglotzMatrixFunction(1, sigma=sigma)
    est = stieltjes_invert(imag_sampler(f), (-2.0, 2.0), [0.02, 0.01, 0.005, 0.0025], cells=4)
    assert est.converged
    assert abs(est.mass[0, 0] - (0.7 + 0.4)) < 1e-3
    assert len(est.atoms) == 1
    assert abs(est.atoms[0][0] - 0.5) < 1e-4
    assert abs(est.atoms[0][1][0, 0] - 0.7) < 1e-3
    for m, expect in zip(est.cell_masses, (0.0, 0.2, 0.2 + 0.7, 0.0)):
        assert abs(m[0, 0] - expect) < 2e-3


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 10**6), cuts=st.lists(st.floats(-8, 8), min_size=3, max_size=3,
                                                   unique=True))
def test_apply_is_additive(seed, cuts):
    sigma = random_measure(np.random.default_rng(seed), 2)
    a, b, c = sorted(cuts)
    lhs = apply(sigma, [(a, c)])
    rhs = apply(sigma, [(a, b)]) + apply(sigma, [(b, c)])
    assert norm(lhs - rhs) < 1e-10


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 10**6))
def test_congruence_commutes_with_apply(seed):
    rng = np.random.default_rng(seed)
    sigma = random_measure(rng, 2)
    x = hermitian(rng, 2) + 1j * psd(rng, 2)
    lhs = sigma.congruence(x).apply([(-3.0, 2.0)])
    rhs = x @ sigma.apply([(-3.0, 2.0)]) @ x.conj().T
    assert norm(lhs - rhs) < 1e-10


def test_single_atom_cauchy_value():
    sigma = MatrixMeasure(1, atoms=[(1.0, [[1.0]])])
    assert cauchy_transform(sigma, 1j)[0, 0] == pytest.approx(0.5j, abs=1e-15)
