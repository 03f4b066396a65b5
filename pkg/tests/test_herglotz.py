import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from generators import cplx, hermitian, invertible, lemma_instance, psd, random_herglotz
from weylkit._linalg import SingularityError, norm
from weylkit.equivalence import momentum_pair, upper_grid
from weylkit.herglotz import (HerglotzMatrixFunction, WeylTransformSpec, basic_lemma_check,
                              characteristic_function, evaluate, full_equality_check,
                              herglotz_probe_check, lft_matrix, lft_weyl, recover_parameters,
                              strict_at_i, tilde_data, weak_derivative_check, weyl_transform)
from weylkit.measures import MatrixMeasure, cauchy_transform


def test_evaluate_sums_the_parts():
    rng = np.random.default_rng(0)
    f = random_herglotz(rng, 2, with_S=True)
    z = 0.4 + 0.9j
    expect = f.C + f.D * z + cauchy_transform(f.sigma, z) + 1j * f.S
    np.testing.assert_allclose(f(z), expect, atol=1e-14)
    np.testing.assert_allclose(f(np.conj(z)), expect.conj().T, atol=1e-14)


def test_scalar_closed_forms():
    # -1/z has the unit atom at 0
    f = HerglotzMatrixFunction(1, sigma=MatrixMeasure(1, atoms=[(0.0, [[1.0]])]))
    for z in (1j, 2 + 0.5j, -3.0):
        assert f(z)[0, 0] == pytest.approx(-1 / z)
    with pytest.raises(SingularityError):
        f(0.0)
    # constant i on C+ is not defined on the real line
    g = HerglotzMatrixFunction.constant([[1j]])
    assert g(-1j)[0, 0] == pytest.approx(-1j)
    with pytest.raises(SingularityError):
        evaluate(g, 1.0)


def test_validation():
    with pytest.raises(ValueError):
        HerglotzMatrixFunction(1, D=[[-1.0]])
    with pytest.raises(ValueError):
        HerglotzMatrixFunction(2, C=[[0, 1], [0, 0]])
    with pytest.raises(ValueError):
        HerglotzMatrixFunction(2, sigma=MatrixMeasure(1))
    with pytest.raises(SingularityError):
        WeylTransformSpec(np.eye(2), np.zeros((2, 2)))


def test_shifted_and_congruence():
    rng = np.random.default_rng(1)
    f = random_herglotz(rng, 2)
    b = hermitian(rng, 2) + 1j * psd(rng, 2)
    x = invertible(rng, 2)
    for z in upper_grid(5):
        np.testing.assert_allclose(f.shifted(b)(z), f(z) + b, atol=1e-12)
        np.testing.assert_allclose(f.shifted(b)(np.conj(z)), f(np.conj(z)) + b.conj().T,
                                   atol=1e-12)
        np.testing.assert_allclose(f.congruence(x)(z), x @ f(z) @ x.conj().T, atol=1e-11)


def test_weyl_transform_and_tilde_data():
    rng = np.random.default_rng(2)
    f = random_herglotz(rng, 2)
    k = invertible(rng, 2)
    b = cplx(rng, 2, 2)
    spec = WeylTransformSpec(b, k)
    z = 0.3 + 1.2j
    np.testing.assert_allclose(weyl_transform(f, spec, z),
                               k.conj().T @ np.linalg.inv(b - f(z)) @ k, atol=1e-12)
    t = tilde_data(f, spec)
    ki = np.linalg.inv(k)
    np.testing.assert_allclose(t.B, ki @ b @ ki.conj().T, atol=1e-13)
    np.testing.assert_allclose(t.D, ki @ f.D @ ki.conj().T, atol=1e-13)
    np.testing.assert_allclose(t.im_B, (t.B - t.B.conj().T) / 2j, atol=1e-15)


def test_transform_raises_at_singular_point():
    f = HerglotzMatrixFunction.constant([[1j]])
    with pytest.raises(SingularityError):
        weyl_transform(f, WeylTransformSpec([[1j]]), 2j)


def test_lft_reproduces_shifted_transform():
    rng = np.random.default_rng(3)
    f = random_herglotz(rng, 2)
    k, b, c = invertible(rng, 2), cplx(rng, 2, 2), hermitian(rng, 2)
    x = lft_matrix(k, b, c)
    for z in upper_grid(5, seed=3):
        expect = c + k.conj().T @ np.linalg.inv(b - f(z)) @ k
        np.testing.assert_allclose(lft_weyl(f, x, z), expect, atol=1e-10)
    # the identity block X3 is +I for K = I, B = 0, C = 0
    x0 = lft_matrix(np.eye(2), np.zeros((2, 2)))
    np.testing.assert_allclose(x0[2:, :2], np.eye(2))


def test_characteristic_function_of_momentum_pair():
    (_, _), (m2, s2) = momentum_pair(2)
    for z in upper_grid(10):
        np.testing.assert_allclose(characteristic_function(m2, s2.B, np.eye(2), np.eye(2), z),
                                   0.5 * np.eye(2), atol=1e-15)


def test_basic_lemma_detects_a_mismatch():
    rng = np.random.default_rng(4)
    (f1, s1), (f2, s2), _ = lemma_instance(rng, 2)
    assert basic_lemma_check(f1, s1, f2, s2, upper_grid(10)).verdict
    bad = f2.shifted(0.1 * np.eye(2))
    rep = basic_lemma_check(f1, s1, bad, s2, upper_grid(10))
    assert not rep.verdict
    assert not rep.get("transform").passed
    with pytest.raises(ValueError):
        basic_lemma_check(f1, s1, f2, s2, [1 - 1j])


def test_full_equality_on_both_half_planes():
    rng = np.random.default_rng(5)
    f = random_herglotz(rng, 2)
    b = hermitian(rng, 2)
    k = invertible(rng, 2)
    s1 = WeylTransformSpec(b, np.eye(2))
    # the same transform written with a different K: congruent data
    f2 = f.congruence(k)
    s2 = WeylTransformSpec(k @ b @ k.conj().T, k)
    up = upper_grid(10)
    rep = full_equality_check(f, s1, f2, s2, up, [np.conj(z) for z in up])
    assert rep.verdict, rep.failed()
    # the momentum pair agrees only on C+
    (m1, t1), (m2, t2) = momentum_pair(1)
    rep = full_equality_check(m1, t1, m2, t2, up, [np.conj(z) for z in up])
    assert rep.get("transform_upper").passed
    assert not rep.get("transform_lower").passed


def test_weak_derivative_check():
    sigma = MatrixMeasure(1, pieces=[(-1.0, 1.0, [[0.5]])])
    f1 = HerglotzMatrixFunction(1, sigma=sigma)
    f2 = HerglotzMatrixFunction(1, C=[[3.0]], sigma=sigma)
    ys = [0.02, 0.01, 0.005, 0.0025]
    rep = weak_derivative_check(f1, f2, 0.3, ys)
    assert rep.verdict, rep.failed()
    f3 = HerglotzMatrixFunction(1, sigma=MatrixMeasure(1, pieces=[(-1.0, 1.0, [[0.6]])]))
    assert not weak_derivative_check(f1, f3, 0.3, ys).get("derivatives_equal").passed
    with pytest.raises(ValueError):
        weak_derivative_check(HerglotzMatrixFunction(1, sigma=MatrixMeasure(
            1, atoms=[(0.3, [[1.0]])])), f1, 0.3, ys)


def test_recover_parameters():
    sigma = MatrixMeasure(2, atoms=[(0.0, np.diag([1.0, 0.5]))],
                          pieces=[(1.0, 2.0, 0.3 * np.eye(2))])
    c = np.array([[1.0, 0.2j], [-0.2j, -0.5]])
    d = np.diag([2.0, 0.0])
    f = HerglotzMatrixFunction(2, C=c, D=d, sigma=sigma)
    rec = recover_parameters(f, (-0.5, 2.5), [0.02, 0.01, 0.005, 0.0025])
    np.testing.assert_allclose(rec.C, c, atol=1e-12)
    np.testing.assert_allclose(rec.D, d, atol=1e-6)
    np.testing.assert_allclose(rec.sigma.mass, np.diag([1.3, 0.8]), atol=1e-3)
    assert rec.converged


def test_probe_check_rejects_non_herglotz():
    probes = upper_grid(10)
    assert herglotz_probe_check(lambda z: np.array([[z]]), probes).verdict
    rep = herglotz_probe_check(lambda z: np.array([[-z]]), probes)
    assert not rep.get("positivity").passed
    rep = herglotz_probe_check(lambda z: np.array([[1j]]), probes)  # no symmetry
    assert not rep.get("symmetry").passed


def test_strict_at_i():
    assert strict_at_i(HerglotzMatrixFunction(2, D=np.eye(2)))
    assert not strict_at_i(HerglotzMatrixFunction(2, D=np.diag([1.0, 0.0])))


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 10**6), k=st.integers(1, 3))
def test_random_functions_are_herglotz(seed, k):
    f = random_herglotz(np.random.default_rng(seed), k, with_S=True)
    assert herglotz_probe_check(f, upper_grid(10, seed=seed % 97), rng=seed).verdict


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 10**6), k=st.integers(1, 3))
def test_shared_tilde_data_gives_lemma_conclusions(seed, k):
    rng = np.random.default_rng(seed)
    (f1, s1), (f2, s2), delta = lemma_instance(rng, k)
    rep = basic_lemma_check(f1, s1, f2, s2, upper_grid(8, seed=seed % 89), tol=1e-7)
    assert rep.verdict, rep.failed()
    assert abs(rep.data["im_B_gap"] - norm((delta - delta.conj().T) / 2j)) < 1e-9


def test_lft_identity_blocks_and_characteristic_scalar():
    rng = np.random.default_rng(9)
    f = random_herglotz(rng, 2)
    x = np.block([[np.eye(2), np.zeros((2, 2))], [np.zeros((2, 2)), np.eye(2)]])
    np.testing.assert_allclose(lft_weyl(f, x, 0.3 + 1j), f(0.3 + 1j), atol=1e-14)
    # B* - F(z) = -2i I makes W = I + 2i (i/2) J = I - J
    g = HerglotzMatrixFunction.constant(1j * np.eye(2))
    j = np.diag([1.0, -1.0])
    np.testing.assert_allclose(characteristic_function(g, 1j * np.eye(2), np.eye(2), j, 2j),
                               np.eye(2) - j, atol=1e-15)
