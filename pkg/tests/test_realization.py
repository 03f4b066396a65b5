import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from weylkit._linalg import norm
from weylkit.realization import (NotSimpleError, PqsSystem, conjugate_system,
                                 decide_unitary_similarity, from_triplet, is_simple, krylov_basis,
                                 markov_parameters, random_system, random_unitary,
                                 transfer_function, verify_similarity)
from weylkit.triplets import BTInfTriplet, random_model


def test_markov_expansion_at_infinity():
    s = random_system(5, 2, seed=1)
    z = 40.0 + 3j
    params = markov_parameters(s, 30)
    assert len(params) == 31
    series = params[0] - sum(p / z ** (j + 1) for j, p in enumerate(params[1:]))
    np.testing.assert_allclose(transfer_function(s, z), series, atol=1e-13)


def test_markov_parameter_prefix():
    a = np.diag([1.0, 2.0]).astype(complex)
    k = np.array([[1.0], [1.0]], complex)
    s = PqsSystem(a, k, [[0.5]])
    p = markov_parameters(s, 3)
    assert [complex(x[0, 0]) for x in p] == [0.5, 2.0, 3.0, 5.0]
    with pytest.raises(ValueError):
        markov_parameters(s, 0)


def test_system_validation():
    with pytest.raises(ValueError):
        PqsSystem(np.eye(2), np.zeros((2, 1)))
    with pytest.raises(ValueError):  # A - A* not in ran K
        PqsSystem(np.array([[0, 1], [0, 0]], complex), np.array([[1.0], [0.0]]))
    with pytest.raises(ValueError):
        PqsSystem(np.ones((2, 3)), np.ones((2, 1)))


def test_simplicity():
    a = np.diag([1.0, 2.0, 3.0]).astype(complex)
    assert is_simple(PqsSystem(a, np.ones((3, 1))))
    not_simple = PqsSystem(a, np.array([[1.0], [1.0], [0.0]]))
    assert not is_simple(not_simple)
    assert krylov_basis(not_simple).shape == (3, 2)
    with pytest.raises(NotSimpleError):
        decide_unitary_similarity(not_simple, not_simple)


def test_decision_rejects_mismatches():
    s = random_system(4, 1, seed=2)
    assert decide_unitary_similarity(s, random_system(3, 1, seed=3)) is None
    assert decide_unitary_similarity(s, PqsSystem(s.A, s.K, s.F + 1e-3)) is None
    assert decide_unitary_similarity(s, random_system(4, 1, seed=4)) is None
    with pytest.raises(ValueError):
        decide_unitary_similarity(s, random_system(4, 2, seed=5))


def test_transfer_function_of_bt_inf_triplet():
    base = random_model(5, 2, seed=6).base
    bt = BTInfTriplet(base, np.diag([0.3, -0.2]), base.N @ (np.eye(2) + 0.1j), np.eye(2))
    sys = from_triplet(bt)
    for z in (1j, 0.3 + 0.2j):
        np.testing.assert_allclose(sys(z), bt.weyl_function(z, "relation"), atol=1e-10)


def test_verify_similarity_dimension_check():
    s = random_system(3, 1, seed=7)
    with pytest.raises(ValueError):
        verify_similarity(s, s, np.eye(2))


@settings(max_examples=30, deadline=None)
@given(n=st.integers(1, 7), seed=st.integers(0, 10**6), hermitian=st.booleans())
def test_conjugates_are_decided_equivalent(n, seed, hermitian):
    k = 1 + seed % min(3, n)
    s1 = random_system(n, k, seed=seed, hermitian=hermitian)
    v = random_unitary(n, seed=seed + 1)
    s2 = conjugate_system(s1, v)
    u = decide_unitary_similarity(s1, s2)
    assert u is not None
    assert verify_similarity(s1, s2, u).max < 1e-8
    # simple systems: the intertwiner is unique, so U must be V
    assert norm(u - v) < 1e-6


@settings(max_examples=30, deadline=None)
@given(n=st.integers(1, 6), seed=st.integers(0, 10**6))
def test_random_systems_are_valid(n, seed):
    k = 1 + seed % min(3, n)
    s = random_system(n, k, seed=seed)
    assert is_simple(s)
    skew = (s.A - s.A.conj().T) / 2j
    # dissipative construction: Im A >= 0
    assert np.linalg.eigvalsh(skew).min() > -1e-10


def test_two_by_two_model_system():
    a = np.array([[0.0, 1.0], [1.0, 0.0]], complex)
    s = PqsSystem(a, np.array([[0.0], [1.0]]))
    assert is_simple(s)
    assert [complex(p[0, 0]) for p in markov_parameters(s, 4)] == [0, 1, 0, 1, 0]
    assert is_simple(PqsSystem(random_unitary(3, seed=1), random_unitary(3, seed=2)))
    eye = np.eye(2, dtype=complex)
    p = markov_parameters(PqsSystem(np.zeros((2, 2)), eye, eye), 3)
    assert all(np.array_equal(x, y) for x, y in zip(p, [eye, eye, 0 * eye, 0 * eye]))


def test_identity_and_noisy_unitaries():
    s = random_system(4, 2, seed=21)
    u = decide_unitary_similarity(s, s)
    assert norm(u - np.eye(4)) < 1e-10
    other = random_system(4, 2, seed=22)
    assert verify_similarity(s, other, np.eye(4)).max > 1e-3
    noise = 1e-6 * np.random.default_rng(0).standard_normal((4, 4))
    res = verify_similarity(s, s, np.eye(4) + noise)
    assert 1e-8 < res.max < 1e-4


@settings(max_examples=25, deadline=None)
@given(n=st.integers(1, 6), seed=st.integers(0, 10**6))
def test_decision_properties(n, seed):
    k = 1 + seed % min(3, n)
    s1 = random_system(n, k, seed=seed)
    s2 = conjugate_system(s1, random_unitary(n, seed=seed + 7))
    u = decide_unitary_similarity(s1, s2)
    # deeper Markov comparison does not change the decision
    u4 = decide_unitary_similarity(s1, s2, depth=4 * n)
    assert (u is None) == (u4 is None)
    s3 = PqsSystem(s2.A, s2.K, s2.F + 1e-3)
    assert decide_unitary_similarity(s1, s3, depth=4 * n) is None
    # swapping the arguments gives the adjoint
    v = decide_unitary_similarity(s2, s1)
    assert norm(v - u.conj().T) < 1e-8
    # equivalent systems have equal transfer functions
    rng = np.random.default_rng(seed)
    for z in rng.uniform(-3, 3, 20) + 1j * rng.uniform(0.1, 3, 20):
        assert norm(transfer_function(s1, z) - transfer_function(s2, z)) < 1e-8


@settings(max_examples=20, deadline=None)
@given(n=st.integers(1, 6), seed=st.integers(0, 10**6))
def test_hermitian_state_gives_herglotz_transfer_function(n, seed):
    from weylkit.herglotz import herglotz_probe_check
    from weylkit.equivalence import upper_grid
    s = random_system(n, 1 + seed % min(3, n), seed=seed, hermitian=True)
    assert herglotz_probe_check(s, upper_grid(10, seed=seed % 13), tol=1e-9).verdict
