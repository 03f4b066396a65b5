import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from generators import cplx
from weylkit.relations import (PointClass, Subspace, adjoint, classify_point,
                               from_graph, from_matrix, parts)


def rand(seed, *shape):
    return cplx(np.random.default_rng(seed), *shape)


def test_adjoint_of_operator_is_conjugate_transpose():
    a = rand(0, 3, 4)
    t = from_matrix(a)
    s = adjoint(t)
    assert (s.dim_in, s.dim_out) == (3, 4)
    assert s.equals(from_matrix(a.conj().T))


def test_adjoint_of_multivalued_relation():
    # T = {0} x C: mul T* = (dom T)^perp = C and ker T* = (ran T)^perp = 0, so T* = T
    t = from_graph(np.array([[0.0], [1.0]]), dim_in=1)
    assert not t.is_operator()
    assert t.adjoint().equals(t)
    # the zero operator on C is selfadjoint, and its adjoint is not the multivalued one
    z = from_matrix(np.zeros((1, 1)))
    assert z.adjoint().equals(z)
    assert not z.equals(t)


def test_parts_of_a_relation():
    # graph spanned by (e1, e1) and (0, e2) in C^2 + C^2
    g = np.array([[1, 0], [0, 0], [1, 0], [0, 1]], dtype=complex)
    t = from_graph(g, dim_in=2)
    dom, ran, ker, mul = parts(t)
    assert (dom.dim, ran.dim, ker.dim, mul.dim) == (1, 2, 0, 1)
    assert mul.contains(Subspace.span(np.array([[0], [1]])))


def test_inverse_and_shift():
    a = np.array([[2.0, 1.0], [0.0, 3.0]], dtype=complex)
    t = from_matrix(a)
    np.testing.assert_allclose(t.inverse().as_matrix(), np.linalg.inv(a), atol=1e-13)
    np.testing.assert_allclose(t.shift(2.0).as_matrix(), a - 2 * np.eye(2), atol=1e-13)


def test_symmetric_and_selfadjoint():
    h = np.array([[1.0, 2j], [-2j, 0.0]])
    assert from_matrix(h).is_selfadjoint()
    # restriction of h to span(e1) is symmetric but not selfadjoint
    t = from_graph(np.vstack([np.array([[1.0], [0.0]]), h[:, :1]]), dim_in=2)
    assert t.is_symmetric()
    assert not t.is_selfadjoint()


def test_classify_point_matches_eigenvalues():
    a = np.diag([1.0, 2.0, 3.0]).astype(complex)
    t = from_matrix(a)
    assert classify_point(t, 2.0) is PointClass.POINT_SPECTRUM
    assert classify_point(t, 2.5) is PointClass.RESOLVENT
    # a relation with a nontrivial multivalued part never has full range after
    # removing it from the domain: {(0, y)} + {(x, 0)}-free example
    r = from_graph(np.array([[1.0, 0.0], [0.0, 0.0], [0.0, 0.0], [0.0, 0.0]]), dim_in=2)
    assert classify_point(r, 1.0) is PointClass.RESIDUAL_SPECTRUM


def test_subspace_algebra():
    e1 = Subspace.span(np.array([[1.0], [0.0], [0.0]]))
    e12 = Subspace.span(np.array([[1.0, 0.0], [0.0, 1.0], [0.0, 0.0]]))
    assert e12.contains(e1)
    assert e12.intersect(e1).equals(e1)
    assert (e1 + Subspace.span(np.array([[0.0], [1.0], [0.0]]))).equals(e12)
    assert e12.complement().dim == 1
    assert e1.distance(e12) == np.inf


def test_nonsquare_classification_rejected():
    with pytest.raises(ValueError):
        classify_point(from_matrix(np.ones((2, 3))), 0.0)


@settings(max_examples=40, deadline=None)
@given(p=st.integers(1, 4), q=st.integers(1, 4), r=st.integers(1, 6), seed=st.integers(0, 10**6))
def test_adjoint_is_an_involution(p, q, r, seed):
    g = rand(seed, p + q, min(r, p + q))
    t = from_graph(g, dim_in=p)
    assert t.adjoint().adjoint().equals(t, 1e-8)


@settings(max_examples=40, deadline=None)
@given(p=st.integers(1, 4), q=st.integers(1, 4), r=st.integers(1, 6), seed=st.integers(0, 10**6))
def test_adjoint_orthogonality(p, q, r, seed):
    # (f', g) = (f, g') for (f, f') in T and (g, g') in T*
    t = from_graph(rand(seed, p + q, min(r, p + q)), dim_in=p)
    s = t.adjoint()
    if s.dim == 0:
        return
    lhs = s.top.conj().T @ t.bottom
    rhs = s.bottom.conj().T @ t.top
    np.testing.assert_allclose(lhs, rhs, atol=1e-10)
    assert t.dim + s.dim == p + q
