"""Boundary triplets for nondensely defined bounded symmetric matrices.

Coordinates are adapted to ``H = 𝒟 ⊕ 𝔑``: the first ``d`` axes span the
domain ``𝒟`` of the symmetric operator ``A``, the last ``k = n - d`` axes
span ``𝔑 = H ⊖ 𝒟 = mul A*``.  In that basis ``A = [A00; A10]`` and every
proper extension inside ``A*`` that is an operator reads

    [[A00, A10*],
     [A10, B0  ]]

for some ``k x k`` block ``B0``.

Elements of ``A*`` are stacked vectors ``[f; f']`` of length ``2n`` and
boundary maps are ``k x 2n`` matrices acting on them.  A triplet for the
dual pair ``{A, A}`` carries four maps ``Γ0, Γ1, Γ0ᵀ, Γ1ᵀ`` with the Green
identity

    (f', g) - (f, g') = (Γ1 f̂, Γ0ᵀ ĝ) - (Γ0 f̂, Γ1ᵀ ĝ),

and an ordinary triplet is the case ``Γᵀ = Γ``.

The map ``γ`` is stored as an ``n x k`` matrix with column span ``𝔑``;
``γ⁻¹`` is the inverse of its restriction, ``G⁻¹ N*`` where ``γ = N G``.
"""
from dataclasses import dataclass

import numpy as np
from numpy.random import default_rng

from ._linalg import (DEFAULT_TOL, SingularityError, as_matrix, checked_inv, frozen, herm,
                      min_singular, norm, null, rank)
from .herglotz import HerglotzMatrixFunction
from .measures import MatrixMeasure, spectral_measure
from .relations import LinearRelation, PointClass, Subspace, from_graph

__all__ = ["NondenseSymmetric", "DualPairTriplet", "OrdinaryTriplet", "BTInfTriplet",
           "adjoint_decomposition", "build_bt_inf", "boundary_maps", "weyl_function",
           "extension_from_boundary", "classify_extension_point", "ordinary_model",
           "hat_transform", "hat_boundary_operator", "dual_pair_triplet", "bt_inf_data",
           "mobius_transform", "schur_compression", "random_model", "green_form"]


@dataclass(frozen=True, eq=False)
class NondenseSymmetric:
    """Symmetric ``A = [A00; A10] : 𝒟 -> H`` in adapted coordinates.

    Parameters
    ----------
    A00 : (d, d) Hermitian
    A10 : (k, d)
    """

    A00: np.ndarray
    A10: np.ndarray

    def __post_init__(self):
        a00 = as_matrix(self.A00)
        a10 = np.asarray(self.A10, dtype=complex)
        if a10.ndim == 1:
            a10 = a10.reshape(-1, a00.shape[0])
        d = a00.shape[0]
        if a00.shape != (d, d) or d < 1:
            raise ValueError("A00 must be a nonempty square matrix")
        if a10.ndim != 2 or a10.shape[1] != d or a10.shape[0] < 1:
            raise ValueError("A10 must be k x d with k >= 1 (deficiency must be positive)")
        if norm(a00 - a00.conj().T) > 1e-10 * max(1.0, norm(a00)):
            raise ValueError("A00 must be Hermitian")
        object.__setattr__(self, "A00", frozen(herm(a00)))
        object.__setattr__(self, "A10", frozen(a10))

    @classmethod
    def from_restriction(cls, a_tilde, domain, tol=DEFAULT_TOL):
        """Restrict a matrix to a subspace and rotate to adapted coordinates.

        Returns
        -------
        base : NondenseSymmetric
        Q : (n, n) unitary
            Columns ``[basis of 𝒟, basis of 𝔑]``; original coordinates are
            ``Q @ adapted``.
        """
        a = as_matrix(a_tilde)
        if not isinstance(domain, Subspace):
            domain = Subspace.span(domain, tol)
        q = np.hstack([domain.basis, domain.complement(tol).basis])
        qd, qn = q[:, : domain.dim], q[:, domain.dim:]
        a_op = a @ qd
        return cls(qd.conj().T @ a_op, qn.conj().T @ a_op), q

    @property
    def d(self):
        return self.A00.shape[0]

    @property
    def k(self):
        return self.A10.shape[0]

    @property
    def n(self):
        return self.d + self.k

    @property
    def deficiency(self):
        return (self.k, self.k)

    @property
    def E(self):
        """Embedding of ``𝒟`` (``n x d``)."""
        return np.eye(self.n, self.d, dtype=complex)

    @property
    def N(self):
        """Embedding of ``𝔑`` (``n x k``)."""
        return np.eye(self.n, dtype=complex)[:, self.d:]

    @property
    def P_N(self):
        return self.N @ self.N.conj().T

    @property
    def A_op(self):
        return np.vstack([self.A00, self.A10])

    @property
    def domain(self):
        return Subspace(self.E)

    @property
    def defect_space(self):
        return Subspace(self.N)

    def relation(self):
        return from_graph(np.vstack([self.E, self.A_op]), dim_in=self.n)

    def extension(self, B0=None):
        """Operator extension ``[[A00, A10*], [A10, B0]]`` (``B0 = 0`` by default)."""
        k = self.k
        b0 = np.zeros((k, k), complex) if B0 is None else as_matrix(B0, k)
        return np.block([[self.A00, self.A10.conj().T], [self.A10, b0]])

    def adjoint_graph(self):
        """Spanning matrix ``[[I, 0], [Ã0, N]]`` of ``A*`` (``Ã0 = extension(0)``)."""
        n, k = self.n, self.k
        return np.block([[np.eye(n), np.zeros((n, k))], [self.extension(), self.N]])

    def adjoint(self):
        return from_graph(self.adjoint_graph(), dim_in=self.n)

    def conjugate(self, v_d, v_n):
        """Unitarily equivalent copy under ``V = V_d ⊕ V_n``."""
        v_d, v_n = as_matrix(v_d, self.d), as_matrix(v_n, self.k)
        return NondenseSymmetric(v_d @ self.A00 @ v_d.conj().T, v_n @ self.A10 @ v_d.conj().T)


def green_form(n):
    """Matrix ``J`` with ``(f', g) - (f, g') = ĝ* J f̂``."""
    i = np.eye(n)
    z = np.zeros((n, n))
    return np.block([[z, i], [-i, z]]).astype(complex)


class DualPairTriplet:
    """Boundary triplet for the dual pair ``{A, A}`` given by four ``k x 2n`` maps.

    Parameters
    ----------
    relation : LinearRelation
        The symmetric relation ``A``.
    G0, G1, G0T, G1T : (k, 2n) arrays
    base : NondenseSymmetric, optional
        Block data of ``A`` when it is known.
    tol : float
    """

    def __init__(self, relation, G0, G1, G0T=None, G1T=None, base=None, tol=DEFAULT_TOL):
        self.relation = relation
        self.n = relation.dim_in
        self.G0 = frozen(G0)
        self.G1 = frozen(G1)
        self.G0T = self.G0 if G0T is None else frozen(G0T)
        self.G1T = self.G1 if G1T is None else frozen(G1T)
        self.k = self.G0.shape[0]
        for g in (self.G0, self.G1, self.G0T, self.G1T):
            if g.shape != (self.k, 2 * self.n):
                raise ValueError("boundary maps must be %d x %d" % (self.k, 2 * self.n))
        self.base = base
        self.tol = tol
        self._adjoint = None

    @property
    def adjoint(self):
        if self._adjoint is None:
            if self.base is not None:
                self._adjoint = self.base.adjoint()
            else:
                self._adjoint = self.relation.adjoint(self.tol)
        return self._adjoint

    @property
    def adjoint_basis(self):
        return self.adjoint.graph.basis

    def is_ordinary(self):
        return norm(self.G0 - self.G0T) == 0 and norm(self.G1 - self.G1T) == 0

    def boundary_values(self, h):
        """``(Γ0ĥ, Γ1ĥ, Γ0ᵀĥ, Γ1ᵀĥ)`` for ``ĥ = [f; f'] ∈ A*``.

        Raises
        ------
        ValueError
            If ``ĥ`` is not in ``A*``.
        """
        h = np.asarray(h, dtype=complex)
        scale = max(1.0, float(np.linalg.norm(h)))
        if self.adjoint.graph.residual(h) > 10 * self.tol * scale:
            raise ValueError("vector is not an element of A*")
        return self.G0 @ h, self.G1 @ h, self.G0T @ h, self.G1T @ h

    def green_residual(self):
        """Max deviation from the Green identity on an orthonormal basis of ``A*``."""
        phi = self.adjoint_basis
        lhs = phi.conj().T @ green_form(self.n) @ phi
        rhs = (self.G0T @ phi).conj().T @ (self.G1 @ phi) - \
            (self.G1T @ phi).conj().T @ (self.G0 @ phi)
        return norm(lhs - rhs)

    def surjectivity(self):
        """Smallest singular values of ``Γ`` and ``Γᵀ`` restricted to ``A*``."""
        phi = self.adjoint_basis
        g = np.vstack([self.G0, self.G1]) @ phi
        gt = np.vstack([self.G0T, self.G1T]) @ phi
        return min_singular(g.conj().T), min_singular(gt.conj().T)

    def kernel(self, maps):
        """``{ĥ ∈ A* : M ĥ = 0}`` for a stacked map ``M``."""
        phi = self.adjoint_basis
        ker = null(np.asarray(maps) @ phi, self.tol)
        if ker.shape[1] == 0:
            return LinearRelation(self.n, self.n, Subspace.zero(2 * self.n))
        return from_graph(phi @ ker, self.tol, dim_in=self.n)

    def joint_kernel(self):
        return self.kernel(np.vstack([self.G0, self.G1, self.G0T, self.G1T]))

    def joint_kernel_residual(self):
        """Gap between ``ker Γ ∩ ker Γᵀ`` and ``A``."""
        return self.joint_kernel().graph.distance(self.relation.graph)

    @property
    def A0(self):
        """``ker Γ0`` as a relation."""
        return self.kernel(self.G0)

    def A0_matrix(self):
        return self.A0.as_matrix(self.tol)

    def extension(self, theta):
        """``A_Θ = ker(Γ1 - ΘΓ0)``."""
        return extension_from_boundary(self, theta)

    def defect_vectors(self, z):
        """Orthonormal basis of ``ker(A* - z)`` from the relations module."""
        _, _, ker, _ = self.adjoint.shift(z, self.tol).parts(self.tol)
        return ker.basis

    def weyl_function(self, z, method="relation"):
        """``M(z)`` with ``Γ1 f̂_z = M(z) Γ0 f̂_z`` on ``f̂_z = [f; zf]``, ``f ∈ ker(A* - z)``."""
        z = complex(z)
        if method == "relation":
            f = self.defect_vectors(z)
        elif method == "defect" and self.base is not None:
            a = self.base.extension()
            f = checked_inv(a - z * np.eye(self.n), self.tol, z, "Ã0 - z") @ self.base.N
        else:
            raise ValueError("unknown method %r" % method)
        if f.shape[1] != self.k:
            raise SingularityError("defect space at z=%r has dimension %d" % (z, f.shape[1]), z)
        h = np.vstack([f, z * f])
        g0 = self.G0 @ h
        return (self.G1 @ h) @ checked_inv(g0, self.tol, z, "Γ0 on the defect space")

    def is_bt_inf(self):
        """Whether ``Γ0`` and ``Γ0ᵀ`` agree on ``{0} ⊕ mul A*``."""
        _, _, _, mul = self.adjoint.parts(self.tol)
        if mul.dim == 0:
            return True
        h = np.vstack([np.zeros_like(mul.basis), mul.basis])
        return norm((self.G0 - self.G0T) @ h) <= self.tol * max(1.0, norm(self.G0))


class OrdinaryTriplet(DualPairTriplet):
    """Ordinary boundary triplet (``Γᵀ = Γ``).

    ``representation`` optionally holds the Weyl function as an exact
    :class:`HerglotzMatrixFunction`; ``gamma`` the parametrisation of ``𝔑``
    for the model triplet.
    """

    def __init__(self, relation, G0, G1, base=None, representation=None, gamma=None,
                 tol=DEFAULT_TOL):
        super().__init__(relation, G0, G1, None, None, base, tol)
        self.representation = representation
        self.gamma = None if gamma is None else frozen(gamma)

    def weyl_function(self, z, method="closed"):
        if method == "closed":
            if self.representation is None:
                method = "relation"
            else:
                return self.representation(z)
        return super().weyl_function(z, method)

    def green_residual_symmetric(self):
        phi = self.adjoint_basis
        lhs = phi.conj().T @ green_form(self.n) @ phi
        g0, g1 = self.G0 @ phi, self.G1 @ phi
        return norm(lhs - (g0.conj().T @ g1 - g1.conj().T @ g0))


class BTInfTriplet(DualPairTriplet):
    """Triplet of class BT_∞ generated by ``(A0, γ, F)``.

    ``Γ0 = γ⁻¹(f' - A0 f)``, ``Γ1 = -γ*P_𝔑 f + F γ⁻¹(f' - A0 f)`` and the
    transposed maps use ``A0*`` and ``F*``.
    """

    def __init__(self, base, B0, gamma, F, tol=DEFAULT_TOL):
        k, n = base.k, base.n
        gamma = np.asarray(gamma, dtype=complex).reshape(n, k)
        F = as_matrix(F, k)
        if Subspace.span(gamma, tol).distance(base.defect_space) > 1e-8 or rank(gamma, tol) < k:
            raise ValueError("gamma must map C^k bijectively onto the defect subspace")
        self.B0 = frozen(as_matrix(B0, k))
        self.gamma = frozen(gamma)
        self.F = frozen(F)
        a0 = base.extension(self.B0)
        self.A0_op = frozen(a0)
        g_small = base.N.conj().T @ gamma
        gi = np.linalg.inv(g_small) @ base.N.conj().T
        gs = gamma.conj().T @ base.P_N
        i = np.eye(n)
        G0 = gi @ np.hstack([-a0, i])
        G1 = np.hstack([-gs - F @ gi @ a0, F @ gi])
        a0s = a0.conj().T
        G0T = gi @ np.hstack([-a0s, i])
        G1T = np.hstack([-gs - F.conj().T @ gi @ a0s, F.conj().T @ gi])
        super().__init__(base.relation(), G0, G1, G0T, G1T, base, tol)

    def weyl_function(self, z, method="closed"):
        """``F + γ*(A0 - z)⁻¹γ`` (``method="closed"``) or from defect vectors."""
        if method != "closed":
            return super().weyl_function(z, method)
        z = complex(z)
        r = checked_inv(self.A0_op - z * np.eye(self.n), self.tol, z, "A0 - z")
        return self.F + self.gamma.conj().T @ r @ self.gamma


def adjoint_decomposition(base, a_tilde, tol=DEFAULT_TOL):
    """``A* = Ã ∔ ({0} ⊕ 𝔑)`` for an operator ``A ⊂ Ã ⊂ A*``.

    Raises
    ------
    ValueError
        If ``Ã`` does not extend ``A`` or is not contained in ``A*``.
    """
    a = as_matrix(a_tilde, base.n)
    d = base.d
    scale = max(1.0, norm(a))
    if norm(a[:, :d] - base.A_op) > tol * scale:
        raise ValueError("matrix does not extend A (disagrees on the domain)")
    if norm(a[:d, :] - base.A_op.conj().T) > tol * scale:
        raise ValueError("matrix is not contained in A*")
    n, k = base.n, base.k
    return from_graph(np.block([[np.eye(n), np.zeros((n, k))], [a, base.N]]), tol, dim_in=n)


def build_bt_inf(base, a_tilde, gamma, F=None, tol=DEFAULT_TOL):
    """BT_∞ triplet with ``A0 = Ã``, ``γ`` and forbidden operator ``F``."""
    a = as_matrix(a_tilde, base.n)
    adjoint_decomposition(base, a, tol)
    k = base.k
    F = np.zeros((k, k), complex) if F is None else F
    return BTInfTriplet(base, a[base.d:, base.d:], gamma, F, tol)


def boundary_maps(triplet, h):
    return triplet.boundary_values(h)


def weyl_function(triplet, z, method=None):
    if method is None:
        return triplet.weyl_function(z)
    return triplet.weyl_function(z, method)


def extension_from_boundary(triplet, theta):
    """``A_Θ = ker(Γ1 - ΘΓ0)`` for a ``k x k`` matrix ``Θ``."""
    theta = as_matrix(theta, triplet.k)
    return triplet.kernel(triplet.G1 - theta @ triplet.G0)


def classify_extension_point(triplet, theta, lam, tol=DEFAULT_TOL):
    """Classify ``λ`` for ``A_Θ`` through ``Θ - M(λ)`` and directly.

    Returns
    -------
    (PointClass, PointClass)
        Classification from the boundary data and from the relation.
    """
    lam = complex(lam)
    theta = as_matrix(theta, triplet.k)
    try:
        m = triplet.weyl_function(lam)
    except SingularityError as exc:
        raise ValueError("λ=%r is not a regular point of A0" % lam) from exc
    if rank(theta - m, tol) < triplet.k:
        by_boundary = PointClass.POINT_SPECTRUM
    else:
        by_boundary = PointClass.RESOLVENT
    by_relation = extension_from_boundary(triplet, theta).classify_point(lam, tol)
    return by_boundary, by_relation


def ordinary_model(base, gamma=None, tol=DEFAULT_TOL):
    """Ordinary triplet ``Γ0 = γ*P_𝔑 f``, ``Γ1 = γ⁻¹(f' - Ã0 f)``, ``Ã0 = extension(0)``.

    ``gamma`` may be the ``n x k`` map onto ``𝔑`` or its ``k x k`` matrix ``G``
    (``γ = N G``).  The Weyl function is
    ``G⁻¹(z + A10(A00 - z)⁻¹A10*)G⁻*``; its exact Herglotz representation is
    attached as ``representation``.
    """
    k, n = base.k, base.n
    if gamma is None:
        g = np.eye(k, dtype=complex)
    else:
        gamma = np.asarray(gamma, dtype=complex)
        if gamma.shape == (n, k):
            if Subspace.span(gamma, tol).distance(base.defect_space) > 1e-8:
                raise ValueError("gamma must have range equal to the defect subspace")
            g = base.N.conj().T @ gamma
        else:
            g = as_matrix(gamma, k)
    gi = checked_inv(g, tol, what="gamma")
    nst = base.N.conj().T
    a0 = base.extension()
    G0 = np.hstack([g.conj().T @ nst, np.zeros((k, n))])
    G1 = gi @ nst @ np.hstack([-a0, np.eye(n)])
    return OrdinaryTriplet(base.relation(), G0, G1, base, _model_representation(base, gi),
                           base.N @ g, tol)


def _model_representation(base, gi):
    gic = gi.conj().T
    sm = spectral_measure(base.A00)
    atoms, c = [], np.zeros((base.k, base.k), complex)
    for t, p in sm.atoms:
        w = gi @ base.A10 @ p @ base.A10.conj().T @ gic
        atoms.append((t, w))
        c = c + w * (t / (1.0 + t * t))
    return HerglotzMatrixFunction(base.k, C=c, D=gi @ gic,
                                  sigma=MatrixMeasure(base.k, tuple(atoms)))


def hat_boundary_operator(K, B, T):
    """``K⁻¹(T - Re B)K⁻¹*``."""
    k = as_matrix(K)
    ki = np.linalg.inv(k)
    return ki @ (as_matrix(T) - herm(as_matrix(B))) @ ki.conj().T


def hat_transform(model, K, B, tol=DEFAULT_TOL):
    """Ordinary triplet ``Γ̂0 = K*Γ0``, ``Γ̂1 = K⁻¹(Γ1 - (Re B)Γ0)``.

    The Weyl function becomes ``K⁻¹(M - Re B)K⁻¹*`` and ``ker Γ̂0 = ker Γ0``.
    """
    k = as_matrix(K, model.k)
    ki = checked_inv(k, tol, what="K")
    re_b = herm(as_matrix(B, model.k))
    G0 = k.conj().T @ model.G0
    G1 = ki @ (model.G1 - re_b @ model.G0)
    rep = None
    if getattr(model, "representation", None) is not None:
        rep = model.representation.shifted(-re_b).congruence(ki)
    return OrdinaryTriplet(model.relation, G0, G1, model.base, rep, None, tol)


def dual_pair_triplet(model, K, B, tol=DEFAULT_TOL):
    """Triplet for ``{A, A}``: ``Γ̃0 = K⁻¹(BΓ0 - Γ1)``, ``Γ̃1 = K*Γ0``,
    ``Γ̃0ᵀ = K⁻¹(B*Γ0 - Γ1)``, ``Γ̃1ᵀ = K*Γ0``.

    Its Weyl function is ``K*(B - M(z))⁻¹K``; ``ker Γ̃0 = ker(Γ1 - BΓ0)``.
    """
    k = as_matrix(K, model.k)
    b = as_matrix(B, model.k)
    ki = checked_inv(k, tol, what="K")
    G0 = ki @ (b @ model.G0 - model.G1)
    G1 = k.conj().T @ model.G0
    G0T = ki @ (b.conj().T @ model.G0 - model.G1)
    return DualPairTriplet(model.relation, G0, G1, G0T, G1, model.base, tol)


def bt_inf_data(triplet):
    """Read ``(A0, γ, F)`` off a triplet of class BT_∞ with block data.

    ``A0 = ker Γ0`` must be an operator, ``γ⁻¹ = Γ0`` on ``{0} ⊕ 𝔑`` and
    ``F h = Γ1{0, γh}``.

    Returns
    -------
    BTInfTriplet
        Rebuilt from the extracted data; compare its maps with the input to
        confirm the triplet really is of this form.
    """
    base = triplet.base
    if base is None:
        raise ValueError("triplet has no block data for A")
    n = base.n
    a0 = triplet.A0_matrix()
    gi = triplet.G0[:, n:] @ base.N
    gamma = base.N @ checked_inv(gi, triplet.tol, what="Γ0 on mul A*")
    F = triplet.G1[:, n:] @ gamma
    return BTInfTriplet(base, a0[base.d:, base.d:], gamma, F, triplet.tol)


def mobius_transform(triplet, lam0, tol=DEFAULT_TOL):
    """Triplet for ``S = (A - λ0)⁻¹`` with maps ``±Γ ∘ Y``, ``Y{f, f'} = {f', f + λ0 f'}``.

    The input must belong to BT_{λ0}: ``Γ0 = Γ0ᵀ`` on ``{f, λ0 f} ∈ A*``.
    Then ``ker Γ̇0 = (A0 - λ0)⁻¹`` and ``M_Ṗ(z) = -M(λ0 + 1/z)``.

    Raises
    ------
    ValueError
        If ``λ0`` is not real, is an eigenvalue of ``A`` or ``A0``, or the
        BT_{λ0} condition fails.
    """
    lam0 = complex(lam0)
    if lam0.imag != 0:
        raise ValueError("λ0 must be real")
    lam0 = lam0.real
    n = triplet.n
    a = triplet.relation
    if a.shift(lam0, tol).parts(tol)[2].dim:
        raise ValueError("λ0=%r is an eigenvalue of A" % lam0)
    if triplet.A0.classify_point(lam0, tol) is not PointClass.RESOLVENT:
        raise ValueError("λ0=%r is not in the resolvent set of A0" % lam0)
    _, _, ker, _ = triplet.adjoint.shift(lam0, tol).parts(tol)
    h = np.vstack([ker.basis, lam0 * ker.basis])
    if norm((triplet.G0 - triplet.G0T) @ h) > 1e-8 * max(1.0, norm(triplet.G0)):
        raise ValueError("triplet is not of class BT_λ0 at λ0=%r" % lam0)
    i, z = np.eye(n), np.zeros((n, n))
    y = np.block([[z, i], [i, lam0 * i]])
    yinv = np.block([[-lam0 * i, i], [i, z]])
    s = from_graph(yinv @ a.graph.basis, tol, dim_in=n)
    return DualPairTriplet(s, triplet.G0 @ y, -triplet.G1 @ y, triplet.G0T @ y,
                           -triplet.G1T @ y, None, tol)


def schur_compression(a0_full, k, z, tol=DEFAULT_TOL):
    """``P_𝔑(A0 - z)⁻¹|𝔑`` directly and via the Schur complement.

    ``𝔑`` is spanned by the last ``k`` coordinates.

    Returns
    -------
    direct, schur : (k, k) arrays
    """
    a = as_matrix(a0_full)
    n = a.shape[0]
    d = n - k
    z = complex(z)
    direct = checked_inv(a - z * np.eye(n), tol, z, "A0 - z")[d:, d:]
    a00, a01, a10, b = a[:d, :d], a[:d, d:], a[d:, :d], a[d:, d:]
    r00 = checked_inv(a00 - z * np.eye(d), tol, z, "A00 - z")
    schur = checked_inv(b - z * np.eye(k) - a10 @ r00 @ a01, tol, z, "Schur complement")
    return direct, schur


def random_model(n, k, seed=None, scale=1.0):
    """Random ordinary model with ``n``-dimensional state and deficiency ``k``."""
    if not 1 <= k < n:
        raise ValueError("need 1 <= k < n")
    rng = default_rng(seed)
    d = n - k
    x = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    a00 = scale * (x + x.conj().T) / 2
    a10 = scale * (rng.standard_normal((k, d)) + 1j * rng.standard_normal((k, d)))
    g = rng.standard_normal((k, k)) + 1j * rng.standard_normal((k, k)) + 2 * np.eye(k)
    return ordinary_model(NondenseSymmetric(a00, a10), g)
