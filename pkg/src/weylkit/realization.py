"""Transfer functions of pqs-systems and the unitary-similarity decision.

A system ``α = (Ã, K, F)`` has transfer function ``Θ(z) = F + K*(Ã - z)⁻¹K``
and Markov parameters ``F, K*K, K*ÃK, K*Ã²K, ...``; the ``z^{-j-1}``
coefficient of the expansion at infinity is ``-K*ÃʲK``.

Two simple systems with the same Markov parameters are unitarily similar.
Equal Markov parameters give equal Krylov Gram matrices (``Ã - Ã*`` is a
congruence of a matrix read off ``K*K`` and ``K*ÃK``), so the map sending one
Krylov basis to the other is unitary.  It is the unique solution of the
linear equations ``UÃ₁ = Ã₂U``, ``UK₁ = K₂``, which
:func:`decide_unitary_similarity` solves directly in least squares; this
avoids inverting the often ill-conditioned Krylov matrices.
"""
from dataclasses import dataclass

import numpy as np
from numpy.random import default_rng
from scipy import linalg as sla

from ._linalg import DEFAULT_TOL, as_matrix, checked_inv, frozen, norm, orth, rank

__all__ = ["PqsSystem", "NotSimpleError", "transfer_function", "is_simple", "krylov_basis",
           "markov_parameters", "decide_unitary_similarity", "verify_similarity",
           "SimilarityResiduals", "random_system", "from_triplet", "conjugate_system"]

#: ``decide_unitary_similarity`` accepts ``U`` when every residual is at most
#: ``SIMILARITY_FACTOR * tol * scale`` with ``scale = max(1, |Ã₁|, |K₁|)``
SIMILARITY_FACTOR = 100.0


class NotSimpleError(ValueError):
    """A system fails the Krylov simplicity test."""


@dataclass(frozen=True, eq=False)
class PqsSystem:
    """System ``(Ã, K, F)`` with ``ran(Ã - Ã*) ⊆ ran K`` and ``ker K = {0}``."""

    A: np.ndarray
    K: np.ndarray
    F: np.ndarray = None
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        a = as_matrix(self.A)
        n = a.shape[0]
        if a.shape != (n, n):
            raise ValueError("state operator must be square")
        kk = np.asarray(self.K, dtype=complex)
        if kk.ndim == 1:
            kk = kk.reshape(n, -1)
        if kk.shape[0] != n:
            raise ValueError("K must have %d rows" % n)
        k = kk.shape[1]
        f = np.zeros((k, k), complex) if self.F is None else as_matrix(self.F, k)
        if rank(kk, self.tol) < k:
            raise ValueError("K must be injective")
        skew = a - a.conj().T
        q = orth(kk, self.tol)
        if norm(skew - q @ (q.conj().T @ skew)) > 1e-8 * max(1.0, norm(a)):
            raise ValueError("ran(A - A*) is not contained in ran K")
        object.__setattr__(self, "A", frozen(a))
        object.__setattr__(self, "K", frozen(kk))
        object.__setattr__(self, "F", frozen(f))

    @property
    def n(self):
        return self.A.shape[0]

    @property
    def k(self):
        return self.K.shape[1]

    def __call__(self, z):
        return transfer_function(self, z)


def transfer_function(sys, z):
    """``F + K*(Ã - z)⁻¹K``."""
    z = complex(z)
    r = checked_inv(sys.A - z * np.eye(sys.n), sys.tol, z, "A - z")
    return sys.F + sys.K.conj().T @ r @ sys.K


def _orth_new(w, tol, scale):
    """Pivoted QR of ``w``; returns ``(pivots, R11)`` for the numerically new columns."""
    if w.shape[1] == 0:
        return np.zeros(0, int), np.zeros((0, 0), complex)
    _, r, p = sla.qr(w, mode="economic", pivoting=True)
    diag = np.abs(np.diag(r))
    keep = int(np.sum(diag > tol * scale))
    return p[:keep], r[:keep, :keep]


def _arnoldi(a, k, tol):
    """Block Arnoldi with pivoted QR deflation; orthonormal basis of the Krylov space."""
    n = a.shape[0]
    scale = max(1.0, norm(a), norm(k))
    p, r = _orth_new(k, tol, scale)
    blocks = [k[:, p] @ np.linalg.inv(r)] if len(p) else []
    while blocks and sum(b.shape[1] for b in blocks) < n:
        v = np.hstack(blocks)
        w = a @ blocks[-1]
        for _ in range(2):
            w = w - v @ (v.conj().T @ w)
        p, r = _orth_new(w, tol, scale)
        if not len(p):
            break
        blocks.append(w[:, p] @ np.linalg.inv(r))
    return np.hstack(blocks) if blocks else np.zeros((n, 0), complex)


def krylov_basis(sys, tol=None):
    """Orthonormal basis of ``span{ÃʲK}`` (block Arnoldi with pivoted QR)."""
    tol = sys.tol if tol is None else tol
    return _arnoldi(sys.A, sys.K, tol)


def is_simple(sys, tol=None):
    """Whether the Krylov space of ``ran K`` under ``Ã`` is the whole space."""
    return krylov_basis(sys, tol).shape[1] == sys.n


def markov_parameters(sys, m):
    """``[F, K*K, K*ÃK, ..., K*Ã^{m-1}K]`` (``m + 1`` matrices)."""
    if m < 1:
        raise ValueError("m must be at least 1")
    out = [np.array(sys.F)]
    v = np.array(sys.K)
    for _ in range(m):
        out.append(sys.K.conj().T @ v)
        v = sys.A @ v
    return out


def _markov_gap(s1, s2, depth):
    gap = 0.0
    for p1, p2 in zip(markov_parameters(s1, depth), markov_parameters(s2, depth)):
        gap = max(gap, norm(p1 - p2) / max(1.0, norm(p1)))
    return gap


@dataclass
class SimilarityResiduals:
    unitarity: float
    K: float
    A: float
    F: float

    @property
    def max(self):
        return max(self.unitarity, self.K, self.A, self.F)


def verify_similarity(s1, s2, u):
    """Residuals ``|U*U - I|``, ``|UK₁ - K₂|``, ``|UÃ₁ - Ã₂U|``, ``|F₁ - F₂|``."""
    u = np.asarray(u, dtype=complex)
    if u.shape != (s2.n, s1.n) or s1.n != s2.n or s1.k != s2.k:
        raise ValueError("dimension mismatch")
    return SimilarityResiduals(norm(u.conj().T @ u - np.eye(s1.n)),
                               norm(u @ s1.K - s2.K),
                               norm(u @ s1.A - s2.A @ u),
                               norm(s1.F - s2.F))


def decide_unitary_similarity(s1, s2, tol=1e-8, depth=None, rank_tol=None):
    """Return a unitary ``U`` with ``UK₁ = K₂``, ``UÃ₁ = Ã₂U`` or ``None``.

    ``None`` is returned when the state dimensions differ, ``F₁ ≠ F₂`` or a
    Markov parameter up to index ``depth`` (default ``2 max(n₁, n₂)``)
    differs by more than ``tol`` (relative to ``max(1, |P₁|)``).  Otherwise
    ``U`` solves the intertwining equations in least squares and is polished
    to the nearest unitary; it is returned only if every
    residual of :func:`verify_similarity` is at most
    ``SIMILARITY_FACTOR * tol * max(1, |Ã₁|, |K₁|)``.

    Raises
    ------
    NotSimpleError
        If either system is not simple.
    ValueError
        If the input spaces ``C^k`` differ.
    """
    if s1.k != s2.k:
        raise ValueError("systems act on different input spaces")
    rank_tol = min(s1.tol, s2.tol) if rank_tol is None else rank_tol
    for j, s in enumerate((s1, s2), start=1):
        if not is_simple(s, rank_tol):
            raise NotSimpleError("system %d is not simple" % j)
    if s1.n != s2.n:
        return None
    depth = 2 * max(s1.n, s2.n) if depth is None else depth
    if norm(s1.F - s2.F) > tol * max(1.0, norm(s1.F)):
        return None
    if _markov_gap(s1, s2, depth) > tol:
        return None
    u, _ = sla.polar(_intertwiner(s1, s2))
    res = verify_similarity(s1, s2, u)
    if res.max > SIMILARITY_FACTOR * tol * max(1.0, norm(s1.A), norm(s1.K)):
        return None
    return u


def _intertwiner(s1, s2):
    # least-squares solution of U Ã₁ - Ã₂ U = 0, U K₁ = K₂ (column-major vec);
    # unique for simple systems
    n, eye = s1.n, np.eye(s1.n)
    lhs = np.vstack([np.kron(s1.A.T, eye) - np.kron(eye, s2.A), np.kron(s1.K.T, eye)])
    rhs = np.concatenate([np.zeros(n * n, complex), s2.K.reshape(-1, order="F")])
    x = np.linalg.lstsq(lhs, rhs, rcond=None)[0]
    return x.reshape(n, n, order="F")


def conjugate_system(sys, v):
    """``(VÃV*, VK, F)`` for a unitary ``V``."""
    v = as_matrix(v, sys.n)
    return PqsSystem(v @ sys.A @ v.conj().T, v @ sys.K, sys.F, sys.tol)


def random_system(n, k, spectral_radius=1.0, seed=None, hermitian=False, max_tries=100):
    """Random simple system; deterministic in ``seed``.

    ``Ã = H + i K P K*`` with ``H`` Hermitian and ``P ⪰ 0`` (``P = 0`` when
    ``hermitian``), scaled to the requested spectral radius.
    """
    if not 1 <= k <= n:
        raise ValueError("need 1 <= k <= n")
    rng = default_rng(seed)
    for _ in range(max_tries):
        x = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        h = (x + x.conj().T) / 2
        kk = rng.standard_normal((n, k)) + 1j * rng.standard_normal((n, k))
        a = h
        if not hermitian:
            y = rng.standard_normal((k, k)) + 1j * rng.standard_normal((k, k))
            a = h + 1j * kk @ (y @ y.conj().T) @ kk.conj().T / n
        rho = max(abs(np.linalg.eigvals(a)))
        a = a * (spectral_radius / rho)
        f = rng.standard_normal((k, k)) + 1j * rng.standard_normal((k, k))
        if hermitian:
            f = (f + f.conj().T) / 2
        sys = PqsSystem(a, kk, f)
        if is_simple(sys):
            return sys
    raise RuntimeError("could not draw a simple system")


def random_unitary(n, seed=None):
    rng = default_rng(seed)
    x = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    q, r = np.linalg.qr(x)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def from_triplet(triplet):
    """System ``(A0, γ, F)`` of a BT_∞ triplet; its transfer function is the Weyl function."""
    return PqsSystem(triplet.A0_op, triplet.gamma, triplet.F, triplet.tol)
