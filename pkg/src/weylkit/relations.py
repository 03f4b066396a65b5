"""Linear relations in finite dimension.

A linear relation from ``C^p`` to ``C^q`` is a subspace of ``C^p + C^q``;
an operator is identified with its graph.  Subspaces are stored with
orthonormal bases, so equality and containment reduce to projection
residuals, and every derived object is re-orthonormalised.

Continuous spectrum cannot occur in finite dimension.  The corresponding
:class:`PointClass` member exists for completeness and is never returned.
"""
import enum
from dataclasses import dataclass

import numpy as np

from ._linalg import DEFAULT_TOL, as_matrix, complement, frozen, norm, orth, rank_split

__all__ = ["Subspace", "LinearRelation", "PointClass", "from_graph", "from_matrix",
           "adjoint", "parts", "classify_point"]


@dataclass(frozen=True, eq=False)
class Subspace:
    """Subspace of ``C^ambient_dim`` given by an orthonormal basis (columns)."""

    basis: np.ndarray

    def __post_init__(self):
        b = np.asarray(self.basis, dtype=complex)
        if b.ndim != 2 or b.shape[0] == 0:
            raise ValueError("basis must be a (n, k) matrix with n > 0")
        gram = b.conj().T @ b
        if norm(gram - np.eye(b.shape[1])) > 1e-8:
            raise ValueError("basis columns are not orthonormal")
        object.__setattr__(self, "basis", frozen(b))

    @classmethod
    def span(cls, vectors, tol=DEFAULT_TOL):
        v = as_matrix(vectors)
        return cls(orth(v, tol))

    @classmethod
    def zero(cls, ambient_dim):
        return cls(np.zeros((ambient_dim, 0), complex))

    @classmethod
    def full(cls, ambient_dim):
        return cls(np.eye(ambient_dim, dtype=complex))

    @property
    def ambient_dim(self):
        return self.basis.shape[0]

    @property
    def dim(self):
        return self.basis.shape[1]

    @property
    def projector(self):
        return self.basis @ self.basis.conj().T

    def complement(self, tol=DEFAULT_TOL):
        return Subspace(complement(self.basis, self.ambient_dim, tol))

    def residual(self, vectors):
        """Norm of the component of ``vectors`` orthogonal to this subspace."""
        v = np.asarray(vectors, dtype=complex)
        if v.ndim == 1:
            v = v[:, None]
        return norm(v - self.basis @ (self.basis.conj().T @ v))

    def contains(self, other, tol=DEFAULT_TOL):
        if isinstance(other, Subspace):
            other = other.basis
        return self.residual(other) <= tol * 10

    def equals(self, other, tol=DEFAULT_TOL):
        return (self.dim == other.dim and self.contains(other, tol)
                and other.contains(self, tol))

    def distance(self, other):
        """Gap between the subspaces (``inf`` if the dimensions differ)."""
        if self.dim != other.dim:
            return np.inf
        return max(self.residual(other.basis), other.residual(self.basis))

    def intersect(self, other, tol=DEFAULT_TOL):
        a, b = self.basis, other.basis
        if a.shape[1] == 0 or b.shape[1] == 0:
            return Subspace.zero(self.ambient_dim)
        _, ker = rank_split(np.hstack([a, -b]), tol)
        return Subspace(orth(a @ ker[: a.shape[1]], tol))

    def __add__(self, other):
        return Subspace(orth(np.hstack([self.basis, other.basis])))


class PointClass(enum.Enum):
    RESOLVENT = "resolvent"
    POINT_SPECTRUM = "point_spectrum"
    RESIDUAL_SPECTRUM = "residual_spectrum"
    # never produced in finite dimension
    CONTINUOUS_SPECTRUM = "continuous_spectrum"


@dataclass(frozen=True, eq=False)
class LinearRelation:
    """Subspace of ``C^dim_in + C^dim_out``.

    The first ``dim_in`` coordinates form the domain slot, the remaining
    ``dim_out`` the range slot.
    """

    dim_in: int
    dim_out: int
    graph: Subspace

    def __post_init__(self):
        if self.dim_in <= 0 or self.dim_out <= 0:
            raise ValueError("dimensions must be positive")
        if self.graph.ambient_dim != self.dim_in + self.dim_out:
            raise ValueError("graph lives in C^%d, expected C^%d"
                             % (self.graph.ambient_dim, self.dim_in + self.dim_out))

    @property
    def dim(self):
        return self.graph.dim

    @property
    def top(self):
        return self.graph.basis[: self.dim_in]

    @property
    def bottom(self):
        return self.graph.basis[self.dim_in:]

    def parts(self, tol=DEFAULT_TOL):
        """Return ``(dom, ran, ker, mul)`` as :class:`Subspace` objects."""
        top, bot = self.top, self.bottom
        dom, ker_top = rank_split(top, tol)
        ran, ker_bot = rank_split(bot, tol)
        ker = orth(top @ ker_bot, tol)
        mul = orth(bot @ ker_top, tol)
        return (Subspace(dom), Subspace(ran), Subspace(ker), Subspace(mul))

    def adjoint(self, tol=DEFAULT_TOL):
        return adjoint(self, tol)

    def inverse(self):
        b = self.graph.basis
        return LinearRelation(self.dim_out, self.dim_in,
                              Subspace(np.vstack([b[self.dim_in:], b[: self.dim_in]])))

    def shift(self, lam, tol=DEFAULT_TOL):
        """The relation ``T - lam = {(f, f' - lam f)}``."""
        self._require_square()
        top, bot = self.top, self.bottom
        return from_graph(np.vstack([top, bot - lam * top]), tol)

    def is_operator(self, tol=DEFAULT_TOL):
        return self.parts(tol)[3].dim == 0

    def as_matrix(self, tol=DEFAULT_TOL):
        """Matrix of an everywhere defined single-valued relation."""
        dom, _, _, mul = self.parts(tol)
        if mul.dim or dom.dim != self.dim_in:
            raise ValueError("relation is not the graph of an everywhere defined operator")
        return self.bottom @ np.linalg.pinv(self.top)

    def contains(self, other, tol=DEFAULT_TOL):
        return self.graph.contains(other.graph, tol)

    def equals(self, other, tol=DEFAULT_TOL):
        return (self.dim_in, self.dim_out) == (other.dim_in, other.dim_out) and \
            self.graph.equals(other.graph, tol)

    def is_symmetric(self, tol=DEFAULT_TOL):
        return self.adjoint(tol).contains(self, tol)

    def is_selfadjoint(self, tol=DEFAULT_TOL):
        return self.equals(self.adjoint(tol), tol)

    def classify_point(self, lam, tol=DEFAULT_TOL):
        return classify_point(self, lam, tol)

    def _require_square(self):
        if self.dim_in != self.dim_out:
            raise ValueError("operation needs a relation in one space (dim_in == dim_out)")


def from_graph(basis_matrix, tol=DEFAULT_TOL, dim_in=None):
    """Relation spanned by the columns of ``basis_matrix``.

    By default the rows split evenly into domain and range slots.
    """
    if not tol > 0:
        raise ValueError("tolerance must be positive")
    m = np.asarray(basis_matrix, dtype=complex)
    if m.ndim != 2 or m.size == 0:
        raise ValueError("graph spanning set must be a non-empty matrix")
    rows = m.shape[0]
    if dim_in is None:
        if rows % 2:
            raise ValueError("cannot split %d rows evenly; pass dim_in" % rows)
        dim_in = rows // 2
    return LinearRelation(dim_in, rows - dim_in, Subspace(orth(m, tol)))


def from_matrix(a, tol=DEFAULT_TOL):
    """Graph ``{(f, a f)}`` of a (q x p) matrix."""
    a = as_matrix(a) if np.ndim(a) < 2 else np.asarray(a, dtype=complex)
    q, p = a.shape
    return from_graph(np.vstack([np.eye(p), a]), tol, dim_in=p)


def adjoint(t, tol=DEFAULT_TOL):
    """Adjoint relation ``{(g, g') : (f', g) = (f, g') for all (f, f') in T}``.

    ``(f', g) - (f, g')`` is the inner product of ``(g, g')`` with the flipped
    vector ``(f', -f)``, so the adjoint is the orthogonal complement of the
    flipped graph.
    """
    flipped = np.vstack([t.bottom, -t.top])
    comp = complement(flipped, t.dim_in + t.dim_out, tol)
    return LinearRelation(t.dim_out, t.dim_in, Subspace(comp))


def parts(t, tol=DEFAULT_TOL):
    return t.parts(tol)


def classify_point(t, lam, tol=DEFAULT_TOL):
    """Classify ``lam`` for a relation in one space by rank conditions.

    Resolvent iff ``ker(T - lam) = 0`` and ``ran(T - lam)`` is everything;
    point spectrum iff the kernel is nontrivial; residual otherwise.
    """
    t._require_square()
    shifted = t.shift(lam, tol)
    _, ran, ker, _ = shifted.parts(tol)
    if ker.dim:
        return PointClass.POINT_SPECTRUM
    if ran.dim == t.dim_out:
        return PointClass.RESOLVENT
    return PointClass.RESIDUAL_SPECTRUM
