"""Small numerical helpers shared by the subpackages.

Every rank decision in the package goes through :func:`rank_split`, so a
single tolerance controls what counts as "zero".
"""
import numpy as np

DEFAULT_TOL = 1e-10


class SingularityError(ValueError):
    """Raised when a matrix that must be invertible is (numerically) singular.

    The offending evaluation point, when there is one, is kept in ``z``.
    """

    def __init__(self, msg, z=None):
        super().__init__(msg)
        self.z = z


def as_matrix(a, dim=None):
    """Return ``a`` as a 2-d complex array (scalars become 1x1)."""
    m = np.asarray(a, dtype=complex)
    if m.ndim == 0:
        m = m.reshape(1, 1)
    if m.ndim != 2:
        raise ValueError("expected a matrix, got shape %s" % (m.shape,))
    if dim is not None and m.shape != (dim, dim):
        raise ValueError("expected a %dx%d matrix, got %s" % (dim, dim, m.shape))
    return m


def frozen(a):
    a = np.array(a, dtype=complex, copy=True)
    a.setflags(write=False)
    return a


def herm(a):
    """Hermitian part ``(a + a*)/2``."""
    return 0.5 * (a + a.conj().T)


def aherm(a):
    """'Imaginary part' ``(a - a*)/2i`` of a matrix (Hermitian)."""
    return (a - a.conj().T) / 2j


def norm(a):
    """Spectral norm; 0 for empty arrays."""
    a = np.asarray(a)
    if a.size == 0:
        return 0.0
    if a.ndim < 2:
        return float(np.linalg.norm(a))
    return float(np.linalg.norm(a, 2))


def threshold(s, tol):
    # relative to the largest singular value, floored at unit scale: graph
    # bases are orthonormal so their natural scale is 1
    smax = s[0] if len(s) else 0.0
    return tol * max(1.0, smax)


def rank_split(m, tol=DEFAULT_TOL):
    """Split ``m`` into an orthonormal range basis and a kernel basis.

    Both come from one SVD, so ``rank + nullity == m.shape[1]`` always.

    Returns
    -------
    rng : (rows, r) ndarray
    ker : (cols, cols - r) ndarray
    """
    m = np.asarray(m, dtype=complex)
    rows, cols = m.shape
    if rows == 0 or cols == 0:
        return np.zeros((rows, 0), complex), np.eye(cols, dtype=complex)
    u, s, vh = np.linalg.svd(m, full_matrices=True)
    r = int(np.sum(s > threshold(s, tol)))
    return u[:, :r], vh[r:].conj().T


def orth(m, tol=DEFAULT_TOL):
    return rank_split(m, tol)[0]


def null(m, tol=DEFAULT_TOL):
    return rank_split(m, tol)[1]


def rank(m, tol=DEFAULT_TOL):
    return orth(m, tol).shape[1]


def complement(basis, ambient_dim, tol=DEFAULT_TOL):
    """Orthonormal basis of the orthogonal complement of ``span(basis)``."""
    if basis.shape[1] == 0:
        return np.eye(ambient_dim, dtype=complex)
    return null(basis.conj().T, tol)


def min_singular(m):
    m = np.asarray(m, dtype=complex)
    if m.size == 0:
        return np.inf
    return float(np.linalg.svd(m, compute_uv=False)[-1])


def checked_inv(m, tol=DEFAULT_TOL, z=None, what="matrix"):
    """Inverse of ``m`` after a smallest-singular-value test."""
    m = as_matrix(m)
    s = np.linalg.svd(m, compute_uv=False)
    if s[-1] <= threshold(s, tol):
        where = "" if z is None else " at z=%r" % (z,)
        raise SingularityError("%s is singular%s (smallest singular value %.3e)"
                               % (what, where, s[-1]), z)
    return np.linalg.inv(m)


def min_eig(h):
    h = herm(np.asarray(h, dtype=complex))
    if h.size == 0:
        return np.inf
    return float(np.linalg.eigvalsh(h)[0])


def is_hermitian(a, tol=DEFAULT_TOL):
    a = np.asarray(a)
    return norm(a - a.conj().T) <= tol * max(1.0, norm(a))


def is_psd(a, tol=DEFAULT_TOL):
    a = np.asarray(a)
    return is_hermitian(a, tol) and min_eig(a) >= -tol * max(1.0, norm(a))


def psd_part(a):
    """Nearest PSD matrix (clip negative eigenvalues of the Hermitian part)."""
    w, v = np.linalg.eigh(herm(np.asarray(a, dtype=complex)))
    return (v * np.clip(w, 0.0, None)) @ v.conj().T


def _neville_value(xs, values, x0):
    p = [np.asarray(v, dtype=complex) for v in values]
    n = len(xs)
    for level in range(1, n):
        for i in range(n - level):
            j = i + level
            p[i] = ((x0 - xs[j]) * p[i] - (x0 - xs[i]) * p[i + 1]) / (xs[i] - xs[j])
    return p[0]


def neville(xs, values, x0=0.0):
    """Polynomial extrapolation of ``values(x)`` to ``x0`` (Neville's scheme).

    ``values`` may be arrays of any common shape.

    Returns
    -------
    estimate : ndarray
        Value at ``x0`` of the polynomial through all samples.
    error : float
        Max-abs difference to the estimate that drops the first sample;
        ``inf`` for a single sample.
    """
    xs = [float(x) for x in xs]
    if len(xs) == 0:
        raise ValueError("need at least one sample")
    if len(set(xs)) != len(xs):
        raise ValueError("sample abscissae must be distinct")
    est = _neville_value(xs, values, x0)
    if len(xs) == 1:
        return est, np.inf
    sub = _neville_value(xs[1:], values[1:], x0)
    return est, float(np.max(np.abs(est - sub)))
