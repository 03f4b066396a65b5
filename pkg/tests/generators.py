"""Random instances shared by the test modules."""
import numpy as np

from weylkit.herglotz import HerglotzMatrixFunction, WeylTransformSpec
from weylkit.measures import MatrixMeasure


def cplx(rng, *shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def psd(rng, k, rank=None, scale=1.0):
    rank = k if rank is None else rank
    x = cplx(rng, k, rank)
    return scale * x @ x.conj().T / max(rank, 1)


def hermitian(rng, k, scale=1.0):
    x = cplx(rng, k, k)
    return scale * (x + x.conj().T) / 2


def invertible(rng, k):
    return cplx(rng, k, k) + 2 * np.eye(k)


def random_measure(rng, k, max_atoms=6, max_pieces=3, span=5.0):
    n_atoms = int(rng.integers(0, max_atoms + 1))
    n_pieces = int(rng.integers(0, max_pieces + 1))
    ts = np.sort(rng.uniform(-span, span, n_atoms))
    atoms = tuple((float(t), psd(rng, k, int(rng.integers(1, k + 1)))) for t in ts)
    cuts = np.sort(rng.uniform(-span, span, 2 * n_pieces))
    pieces = tuple((float(cuts[2 * j]), float(cuts[2 * j + 1]), psd(rng, k, scale=0.5))
                   for j in range(n_pieces))
    return MatrixMeasure(k, atoms, pieces)


def random_herglotz(rng, k, max_atoms=6, max_pieces=3, with_S=False):
    d = psd(rng, k, int(rng.integers(0, k + 1))) if rng.random() < 0.7 else None
    s = psd(rng, k, scale=0.3) if with_S else None
    return HerglotzMatrixFunction(k, C=hermitian(rng, k), D=d,
                                  sigma=random_measure(rng, k, max_atoms, max_pieces), S=s)


def lemma_instance(rng, k):
    """Two pairs ``(F_j, (B_j, K_j))`` built from shared tilde data, so that
    the transforms agree on ℂ₊ by construction."""
    f1 = random_herglotz(rng, k)
    k1, k2 = invertible(rng, k), invertible(rng, k)
    b1 = cplx(rng, k, k)
    delta = hermitian(rng, k) + 1j * psd(rng, k, int(rng.integers(0, k + 1)))
    k1i = np.linalg.inv(k1)
    ft1 = f1.congruence(k1i)
    bt2 = k1i @ b1 @ k1i.conj().T + delta
    f2 = ft1.shifted(delta).congruence(k2)
    b2 = k2 @ bt2 @ k2.conj().T
    return (f1, WeylTransformSpec(b1, k1)), (f2, WeylTransformSpec(b2, k2)), delta


def conditioned(rng, k, low=0.5, high=2.0):
    """Random ``k x k`` matrix with singular values in ``[low, high]``."""
    u = np.linalg.qr(cplx(rng, k, k))[0]
    v = np.linalg.qr(cplx(rng, k, k))[0]
    return u @ np.diag(rng.uniform(low, high, k)) @ v.conj().T
