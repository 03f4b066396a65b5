"""Matrix-valued measures on the real line.

The class is deliberately small: finitely many atoms with PSD weights,
finitely many bounded intervals carrying a constant PSD density, and an
optional constant density on the whole line (a multiple of Lebesgue
measure).  It is closed under everything the package needs, so Lebesgue
decompositions, congruences and sums are exact set computations.  The
Cauchy and Poisson transforms use closed-form antiderivatives.
"""
from dataclasses import dataclass, field

import numpy as np
from scipy import integrate, optimize

from ._linalg import (DEFAULT_TOL, SingularityError, as_matrix, frozen, herm, is_psd,
                      neville, norm, psd_part)

__all__ = ["MatrixMeasure", "Interval", "BorelSet", "apply", "lebesgue_decompose",
           "spectral_measure", "cauchy_transform", "poisson_transform",
           "stieltjes_invert", "StieltjesEstimate", "weight_measure",
           "PiecewiseLinear", "imag_sampler"]


@dataclass(frozen=True)
class Interval:
    """Interval with endpoints ``a <= b``; ``Interval(t, t)`` is the point ``{t}``."""

    a: float
    b: float
    closed_left: bool = True
    closed_right: bool = False

    def __post_init__(self):
        if not (np.isfinite(self.a) and np.isfinite(self.b)) or self.a > self.b:
            raise ValueError("malformed interval [%r, %r]" % (self.a, self.b))
        if self.a == self.b and not (self.closed_left and self.closed_right):
            raise ValueError("degenerate interval must be closed on both sides")

    @classmethod
    def point(cls, t):
        return cls(float(t), float(t), True, True)

    @classmethod
    def closed(cls, a, b):
        return cls(float(a), float(b), True, True)

    @property
    def length(self):
        return self.b - self.a

    def __contains__(self, t):
        left = t > self.a or (self.closed_left and t == self.a)
        right = t < self.b or (self.closed_right and t == self.b)
        return left and right


class BorelSet:
    """Finite disjoint union of intervals and points."""

    def __init__(self, pieces):
        items = []
        for p in pieces:
            if isinstance(p, Interval):
                items.append(p)
            elif np.ndim(p) == 0:
                items.append(Interval.point(p))
            elif len(p) == 2:
                items.append(Interval(float(p[0]), float(p[1])))
            else:
                raise ValueError("cannot read set piece %r" % (p,))
        items.sort(key=lambda i: (i.a, i.b))
        for left, right in zip(items, items[1:]):
            overlap = right.a < left.b or (
                right.a == left.b and right.closed_left and left.closed_right)
            if overlap:
                raise ValueError("set pieces overlap: %r and %r" % (left, right))
        self.pieces = tuple(items)

    def __contains__(self, t):
        return any(t in p for p in self.pieces)

    @property
    def length(self):
        return sum(p.length for p in self.pieces)

    def overlap(self, a, b):
        """Lebesgue measure of the intersection with ``[a, b)``."""
        return sum(max(0.0, min(b, p.b) - max(a, p.a)) for p in self.pieces)


def _as_set(s):
    if isinstance(s, BorelSet):
        return s
    if isinstance(s, Interval):
        return BorelSet([s])
    return BorelSet(s)


@dataclass(frozen=True, eq=False)
class MatrixMeasure:
    """PSD matrix measure: atoms + piecewise-constant densities + ``lebesgue``·m.

    Parameters
    ----------
    dim : int
        Size of the matrix values.
    atoms : sequence of (t, W)
        Point masses with PSD weights, strictly increasing ``t``.
    pieces : sequence of (a, b, D)
        Density ``D`` (PSD) on ``[a, b)``; intervals pairwise disjoint.
    lebesgue : (dim, dim) array, optional
        PSD density carried by the whole line.
    """

    dim: int
    atoms: tuple = ()
    pieces: tuple = ()
    lebesgue: np.ndarray = field(default=None)
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        k = self.dim
        if k <= 0:
            raise ValueError("dim must be positive")
        atoms = []
        for t, w in self.atoms:
            w = as_matrix(w, k)
            if not is_psd(w, 1e-8):
                raise ValueError("atom weight at t=%r is not PSD" % t)
            atoms.append((float(t), frozen(herm(w))))
        atoms.sort(key=lambda p: p[0])
        ts = [t for t, _ in atoms]
        if any(b <= a for a, b in zip(ts, ts[1:])):
            raise ValueError("atom points must be distinct")
        pieces = []
        for a, b, d in self.pieces:
            d = as_matrix(d, k)
            if not a < b:
                raise ValueError("piece [%r, %r) is empty" % (a, b))
            if not is_psd(d, 1e-8):
                raise ValueError("density on [%r, %r) is not PSD" % (a, b))
            pieces.append((float(a), float(b), frozen(herm(d))))
        pieces.sort(key=lambda p: p[0])
        if any(p[0] < q[1] for q, p in zip(pieces, pieces[1:])):
            raise ValueError("density pieces overlap")
        leb = np.zeros((k, k), complex) if self.lebesgue is None else as_matrix(self.lebesgue, k)
        if not is_psd(leb, 1e-8):
            raise ValueError("lebesgue density is not PSD")
        object.__setattr__(self, "atoms", tuple(atoms))
        object.__setattr__(self, "pieces", tuple(pieces))
        object.__setattr__(self, "lebesgue", frozen(herm(leb)))

    @classmethod
    def zero(cls, dim):
        return cls(dim)

    @property
    def has_lebesgue(self):
        return norm(self.lebesgue) > 0

    def apply(self, s):
        return apply(self, s)

    def density_at(self, t):
        """Density of the absolutely continuous part at ``t`` (right-continuous)."""
        d = np.array(self.lebesgue)
        for a, b, dens in self.pieces:
            if a <= t < b:
                d = d + dens
        return d

    def atom_at(self, t, tol=None):
        tol = self.tol if tol is None else tol
        for s, w in self.atoms:
            if abs(s - t) <= tol:
                return w
        return np.zeros((self.dim, self.dim), complex)

    def breakpoints(self):
        pts = set()
        for a, b, _ in self.pieces:
            pts.update((a, b))
        return sorted(pts)

    def congruence(self, x):
        """The measure ``X Σ X*`` for a (m x dim) matrix ``X``."""
        x = np.asarray(x, dtype=complex)
        xc = x.conj().T
        return MatrixMeasure(
            x.shape[0],
            tuple((t, x @ w @ xc) for t, w in self.atoms),
            tuple((a, b, x @ d @ xc) for a, b, d in self.pieces),
            x @ self.lebesgue @ xc, self.tol)

    def scale(self, c):
        if c < 0:
            raise ValueError("scale factor must be nonnegative")
        return self.congruence(np.sqrt(c) * np.eye(self.dim))

    def __add__(self, other):
        if other.dim != self.dim:
            raise ValueError("dimension mismatch")
        atoms = {}
        for t, w in self.atoms + other.atoms:
            key = next((s for s in atoms if abs(s - t) <= self.tol), t)
            atoms[key] = atoms.get(key, 0) + w
        cuts = sorted(set(self.breakpoints()) | set(other.breakpoints()))
        pieces = []
        for a, b in zip(cuts, cuts[1:]):
            mid = 0.5 * (a + b)
            d = (self.density_at(mid) - self.lebesgue) + (other.density_at(mid) - other.lebesgue)
            if norm(d) > 0:
                pieces.append((a, b, d))
        return MatrixMeasure(self.dim, tuple(atoms.items()), _merge_pieces(pieces),
                             self.lebesgue + other.lebesgue, self.tol)

    def with_lebesgue(self, extra):
        return MatrixMeasure(self.dim, self.atoms, self.pieces,
                             self.lebesgue + as_matrix(extra, self.dim), self.tol)

    def total_atomic_mass(self):
        return sum((w for _, w in self.atoms), np.zeros((self.dim, self.dim), complex))

    def is_lebesgue_equivalent_on(self, window, tol=DEFAULT_TOL):
        """Whether the ac part is equivalent to Lebesgue measure on ``window``.

        Decided on the working window ``[a, b]``: true iff every point of the
        window carries a positive definite density.
        """
        a, b = window
        cuts = sorted({a, b} | {p for p in self.breakpoints() if a < p < b})
        for lo, hi in zip(cuts, cuts[1:]):
            d = self.density_at(0.5 * (lo + hi))
            if np.linalg.eigvalsh(herm(d))[0] <= tol:
                return False
        return True

    def ac_covers(self, window, tol=DEFAULT_TOL):
        """Whether the ac support (nonzero density) covers ``window``."""
        a, b = window
        cuts = sorted({a, b} | {p for p in self.breakpoints() if a < p < b})
        return all(norm(self.density_at(0.5 * (lo + hi))) > tol
                   for lo, hi in zip(cuts, cuts[1:]))


def _merge_pieces(pieces):
    out = []
    for a, b, d in pieces:
        if out and out[-1][1] == a and norm(out[-1][2] - d) == 0:
            out[-1] = (out[-1][0], b, d)
        else:
            out.append((a, b, d))
    return tuple(out)


def apply(sigma, s):
    """Value ``Σ(δ)`` on a finite union of intervals and points.

    ``s`` may be a :class:`BorelSet`, an :class:`Interval`, or a list of
    pieces (``(a, b)`` tuples meaning ``[a, b)``, bare numbers meaning points).
    A whole-line density makes the measure infinite on unbounded sets, so only
    bounded pieces are accepted.
    """
    s = _as_set(s)
    out = np.zeros((sigma.dim, sigma.dim), complex)
    for t, w in sigma.atoms:
        if t in s:
            out = out + w
    for a, b, d in sigma.pieces:
        out = out + d * s.overlap(a, b)
    return out + sigma.lebesgue * s.length


def lebesgue_decompose(sigma):
    """Split into ``(ac, singular)``; singular parts here are purely atomic."""
    ac = MatrixMeasure(sigma.dim, (), sigma.pieces, sigma.lebesgue, sigma.tol)
    s = MatrixMeasure(sigma.dim, sigma.atoms, (), None, sigma.tol)
    return ac, s


def spectral_measure(h, tol=DEFAULT_TOL):
    """Orthogonal (projection-valued) measure of a Hermitian matrix.

    Eigenvalues closer than ``tol * max(1, |H|)`` are merged into one atom
    whose weight is the orthoprojection onto the joint eigenspace.
    """
    h = as_matrix(h)
    scale = max(1.0, norm(h))
    if norm(h - h.conj().T) > tol * scale:
        raise ValueError("spectral_measure needs a Hermitian matrix")
    w, v = np.linalg.eigh(herm(h))
    groups = []
    for i, lam in enumerate(w):
        if groups and lam - w[groups[-1][-1]] <= tol * scale:
            groups[-1].append(i)
        else:
            groups.append([i])
    atoms = []
    for g in groups:
        vec = v[:, g]
        atoms.append((float(np.mean(w[g])), vec @ vec.conj().T))
    return MatrixMeasure(h.shape[0], tuple(atoms))


def _on_support(sigma, z, tol):
    if abs(z.imag) > 0:
        return False
    x = z.real
    if sigma.has_lebesgue:
        return True
    if any(abs(x - t) <= tol for t, _ in sigma.atoms):
        return True
    return any(a - tol <= x <= b + tol for a, b, _ in sigma.pieces)


def cauchy_transform(sigma, z, tol=DEFAULT_TOL):
    """``∫ (1/(t-z) - t/(1+t²)) dΣ(t)`` in closed form.

    For ``Im z ≠ 0`` the logarithms are continuous along each interval since
    ``t - z`` stays in one open half-plane.
    """
    z = complex(z)
    if _on_support(sigma, z, tol):
        raise SingularityError("Cauchy transform evaluated on the support at z=%r" % z, z)
    k = sigma.dim
    out = np.zeros((k, k), complex)
    for t, w in sigma.atoms:
        out = out + w * (1.0 / (t - z) - t / (1.0 + t * t))
    for a, b, d in sigma.pieces:
        if z.imag == 0:
            val = np.log(abs(b - z.real)) - np.log(abs(a - z.real))
        else:
            val = np.log(b - z) - np.log(a - z)
        val -= 0.5 * (np.log1p(b * b) - np.log1p(a * a))
        out = out + d * val
    if sigma.has_lebesgue:
        out = out + np.sign(z.imag) * 1j * np.pi * sigma.lebesgue
    return out


def poisson_transform(sigma, x, y):
    """``∫ y/((t-x)²+y²) dΣ(t)`` for ``y > 0`` (closed form, PSD)."""
    if not y > 0:
        raise ValueError("Poisson transform needs y > 0")
    k = sigma.dim
    out = np.zeros((k, k), complex)
    for t, w in sigma.atoms:
        out = out + w * (y / ((t - x) ** 2 + y * y))
    for a, b, d in sigma.pieces:
        out = out + d * (np.arctan((b - x) / y) - np.arctan((a - x) / y))
    return out + np.pi * sigma.lebesgue


def imag_sampler(f):
    """Turn a matrix function ``f(z)`` into ``(x, y) -> Im f(x + iy)``."""
    def sample(x, y):
        v = np.asarray(f(complex(x, y)), dtype=complex)
        return (v - v.conj().T) / 2j
    return sample


@dataclass
class StieltjesEstimate:
    """Result of :func:`stieltjes_invert`.

    ``mass`` is the extrapolated ``Σ(window)``; ``measure`` a representable
    approximation (detected atoms plus one constant density per cell);
    ``converged`` is False when the extrapolation error exceeds the tolerance.
    """

    window: tuple
    mass: np.ndarray
    measure: MatrixMeasure
    atoms: list
    error: float
    converged: bool
    cell_masses: list = field(default_factory=list)
    diagnostics: dict = field(default_factory=dict)


def _window_mass(im_sample, a, b, y, epsabs):
    val, _ = integrate.quad_vec(lambda x: im_sample(x, y), a, b, epsabs=epsabs,
                                epsrel=1e-12, limit=2000)
    return np.asarray(val) / np.pi


def _extrapolated_mass(im_sample, a, b, ys, epsabs):
    vals = [_window_mass(im_sample, a, b, y, epsabs) for y in ys]
    est, err = neville(ys, vals)
    return herm(est), err


def stieltjes_invert(im_sample, window, y_sequence, tol=1e-3, cells=1, scan_points=None):
    """Recover ``Σ`` on ``window`` from samples of ``Im F(x + iy)``.

    ``(1/π) ∫_window Im F(x+iy) dx`` is computed for every ``y`` and
    extrapolated to ``y = 0``.  Atoms are located from peaks of
    ``y · Im F(x+iy)`` at the smallest ``y``; their weight is the
    extrapolated limit of ``y · Im F(t0+iy)`` and each candidate must show
    mass concentration (the mass of a shrinking window around it does not
    shrink with the window).

    Parameters
    ----------
    im_sample : callable
        ``im_sample(x, y)`` returns the Hermitian matrix ``Im F(x + iy)``.
    window : (a, b)
    y_sequence : sequence of float
        Positive heights; at least two for the extrapolation.
    tol : float
        Accuracy target; also the threshold for reporting atoms.
    cells : int
        Number of equal cells for the density estimate.
    """
    a, b = map(float, window)
    if not a < b:
        raise ValueError("window must have a < b")
    ys = sorted((float(y) for y in y_sequence), reverse=True)
    if len(ys) < 2 or ys[-1] <= 0:
        raise ValueError("need at least two positive heights")
    epsabs = tol * 1e-3
    mass, err = _extrapolated_mass(im_sample, a, b, ys, epsabs)
    k = mass.shape[0]
    scale = max(1.0, norm(mass))
    converged = err <= tol * scale

    ymin = ys[-1]
    n_scan = scan_points or int(min(20000, max(200, 4 * (b - a) / ymin)))
    xs = np.linspace(a, b, n_scan)
    g = np.array([np.trace(im_sample(x, ymin)).real * ymin for x in xs])
    atoms = []
    peak_floor = tol * scale
    for i in range(1, len(xs) - 1):
        if not (g[i] >= g[i - 1] and g[i] > g[i + 1] and g[i] > peak_floor):
            continue
        lo, hi = xs[i - 1], xs[i + 1]
        res = optimize.minimize_scalar(lambda x: -np.trace(im_sample(x, ymin)).real,
                                       bounds=(lo, hi), method="bounded",
                                       options={"xatol": ymin * 1e-6})
        t0 = float(res.x)
        w, _ = neville(ys, [y * im_sample(t0, y) for y in ys])
        w = herm(w)
        if np.trace(w).real <= tol * scale:
            continue
        if min(t0 - a, b - t0) <= 2 * ymin:
            raise ValueError("atom near t=%.6g sits on the window boundary" % t0)
        h = 8 * ymin
        wide = np.trace(_window_mass(im_sample, t0 - h, t0 + h, ymin, epsabs)).real
        narrow = np.trace(_window_mass(im_sample, t0 - h / 2, t0 + h / 2, ymin, epsabs)).real
        ratio = narrow / wide if wide > 0 else 0.0
        if ratio < 0.7:
            continue
        if atoms and abs(atoms[-1][0] - t0) <= 2 * ymin:
            continue
        atoms.append((t0, psd_part(w)))

    edges = np.linspace(a, b, cells + 1)
    cell_masses = []
    pieces = []
    for lo, hi in zip(edges, edges[1:]):
        m = mass if cells == 1 else _extrapolated_mass(im_sample, lo, hi, ys, epsabs)[0]
        cell_masses.append(m)
        rest = m - sum((w for t, w in atoms if lo <= t < hi), np.zeros((k, k), complex))
        dens = psd_part(rest / (hi - lo))
        if norm(dens) * (hi - lo) > tol * scale:
            pieces.append((lo, hi, dens))
    measure = MatrixMeasure(k, tuple(atoms), tuple(pieces))
    return StieltjesEstimate((a, b), mass, measure, atoms, err, converged, cell_masses,
                             {"heights": ys, "scan_points": n_scan})


class PiecewiseLinear:
    """Continuous piecewise-linear scalar function, constant outside the knots."""

    def __init__(self, knots, values):
        self.knots = np.asarray(knots, dtype=float)
        self.values = np.asarray(values, dtype=float)
        if self.knots.shape != self.values.shape or self.knots.ndim != 1 or not len(self.knots):
            raise ValueError("knots and values must be equal-length 1-d arrays")
        if np.any(np.diff(self.knots) <= 0):
            raise ValueError("knots must be strictly increasing")

    @classmethod
    def constant(cls, c):
        return cls([0.0], [c])

    @classmethod
    def notch(cls, t0, width=1.0):
        """0 at ``t0``, rising linearly to 1 at distance ``width``."""
        return cls([t0 - width, t0, t0 + width], [1.0, 0.0, 1.0])

    def __call__(self, t):
        return np.interp(t, self.knots, self.values)

    def average(self, a, b):
        pts = np.concatenate([[a], self.knots[(self.knots > a) & (self.knots < b)], [b]])
        vals = self(pts)
        return float(np.sum(0.5 * (vals[1:] + vals[:-1]) * np.diff(pts)) / (b - a))


def weight_measure(sigma, phi):
    """The measure ``δ ↦ ∫_δ φ dΣ`` for a nonnegative piecewise-linear ``φ``.

    Atoms are scaled by ``φ(t)`` (dropped where ``φ(t) = 0``).  Density pieces
    are cut at the knots of ``φ`` and multiplied by the mean of ``φ`` on each
    sub-piece, which is exact for the mass of every sub-piece.  A whole-line
    density is only accepted when ``φ`` is constant.
    """
    if isinstance(phi, (int, float)):
        phi = PiecewiseLinear.constant(float(phi))
    if np.any(phi.values < 0):
        raise ValueError("weight function must be nonnegative")
    atoms = [(t, w * float(phi(t))) for t, w in sigma.atoms if phi(t) > 0]
    pieces = []
    for a, b, d in sigma.pieces:
        cuts = np.concatenate([[a], phi.knots[(phi.knots > a) & (phi.knots < b)], [b]])
        for lo, hi in zip(cuts, cuts[1:]):
            avg = phi.average(lo, hi)
            if avg > 0:
                pieces.append((lo, hi, d * avg))
    leb = sigma.lebesgue
    if sigma.has_lebesgue:
        if np.ptp(phi.values) > 0:
            raise ValueError("a whole-line density can only be weighted by a constant")
        leb = leb * float(phi.values[0])
    return MatrixMeasure(sigma.dim, tuple(atoms), tuple(pieces), leb, sigma.tol)
