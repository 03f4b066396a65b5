"""Matrix Herglotz functions and the transform ``K*(B - F(z))^{-1} K``.

A Herglotz (Nevanlinna, R-) function is represented as

    F(z) = C + D z + ∫ (1/(t-z) - t/(1+t²)) dΣ(t) ± i S,   Im z ≷ 0,

with ``C`` Hermitian, ``D, S`` PSD and ``Σ`` a :class:`MatrixMeasure`.  The
``S`` term is the integral against ``(S/π) m``; keeping it separate makes
constant-imaginary functions such as ``F ≡ iI`` exact.

Functions in this module accept either a :class:`HerglotzMatrixFunction`
or any callable ``z -> matrix`` wherever only point values are needed.
"""
from dataclasses import dataclass, field

import numpy as np

from ._linalg import (DEFAULT_TOL, SingularityError, aherm, as_matrix, checked_inv, frozen,
                      herm, is_psd, min_eig, min_singular, neville, norm)
from .measures import (MatrixMeasure, cauchy_transform, imag_sampler, lebesgue_decompose,
                       stieltjes_invert)
from .reports import ScenarioReport

__all__ = ["HerglotzMatrixFunction", "WeylTransformSpec", "TildeData", "evaluate",
           "weyl_transform", "tilde_data", "basic_lemma_check", "full_equality_check",
           "weak_derivative_check", "recover_parameters", "RecoveredParameters",
           "lft_weyl", "lft_matrix", "characteristic_function", "herglotz_probe_check",
           "strict_at_i"]


@dataclass(frozen=True, eq=False)
class HerglotzMatrixFunction:
    """``F(z) = C + Dz + ∫(1/(t-z) - t/(1+t²))dΣ ± iS``.

    Parameters
    ----------
    dim : int
    C : Hermitian matrix
    D : PSD matrix
    sigma : MatrixMeasure
    S : PSD matrix, contributes ``+iS`` on the upper and ``-iS`` on the lower
        half-plane.
    """

    dim: int
    C: np.ndarray = None
    D: np.ndarray = None
    sigma: MatrixMeasure = None
    S: np.ndarray = None

    def __post_init__(self):
        k = self.dim
        zero = np.zeros((k, k), complex)
        c = zero if self.C is None else as_matrix(self.C, k)
        d = zero if self.D is None else as_matrix(self.D, k)
        s = zero if self.S is None else as_matrix(self.S, k)
        sigma = MatrixMeasure(k) if self.sigma is None else self.sigma
        if sigma.dim != k:
            raise ValueError("measure dimension %d != %d" % (sigma.dim, k))
        if norm(c - c.conj().T) > 1e-8 * max(1.0, norm(c)):
            raise ValueError("C must be Hermitian")
        if not is_psd(d, 1e-8):
            raise ValueError("D must be PSD")
        if not is_psd(s, 1e-8):
            raise ValueError("S must be PSD")
        object.__setattr__(self, "C", frozen(herm(c)))
        object.__setattr__(self, "D", frozen(herm(d)))
        object.__setattr__(self, "S", frozen(herm(s)))
        object.__setattr__(self, "sigma", sigma)

    @classmethod
    def constant(cls, value):
        """Function equal to ``value`` on ℂ₊ and ``value*`` on ℂ₋ (needs ``Im value ⪰ 0``)."""
        v = as_matrix(value)
        return cls(v.shape[0], C=herm(v), S=aherm(v))

    def __call__(self, z):
        return evaluate(self, z)

    def full_measure(self):
        """``Σ + (S/π) m``: the measure actually carried by the function."""
        return self.sigma.with_lebesgue(self.S / np.pi)

    def shifted(self, b):
        """``F + b`` on ℂ₊ (and ``F + b*`` on ℂ₋); needs ``Im b ⪰ 0``."""
        b = as_matrix(b, self.dim)
        return HerglotzMatrixFunction(self.dim, self.C + herm(b), self.D, self.sigma,
                                      self.S + aherm(b))

    def congruence(self, x):
        """``X F X*`` for a square ``X``."""
        x = as_matrix(x, self.dim)
        xc = x.conj().T
        return HerglotzMatrixFunction(self.dim, x @ self.C @ xc, x @ self.D @ xc,
                                      self.sigma.congruence(x), x @ self.S @ xc)


def _value(f, z):
    if isinstance(f, HerglotzMatrixFunction):
        return evaluate(f, z)
    return as_matrix(f(z))


def evaluate(f, z, tol=DEFAULT_TOL):
    """Value of a :class:`HerglotzMatrixFunction` at ``z``.

    Raises
    ------
    SingularityError
        For real ``z`` on the support of the measure (the ``S`` term counts
        as support everywhere on the real line).
    """
    z = complex(z)
    if z.imag == 0 and norm(f.S) > 0:
        raise SingularityError("half-plane constant term is undefined on the real line", z)
    out = f.C + f.D * z + cauchy_transform(f.sigma, z, tol)
    if z.imag > 0:
        out = out + 1j * f.S
    elif z.imag < 0:
        out = out - 1j * f.S
    return out


@dataclass(frozen=True, eq=False)
class WeylTransformSpec:
    """Parameters ``(B, K)`` of ``F ↦ K*(B - F)^{-1} K``; ``K`` invertible."""

    B: np.ndarray
    K: np.ndarray = None
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        b = as_matrix(self.B)
        k = np.eye(b.shape[0], dtype=complex) if self.K is None else as_matrix(self.K, b.shape[0])
        if min_singular(k) <= self.tol * max(1.0, norm(k)):
            raise SingularityError("K is not invertible")
        object.__setattr__(self, "B", frozen(b))
        object.__setattr__(self, "K", frozen(k))

    @property
    def dim(self):
        return self.B.shape[0]

    @property
    def re_B(self):
        return herm(self.B)

    @property
    def im_B(self):
        return aherm(self.B)

    @property
    def K_inv(self):
        return np.linalg.inv(self.K)


def weyl_transform(f, spec, z, tol=DEFAULT_TOL):
    """``K*(B - F(z))^{-1} K``.

    Raises
    ------
    SingularityError
        If ``B - F(z)`` is singular; the error carries ``z``.
    """
    fz = _value(f, z)
    inv = checked_inv(spec.B - fz, tol, z, "B - F(z)")
    return spec.K.conj().T @ inv @ spec.K


@dataclass(frozen=True, eq=False)
class TildeData:
    """Data of ``F`` and ``B`` after congruence by ``K^{-1}``."""

    sigma: MatrixMeasure
    C: np.ndarray
    D: np.ndarray
    B: np.ndarray

    @property
    def im_B(self):
        return aherm(self.B)

    @property
    def re_B(self):
        return herm(self.B)


def tilde_data(f, spec):
    """``Σ̃ = K⁻¹ΣK⁻¹*`` (with ``S/π`` folded into the density) and likewise
    ``C̃``, ``D̃``, ``B̃``."""
    ki = spec.K_inv
    kic = ki.conj().T
    return TildeData(f.full_measure().congruence(ki), ki @ f.C @ kic, ki @ f.D @ kic,
                     ki @ spec.B @ kic)


def _atom_residual(s1, s2, tol=DEFAULT_TOL):
    pts = sorted({t for t, _ in s1.atoms} | {t for t, _ in s2.atoms})
    return max((norm(s1.atom_at(t, tol) - s2.atom_at(t, tol)) for t in pts), default=0.0)


def _density_cells(*measures):
    cuts = sorted(set().union(*(m.breakpoints() for m in measures)))
    if not cuts:
        return [0.0]
    # one sample per cell, including the two unbounded ones
    mids = [cuts[0] - 1.0] + [0.5 * (a + b) for a, b in zip(cuts, cuts[1:])] + [cuts[-1] + 1.0]
    return mids


def _density_residual(s1, s2, offset):
    """``max_t |d₂(t) - d₁(t) - offset|`` over the common refinement."""
    return max(norm(s2.density_at(t) - s1.density_at(t) - offset) for t in _density_cells(s1, s2))


def _require_probes(probes, what="probe set"):
    probes = [complex(z) for z in probes]
    if not probes:
        raise ValueError("empty %s" % what)
    return probes


def _transform_mismatch(f1, spec1, f2, spec2, probes, tol):
    return max(norm(weyl_transform(f1, spec1, z, tol) - weyl_transform(f2, spec2, z, tol))
               for z in probes)


def basic_lemma_check(f1, spec1, f2, spec2, probes, tol=1e-8, windows=None):
    """Check the consequences of equal transforms on a set of ℂ₊ probes.

    If ``K₁*(B₁ - F₁)⁻¹K₁ = K₂*(B₂ - F₂)⁻¹K₂`` on an open subset of ℂ₊ then

    * the singular parts of ``Σ̃₁`` and ``Σ̃₂`` agree,
    * ``Σ̃₂^{ac}(δ) - Σ̃₁^{ac}(δ) = m(δ)/π · (Im B̃₂ - Im B̃₁)``,
    * ``C̃₁ - Re B̃₁ = C̃₂ - Re B̃₂`` and ``D̃₁ = D̃₂``.

    The ac relation is checked at density level on the common refinement of
    both measures, unbounded cells included, which covers every window.
    Optional bounded ``windows`` are also checked through ``apply``.

    Returns
    -------
    ScenarioReport
        Checks ``transform``, ``singular``, ``ac``, ``constant``, ``linear``.
    """
    probes = _require_probes(probes)
    if any(z.imag <= 0 for z in probes):
        raise ValueError("basic lemma probes must lie in the upper half-plane")
    t1, t2 = tilde_data(f1, spec1), tilde_data(f2, spec2)
    rep = ScenarioReport("basic_lemma")
    rep.le("transform", _transform_mismatch(f1, spec1, f2, spec2, probes, DEFAULT_TOL), tol)
    rep.le("singular", _atom_residual(t1.sigma, t2.sigma), tol)
    offset = (t2.im_B - t1.im_B) / np.pi
    ac = _density_residual(t1.sigma, t2.sigma, offset)
    if windows:
        a1, _ = lebesgue_decompose(t1.sigma)
        a2, _ = lebesgue_decompose(t2.sigma)
        for a, b in windows:
            ac = max(ac, norm(a2.apply([(a, b)]) - a1.apply([(a, b)]) - (b - a) * offset))
    rep.le("ac", ac, tol)
    rep.le("constant", norm(t1.C - t1.re_B - t2.C + t2.re_B), tol)
    rep.le("linear", norm(t1.D - t2.D), tol)
    rep.data["im_B_gap"] = norm(t2.im_B - t1.im_B)
    return rep


def full_equality_check(f1, spec1, f2, spec2, probes_upper, probes_lower, tol=1e-8):
    """Check equal transforms on both half-planes and the stronger conclusions.

    With equality on probes in both ℂ₊ and ℂ₋ one gets ``Σ̃₁ = Σ̃₂``,
    ``Im B̃₁ = Im B̃₂``, ``C̃₁ - Re B̃₁ = C̃₂ - Re B̃₂`` and ``D̃₁ = D̃₂``.
    A mismatch on either probe set is reported as a failed check.
    """
    up = _require_probes(probes_upper, "upper probe set")
    lo = _require_probes(probes_lower, "lower probe set")
    if any(z.imag <= 0 for z in up) or any(z.imag >= 0 for z in lo):
        raise ValueError("probe sets must lie in their half-planes")
    t1, t2 = tilde_data(f1, spec1), tilde_data(f2, spec2)
    rep = ScenarioReport("full_equality")
    for label, probes in (("transform_upper", up), ("transform_lower", lo)):
        try:
            mis = _transform_mismatch(f1, spec1, f2, spec2, probes, DEFAULT_TOL)
        except SingularityError as exc:
            mis = np.inf
            rep.notes += "%s: singular at z=%r. " % (label, exc.z)
        rep.le(label, mis, tol)
    rep.le("singular", _atom_residual(t1.sigma, t2.sigma), tol)
    rep.le("ac", _density_residual(t1.sigma, t2.sigma, 0.0), tol)
    rep.le("im_B", norm(t1.im_B - t2.im_B), tol)
    rep.le("constant", norm(t1.C - t1.re_B - t2.C + t2.re_B), tol)
    rep.le("linear", norm(t1.D - t2.D), tol)
    return rep


def _weak_derivative(f, t0, ys):
    vals = [aherm(_value(f, complex(t0, y))) / np.pi for y in ys]
    return neville(ys, vals)


def weak_derivative_check(f1, f2, t0, y_sequence, tol=1e-6, spec1=None, spec2=None):
    """Compare the weak derivatives of ``Σ₁`` and ``Σ₂`` at ``t0``.

    The derivative ``(1/π) lim Im F(t0 + iy)`` is extrapolated from the given
    heights and compared with the represented densities.  When both
    transform specs are given the comparison is made after congruence by
    ``K_j^{-1}``, and equal derivatives trigger the conclusions
    ``Im B̃₁ = Im B̃₂`` and ``Σ̃₁ = Σ̃₂`` as further checks.

    Raises
    ------
    ValueError
        If ``t0`` carries an atom of either measure.
    """
    ys = sorted((float(y) for y in y_sequence), reverse=True)
    if len(ys) < 2:
        raise ValueError("need at least two heights")
    for f in (f1, f2):
        if norm(f.sigma.atom_at(t0)) > 0:
            raise ValueError("t0=%r is an atom; the weak derivative does not exist" % t0)
    rep = ScenarioReport("weak_derivative")
    k1 = k2 = None
    if spec1 is not None and spec2 is not None:
        k1, k2 = spec1.K_inv, spec2.K_inv
    derivs = []
    for j, (f, ki) in enumerate(((f1, k1), (f2, k2)), start=1):
        d, err = _weak_derivative(f, t0, ys)
        rep_d = f.full_measure().density_at(t0)
        if ki is not None:
            d = ki @ d @ ki.conj().T
            rep_d = ki @ rep_d @ ki.conj().T
        rep.le("extrapolation_%d" % j, norm(d - rep_d), tol,
               "boundary limit vs represented density (extrapolation error %.1e)" % err)
        derivs.append(rep_d)
    equal = norm(derivs[0] - derivs[1])
    rep.data["derivative_gap"] = equal
    rep.le("derivatives_equal", equal, tol)
    if k1 is not None and equal <= tol:
        t1, t2 = tilde_data(f1, spec1), tilde_data(f2, spec2)
        rep.le("im_B", norm(t1.im_B - t2.im_B), tol)
        rep.le("sigma_singular", _atom_residual(t1.sigma, t2.sigma), tol)
        rep.le("sigma_ac", _density_residual(t1.sigma, t2.sigma, 0.0), tol)
    return rep


@dataclass
class RecoveredParameters:
    C: np.ndarray
    D: np.ndarray
    sigma: object
    converged: bool
    diagnostics: dict = field(default_factory=dict)


def recover_parameters(f, window, y_sequence, tol=1e-3, large_y=(1e2, 3e2, 1e3, 3e3, 1e4)):
    """Recover ``(C, D, Σ|window)`` from point values of ``F`` on ℂ₊.

    ``D`` is the extrapolated limit of ``F(iy)/(iy)`` in ``1/y``.  ``C`` is the
    Hermitian part of ``F(i)``, which is exact because the integrand
    ``1/(t-i) - t/(1+t²)`` is purely imaginary.  ``Σ`` on the window comes
    from :func:`stieltjes_invert`.
    """
    def fz(z):
        return _value(f, z)

    inv_y = [1.0 / y for y in large_y]
    d, d_err = neville(inv_y, [fz(1j * y) / (1j * y) for y in large_y])
    d = herm(d)
    fi = fz(1j)
    c = herm(fi)
    est = stieltjes_invert(imag_sampler(fz), window, y_sequence, tol=tol)
    sym = norm(fz(-1j) - fi.conj().T)
    diag = {"D_error": d_err, "symmetry": sym, "sigma_error": est.error}
    converged = est.converged and d_err <= tol * max(1.0, norm(d)) and sym <= tol
    return RecoveredParameters(c, d, est, converged, diag)


def _blocks(x, k=None):
    x = np.asarray(x, dtype=complex)
    if x.ndim == 2 and x.shape[0] == x.shape[1] and x.shape[0] % 2 == 0:
        h = x.shape[0] // 2
        return x[:h, :h], x[:h, h:], x[h:, :h], x[h:, h:]
    raise ValueError("X must be a 2k x 2k block matrix")


def lft_matrix(K, B, C=None):
    """Block matrix ``X`` whose linear fractional transform is ``C + K*(B-F)⁻¹K``.

    ``X₂ = -K⁻¹``, ``X₁ = K⁻¹B``, ``X₄ = -CK⁻¹``, ``X₃ = X₄X₂⁻¹X₁ - X₂⁻¹* = CK⁻¹B + K*``.
    """
    k = as_matrix(K)
    n = k.shape[0]
    b = as_matrix(B, n)
    c = np.zeros((n, n), complex) if C is None else as_matrix(C, n)
    ki = np.linalg.inv(k)
    x1, x2, x4 = ki @ b, -ki, -c @ ki
    x3 = x4 @ np.linalg.inv(x2) @ x1 - np.linalg.inv(x2).conj().T
    return np.block([[x1, x2], [x3, x4]])


def lft_weyl(f, x, z, tol=DEFAULT_TOL):
    """``(X₃ + X₄F(z))(X₁ + X₂F(z))⁻¹`` for ``X = [[X₁, X₂], [X₃, X₄]]``."""
    x1, x2, x3, x4 = _blocks(x)
    if min_singular(x) <= tol * max(1.0, norm(x)):
        raise SingularityError("X is not invertible")
    fz = _value(f, z)
    den = checked_inv(x1 + x2 @ fz, tol, z, "X1 + X2 F(z)")
    return (x3 + x4 @ fz) @ den


def characteristic_function(f, B, K, J, z, tol=DEFAULT_TOL):
    """``W(z) = I + 2i K*(B* - F(z))⁻¹ K J``."""
    b = as_matrix(B)
    k = as_matrix(K, b.shape[0])
    j = as_matrix(J, b.shape[0])
    inv = checked_inv(b.conj().T - _value(f, z), tol, z, "B* - F(z)")
    return np.eye(b.shape[0]) + 2j * k.conj().T @ inv @ k @ j


def herglotz_probe_check(f, probes, rng=None, tol=1e-10, vectors=8):
    """Symmetry ``F(z̄) = F(z)*`` and ``Im(F(z)h, h) ≥ 0`` on ℂ₊ probes.

    Returns
    -------
    ScenarioReport
        ``symmetry`` (max residual) and ``positivity`` (most negative
        normalised value of ``Im(F(z)h,h)``, reported as a nonnegative
        shortfall).
    """
    rng = np.random.default_rng(rng)
    probes = _require_probes(probes)
    sym, worst = 0.0, 0.0
    for z in probes:
        if z.imag <= 0:
            z = z.conjugate()
        if z.imag == 0:
            continue
        fz = _value(f, z)
        sym = max(sym, norm(_value(f, z.conjugate()) - fz.conj().T))
        scale = max(1.0, norm(fz))
        worst = min(worst, min_eig(aherm(fz)) / scale)
        k = fz.shape[0]
        for _ in range(vectors):
            h = rng.standard_normal(k) + 1j * rng.standard_normal(k)
            h /= np.linalg.norm(h)
            worst = min(worst, float(np.real(h.conj() @ aherm(fz) @ h)) / scale)
    rep = ScenarioReport("herglotz_probe")
    rep.le("symmetry", sym, tol)
    rep.le("positivity", -worst, tol)
    return rep


def strict_at_i(f, tol=DEFAULT_TOL):
    """Whether ``Im F(i)`` is invertible (a diagnostic only)."""
    return min_eig(aherm(_value(f, 1j))) > tol
