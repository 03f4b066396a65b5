"""Uniqueness and non-uniqueness scenarios for the transform ``K*(B - M)⁻¹K``.

Positive direction: under one of four hypotheses, equal transforms force
equal "hat" Weyl functions ``K⁻¹(M - Re B)K⁻¹*``.  For finite models that
makes the hat triplets unitarily equivalent, and
:func:`uniqueness_pipeline` constructs the unitary.

Negative direction: ``M₂ = M₁ + B`` with ``B₂ = B₁ + B`` leaves
``(B - M)⁻¹`` unchanged on the upper half-plane, while the hat Weyl functions
differ.  With ``Im B ≻ 0`` the function ``M₂`` carries a whole-line ac
measure, so it has no finite-matrix model.  The construction therefore
stays at the level of Herglotz functions.
"""
from dataclasses import dataclass

import numpy as np
from numpy.random import default_rng

from ._linalg import (DEFAULT_TOL, SingularityError, aherm, as_matrix, herm, is_hermitian,
                      min_eig, min_singular, norm, rank)
from .herglotz import (HerglotzMatrixFunction, WeylTransformSpec, basic_lemma_check,
                       characteristic_function, evaluate, full_equality_check, strict_at_i,
                       tilde_data, weak_derivative_check, weyl_transform)
from .realization import decide_unitary_similarity, from_triplet, verify_similarity
from .reports import Check, ScenarioReport
from .triplets import (bt_inf_data, dual_pair_triplet, extension_from_boundary, hat_transform,
                       ordinary_model)

__all__ = ["ScenarioReport", "Check", "Counterexample", "construct_counterexample",
           "counterexample_report", "momentum_golden", "momentum_pair", "PipelineSide",
           "uniqueness_pipeline", "congruent_side", "remark_candidate_check", "upper_grid",
           "CASES"]

CASES = ("a1", "a2", "a3", "a4")


def upper_grid(count=50, seed=0, re_range=(-5.0, 5.0), im_range=(0.05, 5.0)):
    """Deterministic random probe points in the upper half-plane."""
    rng = default_rng(seed)
    x = rng.uniform(*re_range, count)
    y = np.exp(rng.uniform(np.log(im_range[0]), np.log(im_range[1]), count))
    return [complex(a, b) for a, b in zip(x, y)]


@dataclass
class Counterexample:
    """``M₂ = M₁ + B``, ``B₂ = B₁ + B`` with the chosen ``B``."""

    M1: HerglotzMatrixFunction
    B1: np.ndarray
    M2: HerglotzMatrixFunction
    B2: np.ndarray
    B: np.ndarray
    omega_plus: str
    omega_is_upper_half_plane: bool


def construct_counterexample(m1, b1, z0=1j, tol=DEFAULT_TOL):
    """Second pair ``(M₂, B₂)`` with the same transform on ℂ₊ and a different hat function.

    ``B = c(1 + i)I`` with ``c = 1 + |Im B₁|``.  Then ``Re B ≠ 0``, both ``B``
    and ``B₂ = B₁ + B`` are dissipative, and ``|Re B| = |Im B|``.

    Raises
    ------
    SingularityError
        If ``B₁ - M₁(z0)`` is singular.
    """
    b1 = as_matrix(b1, m1.dim)
    z0 = complex(z0)
    if z0.imag <= 0:
        raise ValueError("z0 must lie in the upper half-plane")
    if min_singular(b1 - evaluate(m1, z0)) <= tol * max(1.0, norm(b1)):
        raise SingularityError("B1 - M1(z0) is singular", z0)
    c = 1.0 + norm(aherm(b1))
    b = c * (1 + 1j) * np.eye(m1.dim)
    m2 = m1.shifted(b)
    full = min_eig(-aherm(b1)) >= -tol and strict_at_i(m1, tol)
    desc = ("C+ (B1 accumulative and Im M1 invertible)" if full
            else "C+ minus the zeros of det(B1 - M1(z))")
    return Counterexample(m1, b1, m2, b1 + b, b, desc, full)


def counterexample_report(ce, probes=None, tol=1e-12, windows=None, seed=0):
    """Checks for a :class:`Counterexample`.

    Transform equality on ℂ₊ probes, ``Re B ≠ 0``, dissipativity of ``B`` and
    ``B₂``, the hat gap ``|M̂₁(i) - M̂₂(i)|`` against both ``|Re B|`` and
    ``|Im B|`` (they coincide for the chosen ``B``) and the measure relation
    ``Σ₂ = Σ₁ + (Im B/π) m`` on windows.
    """
    probes = upper_grid(50, seed) if probes is None else probes
    s1, s2 = WeylTransformSpec(ce.B1), WeylTransformSpec(ce.B2)
    rep = ScenarioReport("counterexample")
    mis = 0.0
    for z in probes:
        try:
            mis = max(mis, norm(weyl_transform(ce.M1, s1, z) - weyl_transform(ce.M2, s2, z)))
        except SingularityError:
            pass
    rep.le("transform_equality", mis, tol)
    re_b, im_b = norm(herm(ce.B)), norm(aherm(ce.B))
    rep.flag("re_B_nonzero", re_b > 0)
    rep.le("B_dissipative", max(0.0, -min_eig(aherm(ce.B))), tol)
    rep.le("B2_dissipative", max(0.0, -min_eig(aherm(ce.B2))), tol)
    hat1 = evaluate(ce.M1, 1j) - herm(ce.B1)
    hat2 = evaluate(ce.M2, 1j) - herm(ce.B2)
    gap = norm(hat1 - hat2)
    rep.le("hat_gap_equals_re_B", abs(gap - re_b), tol * max(1.0, re_b))
    rep.le("hat_gap_equals_im_B", abs(gap - im_b), tol * max(1.0, im_b))
    rep.flag("hat_functions_differ", gap > 0)
    rng = default_rng(seed)
    windows = windows or [tuple(sorted(rng.uniform(-10, 10, 2))) for _ in range(10)]
    sig1, sig2 = ce.M1.full_measure(), ce.M2.full_measure()
    off = aherm(ce.B) / np.pi
    meas = max(norm(sig2.apply([w]) - sig1.apply([w]) - (w[1] - w[0]) * off) for w in windows)
    rep.le("measure_shift", meas, 1e-10)
    rep.data["re_B_norm"] = re_b
    rep.data["hat_gap"] = gap
    rep.notes = "Omega_+ = " + ce.omega_plus
    return rep


def momentum_pair(k=2):
    """``M₁ ≡ ±iI``, ``B₁ = -iI`` and ``M₂ ≡ ±3iI``, ``B₂ = iI`` on ``C^k``."""
    eye = np.eye(k)
    m1 = HerglotzMatrixFunction.constant(1j * eye)
    m2 = HerglotzMatrixFunction.constant(3j * eye)
    return (m1, WeylTransformSpec(-1j * eye)), (m2, WeylTransformSpec(1j * eye))


def momentum_golden(k=2, probes=None, tol=1e-12, seed=0):
    """Momentum example: equal transforms on ℂ₊, ``W₂ ≡ I/2``, total kernel on ℂ₋."""
    (m1, s1), (m2, s2) = momentum_pair(k)
    probes = upper_grid(50, seed) if probes is None else probes
    eye = np.eye(k)
    rep = ScenarioReport("momentum")
    rep.le("transform_equality",
           max(norm(weyl_transform(m1, s1, z) - weyl_transform(m2, s2, z)) for z in probes), tol)
    rep.le("inverse_value", max(norm(np.linalg.inv(s1.B - m1(z)) - 0.5j * eye) for z in probes),
           tol, "(B1 - M1(z))^-1 = (-2i)^-1 I = (i/2) I")
    rep.le("W2_half", max(norm(characteristic_function(m2, s2.B, eye, eye, z) - 0.5 * eye)
                          for z in probes), tol)
    lemma = basic_lemma_check(m1, s1, m2, s2, probes[:10], tol)
    rep.extend(lemma, "lemma.")
    t1, t2 = tilde_data(m1, s1), tilde_data(m2, s2)
    rep.le("im_B_tilde_gap", norm(t2.im_B - t1.im_B - 2 * eye), tol)
    lower = [z.conjugate() for z in probes]
    rep.le("lower_total_kernel", max(norm(s1.B - m1(z)) for z in lower), tol,
           "B1 - M1(z) = 0 on C-, kernel is the whole space")
    rep.le("lower_kernel_dim", rank(s1.B - m1(lower[0])), 0.0,
           "shortfall of dim ker(B1 - M1(z)) from k")
    rep.le("lower_B2_invertible", max(norm(s2.B - m2(z) - 4j * eye) for z in lower), tol,
           "B2 - M2(z) = 4i I on C-")
    rep.data["k"] = k
    rep.data["probes"] = len(probes)
    return rep


@dataclass
class PipelineSide:
    """One side of the uniqueness question.

    ``weyl`` is the Weyl function (taken from ``model.representation`` when
    omitted); ``model`` is an ordinary triplet, required for constructing
    the unitary.
    """

    weyl: HerglotzMatrixFunction = None
    spec: WeylTransformSpec = None
    model: object = None

    def __post_init__(self):
        if self.weyl is None:
            if self.model is None or self.model.representation is None:
                raise ValueError("side needs a Weyl function or a model with one")
            self.weyl = self.model.representation
        if self.spec is None:
            raise ValueError("side needs a transform spec")


def congruent_side(side, v_d, v_n, w):
    """Unitarily equivalent copy of a model side with a congruent spec.

    With ``V = V_d ⊕ V_n`` and ``γ₂ = V_n γ₁ W`` the new Weyl function is
    ``W⁻¹M₁W⁻¹*``; taking ``B₂ = W⁻¹B₁W⁻¹*`` and ``K₂ = W⁻¹K₁`` leaves the
    transform unchanged.
    """
    model = side.model
    base2 = model.base.conjugate(v_d, v_n)
    g1 = model.base.N.conj().T @ model.gamma
    w = as_matrix(w, model.k)
    wi = np.linalg.inv(w)
    m2 = ordinary_model(base2, as_matrix(v_n) @ g1 @ w)
    spec2 = WeylTransformSpec(wi @ side.spec.B @ wi.conj().T, wi @ side.spec.K)
    return PipelineSide(None, spec2, m2)


def _hypothesis(rep, case, s1, s2, window, lower, t0, y_sequence, tol):
    """Record the hypothesis check; return False if it is violated."""
    if case == "a1":
        bad = [j for j, s in ((1, s1), (2, s2))
               if s.weyl.full_measure().is_lebesgue_equivalent_on(window)]
        rep.flag("hypothesis_a1", not bad,
                 "ac part equivalent to Lebesgue measure on %r for side(s) %s" % (window, bad)
                 if bad else "ac parts not Lebesgue-equivalent on %r" % (window,))
        return not bad
    if case == "a3":
        bad = [j for j, s in ((1, s1), (2, s2)) if s.weyl.full_measure().ac_covers(window)]
        rep.flag("hypothesis_a3", not bad,
                 "ac support covers %r for side(s) %s" % (window, bad)
                 if bad else "ac supports leave gaps in %r" % (window,))
        return not bad
    if case == "a2":
        if not lower:
            rep.flag("hypothesis_a2", False, "no lower half-plane probes")
            return False
        singular = []
        for z in lower:
            for s in (s1, s2):
                if min_singular(s.spec.B - evaluate(s.weyl, z)) <= DEFAULT_TOL:
                    singular.append(z)
                    break
        ok = len(singular) < len(lower)
        rep.flag("hypothesis_a2", ok,
                 "Omega_- is empty on the probes" if not ok else
                 "Omega_- nonempty (%d of %d probes)" % (len(lower) - len(singular), len(lower)))
        return ok
    if case == "a4":
        if t0 is None:
            rep.flag("hypothesis_a4", False, "no common weak-derivative point given")
            return False
        wd = weak_derivative_check(s1.weyl, s2.weyl, t0, y_sequence, max(tol, 1e-6))
        ok = wd.get("derivatives_equal").passed
        rep.flag("hypothesis_a4", ok, "weak derivatives at t0=%r %s" % (t0, "agree" if ok else "differ"))
        return ok
    raise ValueError("unknown case %r (expected one of %s)" % (case, ", ".join(CASES)))


def _hat_value(side, z):
    ki = side.spec.K_inv
    return ki @ (evaluate(side.weyl, z) - side.spec.re_B) @ ki.conj().T


def uniqueness_pipeline(side1, side2, probes, case="a1", tol=1e-8, window=(-10.0, 10.0),
                        lower_probes=None, t0=None, y_sequence=(0.1, 0.05, 0.025, 0.0125)):
    """Decide whether equal transforms make the hat triplets unitarily equivalent.

    Steps: check the case hypothesis; check transform equality on the probes
    (both half-planes for ``a2``); check the resulting identities for the
    tilde data; compare the hat Weyl functions; when both sides carry a
    model, convert the hat triplets to systems, construct ``U`` and verify
    that it intertwines ``A*``, the hat boundary maps, ``A0`` and ``A_B``.

    Cases: ``a1`` ac parts not Lebesgue-equivalent on ``window``; ``a2``
    equality also on lower probes; ``a3`` ac supports do not cover
    ``window``; ``a4`` equal weak derivatives at ``t0``.

    Returns
    -------
    ScenarioReport
        ``data["U"]`` holds the unitary when one was found.
    """
    rep = ScenarioReport("uniqueness_%s" % case)
    probes = [complex(z) for z in probes]
    if not probes or any(z.imag <= 0 for z in probes):
        raise ValueError("probes must be a nonempty list in the upper half-plane")
    lower = [complex(z) for z in (lower_probes or [])]
    if not _hypothesis(rep, case, side1, side2, window, lower, t0, y_sequence, tol):
        rep.notes = "hypothesis (%s) violated: %s" % (case, rep.checks[-1].note)
        return rep
    lemma = basic_lemma_check(side1.weyl, side1.spec, side2.weyl, side2.spec, probes, tol)
    rep.extend(lemma, "lemma.")
    if case == "a2":
        full = full_equality_check(side1.weyl, side1.spec, side2.weyl, side2.spec, probes, lower, tol)
        rep.add(full.get("transform_lower"))
    t1 = tilde_data(side1.weyl, side1.spec)
    t2 = tilde_data(side2.weyl, side2.spec)
    rep.le("im_B_tilde_equal", norm(t1.im_B - t2.im_B), tol)
    rep.le("hat_weyl_equal", max(norm(_hat_value(side1, z) - _hat_value(side2, z)) for z in probes),
           tol)
    if side1.model is None or side2.model is None:
        rep.notes = "no finite models; unitary not constructed"
        return rep
    if not rep.verdict:
        rep.notes = "transforms or identities disagree; unitary not attempted"
        return rep
    hats = [hat_transform(s.model, s.spec.K, s.spec.B) for s in (side1, side2)]
    systems = []
    for h in hats:
        bt = bt_inf_data(dual_pair_triplet(h, np.eye(h.k), np.zeros((h.k, h.k))))
        systems.append(from_triplet(bt))
    u = decide_unitary_similarity(systems[0], systems[1], tol)
    rep.flag("unitary_found", u is not None)
    if u is None:
        return rep
    res = verify_similarity(systems[0], systems[1], u)
    rep.le("similarity", res.max, tol)
    uu = np.kron(np.eye(2), u)
    h1, h2 = hats
    g1 = uu @ h1.adjoint.graph.basis
    rep.le("adjoint_intertwined", h2.adjoint.graph.residual(g1), tol)
    phi = h1.adjoint.graph.basis
    rep.le("boundary_maps_intertwined",
           max(norm(h2.G0 @ uu @ phi - h1.G0 @ phi), norm(h2.G1 @ uu @ phi - h1.G1 @ phi)), tol)
    rep.le("A0_intertwined", h2.A0.graph.residual(uu @ h1.A0.graph.basis), tol)
    e1 = extension_from_boundary(side1.model, side1.spec.B)
    e2 = extension_from_boundary(side2.model, side2.spec.B)
    rep.le("A_B_intertwined", e2.graph.residual(uu @ e1.graph.basis), tol)
    rep.data["U"] = u
    return rep


def remark_candidate_check(model, b1, b2, K=None, probes=None, tol=1e-8):
    """Test a candidate with selfadjoint ``B₁``, accumulative ``B₂`` and equal transforms.

    Checks the hypotheses (``B₁`` Hermitian, ``Im B₂ ⪯ 0``, ``B₁ ≠ B₂``), the
    transform equality on probes and whether ``A_{B₁}``, ``A_{B₂}`` fail to be
    unitarily similar (different normality or spectra).  No instance is
    shipped; this is a testing hook.
    """
    probes = upper_grid(20) if probes is None else probes
    k = model.k
    K = np.eye(k) if K is None else K
    b1, b2 = as_matrix(b1, k), as_matrix(b2, k)
    rep = ScenarioReport("remark_candidate")
    rep.flag("B1_selfadjoint", is_hermitian(b1, tol))
    rep.flag("B2_accumulative", min_eig(-aherm(b2)) >= -tol)
    rep.flag("B1_ne_B2", norm(b1 - b2) > tol)
    s1, s2 = WeylTransformSpec(b1, K), WeylTransformSpec(b2, K)
    mis = max(norm(weyl_transform(model.representation, s1, z)
                   - weyl_transform(model.representation, s2, z)) for z in probes)
    rep.le("transform_equality", mis, tol)
    a1 = extension_from_boundary(model, b1)
    a2 = extension_from_boundary(model, b2)
    normal = []
    spectra = []
    for a in (a1, a2):
        try:
            m = a.as_matrix()
            normal.append(norm(m @ m.conj().T - m.conj().T @ m) <= tol * max(1.0, norm(m)) ** 2)
            spectra.append(np.sort_complex(np.linalg.eigvals(m)))
        except ValueError:
            normal.append(None)
            spectra.append(None)
    differ = normal[0] != normal[1] or (
        spectra[0] is not None and spectra[1] is not None
        and np.max(np.abs(spectra[0] - spectra[1])) > tol)
    rep.flag("extensions_not_unitarily_similar", bool(differ))
    return rep
