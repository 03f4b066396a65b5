"""Finite-dimensional boundary-triplet and Weyl-function calculus.

Submodules
----------
relations    linear relations (graphs of multivalued operators)
measures     matrix-valued Borel measures, Cauchy transform, Stieltjes inversion
herglotz     matrix Herglotz functions and the transform ``K*(B - F(z))⁻¹K``
triplets     boundary triplets of nondensely defined symmetric operators
realization  transfer functions and the unitary-similarity decision
equivalence  counterexample construction and uniqueness pipeline
cli          scenario documents and sampling tables
"""
from . import equivalence, herglotz, measures, realization, relations, triplets
from ._linalg import DEFAULT_TOL, SingularityError
from .equivalence import (construct_counterexample, momentum_golden, uniqueness_pipeline)
from .herglotz import HerglotzMatrixFunction, WeylTransformSpec, basic_lemma_check, weyl_transform
from .measures import MatrixMeasure, spectral_measure, stieltjes_invert
from .realization import PqsSystem, decide_unitary_similarity, verify_similarity
from .relations import LinearRelation, Subspace
from .reports import Check, ScenarioReport
from .triplets import BTInfTriplet, NondenseSymmetric, OrdinaryTriplet, ordinary_model

__version__ = "0.1.0"

__all__ = ["equivalence", "herglotz", "measures", "realization", "relations", "triplets",
           "DEFAULT_TOL", "SingularityError", "construct_counterexample", "momentum_golden",
           "uniqueness_pipeline", "HerglotzMatrixFunction", "WeylTransformSpec",
           "basic_lemma_check", "weyl_transform", "MatrixMeasure", "spectral_measure",
           "stieltjes_invert", "PqsSystem", "decide_unitary_similarity", "verify_similarity",
           "LinearRelation", "Subspace", "Check", "ScenarioReport", "BTInfTriplet",
           "NondenseSymmetric", "OrdinaryTriplet", "ordinary_model"]
