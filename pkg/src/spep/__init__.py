"""Eigenvalues of singular square and rectangular matrix polynomials.

Three randomized transforms (rank-completing perturbation, projection to the
normal rank, augmentation) turn a singular polynomial into a regular one; the
true eigenvalues are then separated from the fake ones and split into finite
and infinite.

>>> import numpy as np
>>> from spep import fixture, run_method, extract_finite
>>> P, truth = fixture("kk")
>>> lam = extract_finite(run_method(P, "projection", rng=np.random.default_rng(1)))
>>> len(lam), round(float(lam[0].real), 8)
(1, -1.0)
"""

from .classify import (
    ClassificationThresholds,
    ClassifiedEigenvalue,
    extract_finite,
    index_sum_check,
    label_candidates,
    label_counts,
    rank_diagnostic,
)
from .kernel import ProjectiveEigenvalue, SingularPencilError, chordal_distance
from .matpoly import MatrixPolynomial, evaluate, reversal
from .nullspace import MinimalBasis, poly_det, projected_basis_roots, simplicity_check
from .pep import companion_linearize, gamma, solve_regular
from .problems import GroundTruth, fixture, synthetic_singular, zgv_frequencies, zgv_points
from .singular import (
    AUGMENTATION,
    METHODS,
    PERTURBATION,
    PROJECTION,
    CandidateEigenvalue,
    EmptyResultError,
    SolverConfig,
    normal_rank,
    run_method,
)
from .trials import TrialReport, run_trials

__all__ = [
    "AUGMENTATION", "METHODS", "PERTURBATION", "PROJECTION",
    "CandidateEigenvalue", "ClassificationThresholds", "ClassifiedEigenvalue",
    "EmptyResultError", "GroundTruth", "MatrixPolynomial", "MinimalBasis",
    "ProjectiveEigenvalue", "SingularPencilError", "SolverConfig", "TrialReport",
    "chordal_distance", "companion_linearize", "evaluate", "extract_finite", "fixture",
    "gamma", "index_sum_check", "label_candidates", "label_counts", "normal_rank",
    "poly_det", "projected_basis_roots", "rank_diagnostic", "reversal", "run_method",
    "run_trials", "simplicity_check", "solve_regular", "synthetic_singular",
    "zgv_frequencies", "zgv_points",
]
