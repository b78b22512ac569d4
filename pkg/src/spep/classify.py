"""Separate true from fake eigenvalues and finite from infinite ones."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .kernel import ProjectiveEigenvalue
from .singular import PROJECTION, CandidateEigenvalue, method_name

FINITE_TRUE = "finite-true"
INFINITE_TRUE = "infinite-true"
RANDOM_RIGHT = "random-right"
RANDOM_LEFT = "random-left"
PRESCRIBED = "prescribed"
LABELS = (FINITE_TRUE, INFINITE_TRUE, RANDOM_RIGHT, RANDOM_LEFT, PRESCRIBED)


@dataclass(frozen=True)
class ClassificationThresholds:
    delta1: float = 1e-16
    delta2: float = 1e-12
    xi2: float = 1e-2

    def __post_init__(self):
        if not 0 < self.delta1 < self.delta2 < 1:
            raise ValueError("need 0 < delta1 < delta2 < 1")
        if not 0 < self.xi2 < 1:
            raise ValueError("need 0 < xi2 < 1")


@dataclass(frozen=True, eq=False)
class ClassifiedEigenvalue:
    candidate: CandidateEigenvalue
    gap: float
    label: str

    @property
    def value(self) -> complex:
        return self.candidate.value


def relative_gaps(lams: Sequence[ProjectiveEigenvalue]) -> np.ndarray:
    """``min_{j != i} |lam_j - lam_i| / sqrt(1 + |lam_i|^2)`` for each ``i``.

    Infinite ``lam_j`` never attain the minimum, infinite ``lam_i`` get 1.0,
    and an entry with no finite neighbour gets ``inf``.
    """
    n = len(lams)
    inf_mask = np.array([l.is_infinite for l in lams], dtype=bool)
    vals = np.array([0j if l.is_infinite else l.value for l in lams], dtype=complex)
    gaps = np.full(n, np.inf)
    fin = np.flatnonzero(~inf_mask)
    if fin.size:
        v = vals[fin]
        dist = np.abs(v[:, None] - v[None, :])
        np.fill_diagonal(dist, np.inf)
        gaps[fin] = dist.min(axis=1) / np.sqrt(1 + np.abs(v) ** 2)
    gaps[inf_mask] = 1.0
    return gaps


def infinite_flags(gammas, gaps, th: ClassificationThresholds) -> np.ndarray:
    gammas = np.asarray(gammas, dtype=float)
    gaps = np.asarray(gaps, dtype=float)
    return (gammas < th.delta1) | ((gammas < th.delta2) & (gaps > th.xi2))


def extract_finite(cands: Sequence[CandidateEigenvalue],
                   th: ClassificationThresholds | None = None) -> np.ndarray:
    """Finite eigenvalues among the filter-passing candidates.

    A candidate is declared infinite if ``gamma < delta1``, or if
    ``gamma < delta2`` while its relative gap exceeds ``xi2``. Gaps are
    measured within the filter-passing set.
    """
    th = th or ClassificationThresholds()
    kept = [c for c in cands if c.passed_filter]
    if not kept:
        return np.empty(0, dtype=complex)
    gaps = relative_gaps([c.lam for c in kept])
    flags = infinite_flags([c.gamma for c in kept], gaps, th)
    return np.array([c.value for c, f in zip(kept, flags) if not f], dtype=complex)


def label_candidates(cands: Sequence[CandidateEigenvalue],
                     th: ClassificationThresholds | None = None) -> list[ClassifiedEigenvalue]:
    """Assign every candidate one of :data:`LABELS`.

    Small ``alpha`` and ``beta`` (below the candidate's filter threshold) mark a
    true eigenvalue; only one of them small marks a right or left random
    eigenvalue; neither marks a prescribed one. True eigenvalues are split into
    finite and infinite by the same rule as :func:`extract_finite`.
    """
    th = th or ClassificationThresholds()
    n = len(cands)
    all_gaps = relative_gaps([c.lam for c in cands])
    passed = np.array([c.passed_filter for c in cands], dtype=bool)
    gaps = all_gaps.copy()
    inf_flag = np.zeros(n, dtype=bool)
    idx = np.flatnonzero(passed)
    if idx.size:
        g = relative_gaps([cands[i].lam for i in idx])
        gaps[idx] = g
        inf_flag[idx] = infinite_flags([cands[i].gamma for i in idx], g, th)
    out = []
    for i, c in enumerate(cands):
        a_small = c.alpha < c.threshold
        b_small = c.beta < c.threshold
        if a_small and b_small:
            label = INFINITE_TRUE if inf_flag[i] else FINITE_TRUE
        elif a_small:
            label = RANDOM_RIGHT
        elif b_small:
            label = RANDOM_LEFT
        else:
            label = PRESCRIBED
        out.append(ClassifiedEigenvalue(c, float(gaps[i]), label))
    return out


def label_counts(classified: Sequence[ClassifiedEigenvalue]) -> dict[str, int]:
    counts = dict.fromkeys(LABELS, 0)
    for c in classified:
        counts[c.label] += 1
    return counts


def index_sum_check(d: int, r: int, n_finite: int, n_infinite: int, M: int, N: int) -> bool:
    """Index sum theorem: ``d * nrank == finite + infinite + sum(eps) + sum(eta)``."""
    return d * r == n_finite + n_infinite + M + N


RANK_OK = "consistent"
RANK_OVER = "over-estimated"
RANK_UNDER = "under-estimated"


def rank_diagnostic(classified: Sequence[ClassifiedEigenvalue], method: str, k: int) -> str:
    """Guess whether the normal rank used for a run was wrong.

    With ``k >= 1`` some candidates must be fake, so all of them passing the
    filter points to a rank that is too high. Projection produces no prescribed
    eigenvalues for the right rank, so seeing one points to a rank that is too
    low.
    """
    labels = [c.label for c in classified]
    if k >= 1 and labels and all(lb in (FINITE_TRUE, INFINITE_TRUE) for lb in labels):
        return RANK_OVER
    if method_name(method) == PROJECTION and PRESCRIBED in labels:
        return RANK_UNDER
    return RANK_OK
