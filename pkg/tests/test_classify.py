import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spep.classify import (
    LABELS,
    RANK_OK,
    RANK_OVER,
    RANK_UNDER,
    ClassificationThresholds,
    extract_finite,
    index_sum_check,
    infinite_flags,
    label_candidates,
    label_counts,
    rank_diagnostic,
    relative_gaps,
)
from spep.kernel import ProjectiveEigenvalue
from spep.singular import CandidateEigenvalue

TH = ClassificationThresholds()


def cand(lam, gamma=1.0, alpha=0.0, beta=0.0, threshold=1e-10):
    pe = ProjectiveEigenvalue.infinity() if lam is None else ProjectiveEigenvalue.finite(lam)
    return CandidateEigenvalue(pe, gamma, alpha, beta, np.ones(1), np.ones(1), threshold)


def test_threshold_defaults_and_validation():
    assert (TH.delta1, TH.delta2, TH.xi2) == (1e-16, 1e-12, 1e-2)
    with pytest.raises(ValueError):
        ClassificationThresholds(delta1=1e-10, delta2=1e-12)
    with pytest.raises(ValueError):
        ClassificationThresholds(xi2=1.5)


def test_relative_gaps():
    f = ProjectiveEigenvalue.finite
    assert np.allclose(relative_gaps([f(0), f(1)]), [1, 1 / np.sqrt(2)])
    g = relative_gaps([f(0), ProjectiveEigenvalue.infinity(), f(3)])
    assert g[1] == 1.0 and g[0] == pytest.approx(3.0)
    assert relative_gaps([f(5)])[0] == np.inf
    two_inf = relative_gaps([ProjectiveEigenvalue.infinity()] * 2)
    assert list(two_inf) == [1.0, 1.0]


@pytest.mark.parametrize("gamma, gap, infinite", [
    (0.0, 1.0, True),
    (7.2e-13, 6.4e-7, False),
    (9.0e-19, 0.52, True),
    (5e-13, 0.5, True),
    (1e-3, 0.5, False),
])
def test_infinite_rule(gamma, gap, infinite):
    assert bool(infinite_flags([gamma], [gap], TH)[0]) is infinite


def test_extract_finite_rescues_clustered_pair():
    c = [cand(1.0, 0.4), cand(1.0 + 6.4e-7, 7.2e-13), cand(1.0 - 6.4e-7, 7.2e-13), cand(None, 0.0),
         cand(50.0, 9e-19)]
    got = np.sort_complex(extract_finite(c))
    assert got.size == 3 and np.allclose(got, 1.0)


def test_extract_finite_skips_filtered_out():
    assert extract_finite([cand(2.0, alpha=1.0)]).size == 0


@pytest.mark.parametrize("alpha, beta, label", [
    (5.3e-15, 0.54, "random-right"),
    (0.29, 8.6e-15, "random-left"),
    (0.24, 0.72, "prescribed"),
    (1e-15, 1e-15, "finite-true"),
])
def test_labels(alpha, beta, label):
    assert label_candidates([cand(0.3, 0.5, alpha, beta)])[0].label == label


def test_infinite_true_label():
    out = label_candidates([cand(None, 0.0), cand(0.5, 1.0)])
    assert [c.label for c in out] == ["infinite-true", "finite-true"]


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 12))
def test_labels_exhaustive_and_consistent(seed, n):
    rng = np.random.default_rng(seed)
    cands = [cand(complex(*rng.standard_normal(2)), float(10 ** rng.uniform(-20, 0)),
                  float(10 ** rng.uniform(-16, 0)), float(10 ** rng.uniform(-16, 0)))
             for _ in range(n)]
    out = label_candidates(cands, TH)
    assert len(out) == n and all(c.label in LABELS for c in out)
    assert sum(label_counts(out).values()) == n
    for c in out:
        assert (c.label in ("finite-true", "infinite-true")) == c.candidate.passed_filter
    finite_true = np.sort_complex([c.value for c in out if c.label == "finite-true"])
    assert np.allclose(finite_true, np.sort_complex(extract_finite(cands, TH)))


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**32 - 1), st.floats(-15.9, -1), st.floats(0, 10))
def test_delta2_monotone(seed, log_d2, widen):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, 10))
    vals = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    vals[rng.random(n) < 0.3] += 1e-8  # some clusters
    cands = [cand(v, float(10 ** rng.uniform(-20, 0))) for v in vals]
    small = ClassificationThresholds(1e-16, 10 ** log_d2, 1e-2)
    big = ClassificationThresholds(1e-16, min(10 ** (log_d2 + widen), 0.99), 1e-2)
    assert extract_finite(cands, big).size <= extract_finite(cands, small).size


def test_index_sum_examples():
    assert index_sum_check(2, 6, 6, 2, 2, 2)
    assert index_sum_check(3, 4, 10, 2, 0, 0)
    assert not index_sum_check(2, 6, 6, 2, 0, 0)


def test_rank_diagnostic():
    true = label_candidates([cand(0.1), cand(0.2)])
    assert rank_diagnostic(true, "projection", 1) == RANK_OVER
    assert rank_diagnostic(true, "projection", 0) == RANK_OK
    mixed = label_candidates([cand(0.1), cand(0.2, alpha=1, beta=1)])
    assert rank_diagnostic(mixed, "projection", 1) == RANK_UNDER
    assert rank_diagnostic(mixed, "perturbation", 1) == RANK_OK
