"""Repeated randomized runs of a method on a fixture, with success statistics."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Mapping

import numpy as np

from .classify import ClassificationThresholds, extract_finite
from .kernel import SingularPencilError
from .problems import fixture
from .singular import EmptyResultError, SolverConfig, method_name, run_method

WRONG_COUNT = "wrong-count"
SOLVER_ERROR = "solver-error"
NON_FINITE = "non-finite"


@dataclass
class TrialOutcome:
    index: int
    success: bool
    n_found: int
    error: float = float("nan")
    failure: str | None = None


@dataclass
class TrialReport:
    fixture: str
    method: str
    trials: int
    failures: int
    max_error: float
    failure_kinds: dict = field(default_factory=dict)
    params: dict = field(default_factory=dict)
    master_seed: int = 0

    @property
    def empirical_p(self) -> float:
        return 1.0 - self.failures / self.trials if self.trials else float("nan")

    def to_dict(self) -> dict:
        d = asdict(self)
        d["empirical_p"] = self.empirical_p
        return d


def match_error(found, truth) -> float:
    """Largest distance over a greedy nearest-pair matching of two equal-size sets."""
    found = list(np.asarray(found, dtype=complex))
    truth = list(np.asarray(truth, dtype=complex))
    if not truth:
        return 0.0
    pairs = sorted((abs(f - t), i, j) for i, f in enumerate(found) for j, t in enumerate(truth))
    used_f, used_t, worst = set(), set(), 0.0
    for dist, i, j in pairs:
        if i in used_f or j in used_t:
            continue
        used_f.add(i)
        used_t.add(j)
        worst = max(worst, dist)
    return float(worst)


def trial_rng(master_seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng([int(master_seed), int(index)])


def run_single(fixture_name: str, params: Mapping, method: str, cfg: SolverConfig,
               th: ClassificationThresholds, master_seed: int, index: int,
               k: int | None = None, truth_override=None) -> TrialOutcome:
    rng = trial_rng(master_seed, index)
    P, truth = fixture(fixture_name, params, rng=rng)
    expected = truth.finite_eigenvalues if truth_override is None else truth_override
    try:
        found = extract_finite(run_method(P, method, cfg, rng, k=k), th)
    except (SingularPencilError, EmptyResultError, np.linalg.LinAlgError):
        return TrialOutcome(index, False, 0, failure=SOLVER_ERROR)
    if not np.all(np.isfinite(found)):
        return TrialOutcome(index, False, len(found), failure=NON_FINITE)
    if len(found) != len(expected):
        return TrialOutcome(index, False, len(found), failure=WRONG_COUNT)
    return TrialOutcome(index, True, len(found), error=match_error(found, expected))


def _run_chunk(args):
    name, params, method, cfg, th, seed, indices, k, truth = args
    return [run_single(name, params, method, cfg, th, seed, i, k, truth) for i in indices]


def default_workers() -> int:
    env = os.environ.get("SPEP_THREADS")
    if env:
        return max(1, int(env))
    try:
        return len(os.sched_getaffinity(0))
    except AttributeError:
        return os.cpu_count() or 1


def run_trials(fixture_name: str, params: Mapping | None, method: str,
               cfg: SolverConfig | None = None, N: int = 100, master_seed: int = 0,
               th: ClassificationThresholds | None = None, workers: int | None = None,
               k: int | None = None, truth=None) -> TrialReport:
    """Run ``N`` independent trials and count the ones with the wrong finite count.

    Trial ``i`` draws all randomness (fixture factors and transform) from the
    stream seeded by ``(master_seed, i)``, so the report does not depend on
    ``workers``. ``truth`` replaces the fixture's reference eigenvalues, e.g.
    with higher-precision values.
    """
    params = dict(params or {})
    method = method_name(method)
    cfg = cfg or SolverConfig()
    th = th or ClassificationThresholds()
    workers = default_workers() if workers is None else max(1, int(workers))
    indices = list(range(N))
    if workers == 1 or N < 2:
        outcomes = _run_chunk((fixture_name, params, method, cfg, th, master_seed, indices, k, truth))
    else:
        chunks = [indices[w::workers] for w in range(workers)]
        args = [(fixture_name, params, method, cfg, th, master_seed, c, k, truth) for c in chunks]
        with ProcessPoolExecutor(max_workers=workers) as ex:
            outcomes = [o for part in ex.map(_run_chunk, args) for o in part]
        outcomes.sort(key=lambda o: o.index)
    kinds: dict = {}
    for o in outcomes:
        if not o.success:
            kinds[o.failure] = kinds.get(o.failure, 0) + 1
    errors = [o.error for o in outcomes if o.success]
    return TrialReport(
        fixture=fixture_name, method=method, trials=N,
        failures=sum(not o.success for o in outcomes),
        max_error=float(max(errors)) if errors else float("nan"),
        failure_kinds=kinds, params=params, master_seed=int(master_seed),
    )
