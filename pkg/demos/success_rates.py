"""Empirical success rates of the three methods on the benchmark problems.

A trial succeeds when the number of finite eigenvalues is right; the error is
the largest distance to the known eigenvalues. Set SPEP_THREADS to control
the worker pool.
"""

import sys

from spep import METHODS, run_trials

CASES = [("ksg-1", {}), ("ksg-2", {}), ("ksg-3", {}), ("ksg-4", {"a": 8}),
         ("ksg-5", {"a": 3}), ("kk", {}), ("zh", {})]


def main(N=100):
    print(f"{'problem':14s}" + "".join(f"{m:>28s}" for m in METHODS))
    for name, params in CASES:
        cells = []
        for m in METHODS:
            rep = run_trials(name, params, m, N=N, master_seed=1)
            cells.append(f"p={rep.empirical_p:.3f} err={rep.max_error:.1e}")
        label = name + "".join(f" a={v}" for v in params.values())
        print(f"{label:14s}" + "".join(f"{c:>28s}" for c in cells))


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 100)
