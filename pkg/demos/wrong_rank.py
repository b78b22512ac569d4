"""What happens when the normal rank handed to projection is wrong.

The 8x8 problem with a quadruple eigenvalue 1 has normal rank 5. Too low a
rank leaves candidates that fail both filters (labelled prescribed); too high
a rank leaves a singular problem whose candidates all pass the filter.
"""

import numpy as np

from spep import PROJECTION, SingularPencilError, fixture, label_candidates, label_counts, run_method
from spep.classify import rank_diagnostic


def main():
    rng = np.random.default_rng(3)
    P, truth = fixture("ksg-5", {"a": 3}, rng=rng)
    n = P.nrows
    for rank in (4, 5, 6):
        k = n - rank
        try:
            labeled = label_candidates(run_method(P, PROJECTION, rng=rng, k=k, singular_tol=-1))
        except SingularPencilError as exc:
            print(f"rank {rank}: {exc}")
            continue
        counts = {lb: c for lb, c in label_counts(labeled).items() if c}
        print(f"rank {rank}: {counts}  ->  {rank_diagnostic(labeled, PROJECTION, k)}")


if __name__ == "__main__":
    main()
