"""Solve a system of two bivariate polynomials through a singular quadratic.

The 9x9 quadratic built from 3x3 determinantal representations of
    p(l, m) = 1 + 2l^2 + 3m + 4l^4 + 5l^2 m + 6m^2
    q(l, m) = 6 + 5l + 4m + 3l^2 + 2lm + m^2
has normal rank 8, and its finite eigenvalues are the l-coordinates of the
common roots. Every method should find the same eight values.
"""

import numpy as np

from spep import METHODS, extract_finite, fixture, normal_rank, run_method


def main():
    P, truth = fixture("bivariate-ex")
    print(f"size {P.nrows}x{P.ncols}, degree {P.degree}, normal rank {normal_rank(P)}")
    for method in METHODS:
        lam = np.sort_complex(extract_finite(run_method(P, method, rng=np.random.default_rng(0))))
        print(f"\n{method}: {lam.size} finite eigenvalues")
        for z in lam:
            print(f"  {z.real: .10f} {z.imag:+.10f}i")


if __name__ == "__main__":
    main()
