"""Zero-group-velocity points of a small waveguide model.

Shows the full classification table of one perturbation run (true, random,
prescribed candidates with their alpha, beta, gamma and gap), then turns the
real wavenumbers into ZGV points (omega, kappa).
"""

import numpy as np

from spep import PERTURBATION, label_candidates, run_method, zgv_points
from spep.problems import ZGV_EXAMPLE, zgv_qep


def main():
    P = zgv_qep(**ZGV_EXAMPLE)
    rng = np.random.default_rng(0)
    labeled = label_candidates(run_method(P, PERTURBATION, rng=rng))
    print(f"{'lambda':>26s} {'gamma':>9s} {'alpha':>9s} {'beta':>9s} {'gap':>9s}  label")
    for c in sorted(labeled, key=lambda c: c.label):
        lam = c.candidate.lam
        text = "inf" if lam.is_infinite else f"{lam.value.real:.6f}{lam.value.imag:+.6f}i"
        cd = c.candidate
        print(f"{text:>26s} {cd.gamma:9.1e} {cd.alpha:9.1e} {cd.beta:9.1e} {c.gap:9.1e}  {c.label}")

    print("\nZGV points (omega, kappa, residual):")
    for w, k, r in zgv_points(**ZGV_EXAMPLE, rng=np.random.default_rng(1)):
        print(f"  {w:.6f}  {round(k, 6) + 0.0:+.6f}  {r:.1e}")


if __name__ == "__main__":
    main()
