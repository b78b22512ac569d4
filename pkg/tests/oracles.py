"""Independent reference computations used by the tests."""

from __future__ import annotations

from functools import lru_cache

import mpmath
import numpy as np
import sympy as sp


@lru_cache(maxsize=1)
def bivariate_roots() -> tuple:
    """High-precision l-values of the bivariate system behind the 9x9 fixture.

    p = 1 + 2l^2 + 3m + 4l^4 + 5l^2 m + 6m^2 and q = 6 + 5l + 4m + 3l^2 + 2lm + m^2;
    eliminating m with a resultant leaves a degree-8 polynomial in l whose
    roots are found with 40 significant digits.
    """
    l, m = sp.symbols("l m")
    p = 1 + 2 * l**2 + 3 * m + 4 * l**4 + 5 * l**2 * m + 6 * m**2
    q = 6 + 5 * l + 4 * m + 3 * l**2 + 2 * l * m + m**2
    res = sp.Poly(sp.resultant(p, q, m), l)
    coeffs = [int(c) for c in res.all_coeffs()]
    with mpmath.workdps(40):
        roots = mpmath.polyroots(coeffs, maxsteps=200, extraprec=200)
    return tuple(complex(r) for r in roots)


def cofactor_det(entries) -> np.ndarray:
    """det of a k x k table of scalar coefficient lists (low degree first), by sympy."""
    lam = sp.symbols("lam")
    k = len(entries)

    def entry(i, j):
        return sum((sp.Float(complex(c).real, 30) + sp.I * sp.Float(complex(c).imag, 30)) * lam**e
                   for e, c in enumerate(entries[i][j]))

    det = sp.Matrix(k, k, entry).det(method="berkowitz")
    poly = sp.Poly(sp.expand(det), lam)
    return np.array([complex(x) for x in reversed(poly.all_coeffs())], dtype=complex)


def scalar_roots(coeffs_low_first) -> np.ndarray:
    """Roots of a scalar polynomial via numpy's companion matrix."""
    c = np.trim_zeros(np.asarray(coeffs_low_first, dtype=complex), "b")
    return np.polynomial.polynomial.polyroots(c) if c.size > 1 else np.zeros(0, dtype=complex)


def multiset_distance(a, b) -> float:
    """Largest distance of the optimal one-to-one matching of two small sets."""
    from scipy.optimize import linear_sum_assignment

    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.size != b.size:
        return np.inf
    if a.size == 0:
        return 0.0
    D = np.abs(a[:, None] - b[None, :])
    r, c = linear_sum_assignment(D)
    return float(D[r, c].max())


def chordal(a: complex, b: complex) -> float:
    """Chordal distance between two points of the extended plane (inf allowed)."""
    if np.isinf(a) and np.isinf(b):
        return 0.0
    if np.isinf(a):
        return 1 / np.sqrt(1 + abs(b) ** 2)
    if np.isinf(b):
        return 1 / np.sqrt(1 + abs(a) ** 2)
    return abs(a - b) / np.sqrt((1 + abs(a) ** 2) * (1 + abs(b) ** 2))


def chordal_matching(a, b) -> float:
    """Optimal one-to-one matching in the chordal metric; returns the worst pair."""
    from scipy.optimize import linear_sum_assignment

    a, b = list(a), list(b)
    if len(a) != len(b):
        return np.inf
    if not a:
        return 0.0
    D = np.array([[chordal(x, y) for y in b] for x in a])
    r, c = linear_sum_assignment(D)
    return float(D[r, c].max())
