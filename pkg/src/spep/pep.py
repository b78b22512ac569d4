"""Regular polynomial eigenproblems via the first companion linearization."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .kernel import ProjectiveEigenvalue, pencil_eigen, smallest_singular_vectors
from .matpoly import (
    MatrixPolynomial,
    coefficient_norms,
    derivative_evaluate_scaled,
    evaluate_scaled,
    reversal,
)


@dataclass(frozen=True, eq=False)
class EigenTriplet:
    lam: ProjectiveEigenvalue
    right_x: np.ndarray
    left_y: np.ndarray


def companion_linearize(P: MatrixPolynomial) -> tuple[np.ndarray, np.ndarray]:
    """First companion form ``A + lam B`` of a square ``P`` with ``d >= 1``.

    ``B = diag(A_d, I, ..., I)`` and ``A`` has first block row
    ``[A_{d-1}, ..., A_0]`` with ``-I`` on the block subdiagonal. With
    ``v = [lam^(d-1) x; ...; lam x; x]`` the first block row of
    ``(A + lam B) v`` is ``P(lam) x`` and the others vanish.
    """
    if not P.is_square:
        raise ValueError("companion linearization needs a square polynomial")
    d, n = P.degree, P.nrows
    if d < 1:
        raise ValueError("degree 0 polynomial has nothing to linearize")
    N = d * n
    A = np.zeros((N, N), dtype=complex)
    B = np.eye(N, dtype=complex)
    B[:n, :n] = P.coeffs[d]
    for j in range(d):
        A[:n, j * n:(j + 1) * n] = P.coeffs[d - 1 - j]
    for j in range(1, d):
        A[j * n:(j + 1) * n, (j - 1) * n:j * n] = -np.eye(n)
    return A, B


def eigenvectors_at(P: MatrixPolynomial, lam: ProjectiveEigenvalue):
    """Unit right/left null vectors of ``P`` at ``lam`` (``rev P(0)`` at infinity)."""
    if lam.is_infinite:
        M = reversal(P).coeffs[0]
    else:
        M = evaluate_scaled(P, lam.value)
    x, y, _ = smallest_singular_vectors(M)
    return x, y


def parameter_scaling(P: MatrixPolynomial) -> tuple[MatrixPolynomial, float]:
    """Rescale ``lam = g mu`` and the coefficients so the extreme ones balance.

    Returns ``(Q, g)`` where ``Q(mu)`` is a positive multiple of ``P(g mu)``
    and ``g = (||A_0|| / ||A_d||)^(1/d)``. For quadratics this is the
    Fan-Lin-Van Dooren scaling. It keeps QZ on the companion pencil backward
    stable for badly scaled coefficients. ``g = 1`` when either end vanishes.
    """
    norms = coefficient_norms(P)
    d = P.degree
    g = 1.0
    if d >= 1 and norms[0] > 0 and norms[d] > 0:
        g = float((norms[0] / norms[d]) ** (1.0 / d))
    w = norms * g ** np.arange(d + 1)
    s = float(w.max()) if w.max() > 0 else 1.0
    c = P.coeffs * (g ** np.arange(d + 1) / s)[:, None, None]
    return MatrixPolynomial(c), g


def solve_regular(P: MatrixPolynomial, singular_tol: float | None = None) -> list[EigenTriplet]:
    """All ``d n`` eigentriplets of a regular square matrix polynomial.

    Eigenvalues come from QZ on the companion pencil; eigenvectors are the
    extreme singular vectors of ``P(lam_i)`` (of ``A_d`` for infinite
    ``lam_i``). Raises :class:`~spep.kernel.SingularPencilError` when the
    pencil is detected to be singular.
    """
    if P.degree == 0:
        return []
    Ps, g = parameter_scaling(P)
    A, B = companion_linearize(Ps)
    lams = pencil_eigen(A, B, singular_tol=singular_tol)
    out = []
    for mu in lams:
        lam = ProjectiveEigenvalue(mu.alpha * g, mu.beta)
        s = np.hypot(abs(lam.alpha), abs(lam.beta))
        lam = ProjectiveEigenvalue(lam.alpha / s, lam.beta / s)
        x, y = eigenvectors_at(P, lam)
        out.append(EigenTriplet(lam, x, y))
    return out


def gamma_value(P: MatrixPolynomial, lam: ProjectiveEigenvalue,
                x: np.ndarray, y: np.ndarray) -> float:
    """``|y^* P'(lam) x| / sqrt(1 + |lam|^2 + ... + |lam|^(2d))``; 0 at infinity."""
    if lam.is_infinite:
        return 0.0
    z = lam.value
    r = abs(z)
    d = P.degree
    dp = derivative_evaluate_scaled(P, z)
    num = abs(np.vdot(y, dp @ x))
    # both numerator and the weight are divided by max(1, r)^d
    if r <= 1:
        w = np.sqrt(np.sum(r ** (2 * np.arange(d + 1))))
    else:
        w = np.sqrt(np.sum((1.0 / r) ** (2 * np.arange(d + 1))))
    return float(num / w)


def gamma(P: MatrixPolynomial, t: EigenTriplet) -> float:
    return gamma_value(P, t.lam, t.right_x, t.left_y)
