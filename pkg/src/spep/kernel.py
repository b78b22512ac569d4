"""Dense numeric primitives: numerical rank, Haar unitaries, pencil eigenvalues."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla

EPS = np.finfo(float).eps


class SingularPencilError(np.linalg.LinAlgError):
    """The pencil handed to the eigensolver is (numerically) singular."""


@dataclass(frozen=True)
class ProjectiveEigenvalue:
    """Homogeneous eigenvalue ``lam = alpha / beta``; ``beta == 0`` is infinity."""

    alpha: complex
    beta: complex

    def __post_init__(self):
        if self.alpha == 0 and self.beta == 0:
            raise ValueError("(alpha, beta) = (0, 0) is not a projective point")

    @classmethod
    def finite(cls, lam: complex) -> "ProjectiveEigenvalue":
        return cls(complex(lam), 1.0 + 0j)

    @classmethod
    def infinity(cls) -> "ProjectiveEigenvalue":
        return cls(1.0 + 0j, 0j)

    @property
    def is_infinite(self) -> bool:
        return abs(self.beta) <= EPS * (abs(self.alpha) + abs(self.beta))

    @property
    def value(self) -> complex:
        """``alpha / beta``, or complex infinity."""
        if self.is_infinite:
            return complex(np.inf, 0.0)
        return complex(self.alpha / self.beta)


def chordal_distance(a: ProjectiveEigenvalue, b: ProjectiveEigenvalue) -> float:
    """Chordal distance between two projective points (0 <= chi <= 1)."""
    num = abs(a.alpha * b.beta - b.alpha * a.beta)
    den = np.hypot(abs(a.alpha), abs(a.beta)) * np.hypot(abs(b.alpha), abs(b.beta))
    return float(num / den)


def numerical_rank(A: np.ndarray, tol: float = 0.0) -> int:
    """Number of singular values strictly above ``tol``.

    ``tol = 0`` selects ``max(m, n) * eps * sigma_max``.
    """
    A = np.atleast_2d(A)
    if A.size == 0:
        return 0
    s = np.linalg.svd(A, compute_uv=False)
    if tol <= 0:
        tol = max(A.shape) * EPS * (s[0] if s.size else 0.0)
    return int(np.count_nonzero(s > tol))


def random_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed ``n x n`` unitary matrix.

    QR of a standard complex Gaussian matrix, with the phases of ``diag(R)``
    moved into ``Q`` so the distribution is exactly Haar.
    """
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    ph = np.where(d == 0, 1.0, d / np.abs(np.where(d == 0, 1.0, d)))
    return q * ph


def random_orthonormal(n: int, k: int, rng: np.random.Generator) -> np.ndarray:
    """``n x k`` matrix with orthonormal columns (first ``k`` Haar columns)."""
    return random_unitary(n, rng)[:, :k]


def complex_gaussian(shape, rng: np.random.Generator) -> np.ndarray:
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2)


def pencil_eigen(A: np.ndarray, B: np.ndarray,
                 singular_tol: float | None = None) -> list[ProjectiveEigenvalue]:
    """All eigenvalues of the pencil ``A + lam B`` in homogeneous form.

    Uses the QZ algorithm (LAPACK ``*ggev`` through SciPy). A pair with both
    ``|alpha| <= tol ||A||`` and ``|beta| <= tol ||B||`` means the
    generalized Schur form exposes a common null direction and the pencil is
    reported singular. ``singular_tol=None`` uses ``N * eps``; a negative value
    disables the check.
    """
    A = np.asarray(A, dtype=complex)
    B = np.asarray(B, dtype=complex)
    N = A.shape[0]
    if N == 0:
        return []
    w = sla.eigvals(A, B, homogeneous_eigvals=True)
    mu, nu = w[0], w[1]
    if singular_tol is None:
        singular_tol = N * EPS
    if singular_tol >= 0:
        na = np.linalg.norm(A, 1) or 1.0
        nb = np.linalg.norm(B, 1) or 1.0
        bad = (np.abs(mu) <= singular_tol * na) & (np.abs(nu) <= singular_tol * nb)
        if np.any(bad):
            raise SingularPencilError(
                f"pencil is singular: {int(bad.sum())} eigenvalue pair(s) with "
                "alpha ~ beta ~ 0")
    out = []
    for a, b in zip(mu, nu):
        # ggev solves A x = (a/b) B x, so the root of det(A + lam B) is -a/b.
        s = np.hypot(abs(a), abs(b))
        if s == 0:
            out.append(ProjectiveEigenvalue(0j, 1.0 + 0j))
            continue
        out.append(ProjectiveEigenvalue(complex(-a / s), complex(b / s)))
    return out


def smallest_singular_vectors(A: np.ndarray) -> tuple[np.ndarray, np.ndarray, float]:
    """Right and left singular vectors of the smallest singular value.

    Returns ``(x, y, sigma_min)`` with ``||A x|| = ||y^* A|| = sigma_min``.
    """
    A = np.atleast_2d(np.asarray(A, dtype=complex))
    u, s, vh = np.linalg.svd(A)
    x = vh[-1].conj()
    y = u[:, -1]
    return x, y, float(s[-1])
