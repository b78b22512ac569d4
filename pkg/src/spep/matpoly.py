"""Dense complex matrix polynomials ``P(lam) = A_0 + lam A_1 + ... + lam^d A_d``."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np


@dataclass(frozen=True, eq=False)
class MatrixPolynomial:
    """Matrix polynomial stored as a ``(d+1, m, n)`` complex coefficient array.

    ``coeffs[i]`` multiplies ``lam**i``. Trailing zero coefficients are kept, so
    ``degree`` is the structural degree of the stored sequence.
    """

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=complex)
        if c.ndim != 3 or c.shape[0] < 1:
            raise ValueError(f"coefficients must have shape (d+1, m, n), got {c.shape}")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def from_coeffs(cls, coeffs: Sequence) -> "MatrixPolynomial":
        mats = [np.atleast_2d(np.asarray(a, dtype=complex)) for a in coeffs]
        shapes = {a.shape for a in mats}
        if len(shapes) != 1:
            raise ValueError(f"coefficient matrices differ in shape: {sorted(shapes)}")
        return cls(np.stack(mats))

    @property
    def degree(self) -> int:
        return self.coeffs.shape[0] - 1

    @property
    def nrows(self) -> int:
        return self.coeffs.shape[1]

    @property
    def ncols(self) -> int:
        return self.coeffs.shape[2]

    @property
    def shape(self) -> tuple[int, int]:
        return self.coeffs.shape[1:]

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __getitem__(self, i: int) -> np.ndarray:
        return self.coeffs[i]

    def __len__(self) -> int:
        return self.coeffs.shape[0]

    def __add__(self, other: "MatrixPolynomial") -> "MatrixPolynomial":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        d = max(self.degree, other.degree)
        return MatrixPolynomial(pad_degree(self, d).coeffs + pad_degree(other, d).coeffs)

    def __call__(self, lam: complex) -> np.ndarray:
        return evaluate(self, lam)

    def transform(self, left: np.ndarray, right: np.ndarray) -> "MatrixPolynomial":
        """Return ``left @ P(lam) @ right`` coefficient-wise."""
        return MatrixPolynomial(np.asarray(left) @ self.coeffs @ np.asarray(right))

    def __repr__(self) -> str:
        return f"MatrixPolynomial(m={self.nrows}, n={self.ncols}, degree={self.degree})"


def evaluate(P: MatrixPolynomial, lam: complex) -> np.ndarray:
    """Evaluate ``P(lam)`` by Horner's rule."""
    c = P.coeffs
    out = c[-1].copy()
    for i in range(P.degree - 1, -1, -1):
        out = out * lam + c[i]
    return out


def derivative_evaluate(P: MatrixPolynomial, lam: complex) -> np.ndarray:
    """Evaluate ``P'(lam) = sum_i i lam^(i-1) A_i`` by Horner's rule."""
    c = P.coeffs
    d = P.degree
    if d == 0:
        return np.zeros(P.shape, dtype=complex)
    out = d * c[d]
    for i in range(d - 1, 0, -1):
        out = out * lam + i * c[i]
    return out


def reversal(P: MatrixPolynomial) -> MatrixPolynomial:
    """``rev P(lam) = lam^d P(1/lam)``, i.e. the coefficient sequence reversed."""
    return MatrixPolynomial(P.coeffs[::-1])


def coefficient_norms(P: MatrixPolynomial) -> np.ndarray:
    """Spectral norms ``||A_i||_2`` of all coefficients."""
    return np.array([np.linalg.norm(a, 2) for a in P.coeffs])


def coefficient_norm_scale(P: MatrixPolynomial, abs_lam: float) -> float:
    """``||A_0|| + |lam| ||A_1|| + ... + |lam|^d ||A_d||`` with spectral norms."""
    norms = coefficient_norms(P)
    return float(np.polynomial.polynomial.polyval(abs_lam, norms))


def pad_degree(P: MatrixPolynomial, d: int) -> MatrixPolynomial:
    """Append zero coefficients so that the structural degree becomes ``d``."""
    if d < P.degree:
        raise ValueError(f"cannot pad degree {P.degree} down to {d}")
    if d == P.degree:
        return P
    extra = np.zeros((d - P.degree,) + P.shape, dtype=complex)
    return MatrixPolynomial(np.concatenate([P.coeffs, extra]))


def pad_square(P: MatrixPolynomial) -> MatrixPolynomial:
    """Append zero rows or columns to make ``P`` square."""
    m, n = P.shape
    s = max(m, n)
    c = np.zeros((P.degree + 1, s, s), dtype=complex)
    c[:, :m, :n] = P.coeffs
    return MatrixPolynomial(c)


def effective_degree(P: MatrixPolynomial) -> int:
    """Index of the last nonzero coefficient (0 for the zero polynomial)."""
    nz = [i for i in range(P.degree + 1) if np.any(P.coeffs[i])]
    return nz[-1] if nz else 0


# Scaled evaluation keeps high-degree polynomials finite at large |lam|: both
# helpers return the value divided by max(1, |lam|)^d.

def evaluate_scaled(P: MatrixPolynomial, lam: complex) -> np.ndarray:
    """``P(lam) / max(1, |lam|)^d`` evaluated without overflow."""
    if abs(lam) <= 1:
        return evaluate(P, lam)
    mu = 1.0 / lam
    phase = (lam / abs(lam)) ** P.degree
    return evaluate(reversal(P), mu) * phase


def derivative_evaluate_scaled(P: MatrixPolynomial, lam: complex) -> np.ndarray:
    """``P'(lam) / max(1, |lam|)^d`` evaluated without overflow."""
    if abs(lam) <= 1:
        return derivative_evaluate(P, lam)
    d = P.degree
    mu = 1.0 / lam
    # P'(lam) / lam^d = sum_i i A_i mu^(d-i+1)
    out = np.zeros(P.shape, dtype=complex)
    for i in range(1, d + 1):
        out = out + i * P.coeffs[i] * mu ** (d - i + 1)
    phase = (lam / abs(lam)) ** d
    return out * phase
