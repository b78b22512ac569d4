"""Minimal bases, determinants of projected bases and root simplicity.

These utilities check numerically that ``det(V^* S_R(lam))`` for a minimal
basis ``S_R`` of the right null space and a generic ``n x k`` matrix ``V`` has
exactly ``M`` simple roots, where ``M`` is the sum of the right minimal indices.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np
from numpy.polynomial import chebyshev as C
from numpy.polynomial import polynomial as Pn

from .kernel import numerical_rank
from .matpoly import MatrixPolynomial, effective_degree, evaluate

TRIM_TOL = 1e-12


class DegenerateProjectionError(ValueError):
    """``det(V^* S_R)`` has degree below ``M``: ``V`` is not generic."""

    def __init__(self, message: str, degree: int, expected: int, roots=()):
        super().__init__(message)
        self.degree = degree
        self.expected = expected
        self.roots = tuple(roots)


@dataclass(frozen=True)
class MinimalBasis:
    """Polynomial basis ``S_R(lam) = [x_1(lam) ... x_k(lam)]`` of a null space."""

    columns: tuple

    def __post_init__(self):
        cols = tuple(c if isinstance(c, MatrixPolynomial) else MatrixPolynomial.from_coeffs(c)
                     for c in self.columns)
        if not cols:
            raise ValueError("a minimal basis needs at least one column")
        n = cols[0].nrows
        for c in cols:
            if c.ncols != 1 or c.nrows != n:
                raise ValueError("columns must be n x 1 vector polynomials of equal n")
        object.__setattr__(self, "columns", cols)

    @classmethod
    def from_arrays(cls, arrays: Sequence) -> "MinimalBasis":
        """Each entry is a ``(m_i + 1, n)`` array of vector coefficients, low degree first."""
        cols = []
        for a in arrays:
            a = np.asarray(a, dtype=complex)
            if a.ndim == 1:
                a = a[None, :]
            cols.append(MatrixPolynomial(a[:, :, None]))
        return cls(tuple(cols))

    @property
    def n(self) -> int:
        return self.columns[0].nrows

    @property
    def k(self) -> int:
        return len(self.columns)

    @property
    def minimal_indices(self) -> tuple:
        return tuple(effective_degree(c) for c in self.columns)

    @property
    def M(self) -> int:
        return int(sum(self.minimal_indices))

    def as_polynomial(self) -> MatrixPolynomial:
        """The ``n x k`` matrix polynomial ``S_R``."""
        d = max(self.minimal_indices)
        c = np.zeros((d + 1, self.n, self.k), dtype=complex)
        for j, col in enumerate(self.columns):
            m = col.degree + 1
            c[:min(m, d + 1), :, j] = col.coeffs[:d + 1, :, 0]
        return MatrixPolynomial(c)

    def high_order_matrix(self) -> np.ndarray:
        """``[x_1^(m_1) ... x_k^(m_k)]``, the leading vector coefficients."""
        return np.column_stack([c.coeffs[m, :, 0]
                                for c, m in zip(self.columns, self.minimal_indices)])

    def is_column_reduced(self) -> bool:
        return numerical_rank(self.high_order_matrix()) == self.k

    def has_full_rank_at(self, lam: complex) -> bool:
        return numerical_rank(evaluate(self.as_polynomial(), lam)) == self.k

    def annihilates(self, P: MatrixPolynomial, tol: float = 1e-10) -> bool:
        """``P(lam) S_R(lam) = 0`` at a few points on the unit circle."""
        S = self.as_polynomial()
        for z in np.exp(2j * np.pi * np.array([0.1, 0.37, 0.81])):
            PS = evaluate(P, z) @ evaluate(S, z)
            scale = np.linalg.norm(evaluate(P, z)) * np.linalg.norm(evaluate(S, z))
            if np.linalg.norm(PS) > tol * max(scale, 1.0):
                return False
        return True


def poly_det(G: MatrixPolynomial) -> np.ndarray:
    """Monomial coefficients (low degree first) of ``det G(lam)``.

    Samples the determinant at Chebyshev points, interpolates in the Chebyshev
    basis and converts. High-degree coefficients below ``1e-12`` of the largest
    are dropped.
    """
    if not G.is_square or G.nrows < 1:
        raise ValueError("poly_det needs a square polynomial with k >= 1")
    D = G.nrows * G.degree
    if D == 0:
        return np.array([np.linalg.det(G.coeffs[0])])
    x = C.chebpts1(D + 1)
    vals = np.array([np.linalg.det(evaluate(G, t)) for t in x])
    coef = C.cheb2poly(C.chebfit(x, vals, D))
    return trim(coef)


def trim(coef, tol: float = TRIM_TOL) -> np.ndarray:
    coef = np.asarray(coef, dtype=complex)
    big = np.max(np.abs(coef)) if coef.size else 0.0
    if big == 0:
        return coef[:1] if coef.size else np.zeros(1, dtype=complex)
    keep = np.flatnonzero(np.abs(coef) > tol * big)
    return coef[:keep[-1] + 1]


def projected_basis_roots(S: MinimalBasis, V: np.ndarray) -> np.ndarray:
    """Roots of ``det(V^* S_R(lam))``.

    Raises :class:`DegenerateProjectionError` when the determinant has degree
    below ``M``; the roots that were found are attached to the exception.
    """
    V = np.asarray(V, dtype=complex)
    if V.ndim == 1:
        V = V[:, None]
    if V.shape != (S.n, S.k):
        raise ValueError(f"V must be {S.n} x {S.k}, got {V.shape}")
    G = S.as_polynomial().transform(V.conj().T, np.eye(S.k))
    coef = poly_det(G)
    roots = Pn.polyroots(coef) if coef.size > 1 else np.zeros(0, dtype=complex)
    if coef.size - 1 < S.M:
        raise DegenerateProjectionError(
            f"det(V^* S_R) has degree {coef.size - 1} < M = {S.M}",
            coef.size - 1, S.M, roots)
    return roots


def simplicity_check(roots, poly, tol: float = 1e-7) -> bool:
    """True when the roots are pairwise separated and ``p'`` is not small at any root."""
    roots = np.asarray(roots, dtype=complex)
    poly = np.asarray(poly, dtype=complex)
    if roots.size == 0:
        return True
    scale = 1.0 + float(np.max(np.abs(roots)))
    if roots.size > 1:
        diff = np.abs(roots[:, None] - roots[None, :])
        diff[np.diag_indices(roots.size)] = np.inf
        if diff.min() <= tol * scale:
            return False
    dp = Pn.polyder(poly)
    norm = float(np.linalg.norm(poly))
    return bool(np.all(np.abs(Pn.polyval(roots, dp)) > tol * norm))


def kronecker_basis_vector(eps: int) -> np.ndarray:
    """Null vector ``(1, -lam, lam^2, ...)`` of the block with rows ``lam e_i + e_(i+1)``.

    Returned as an ``(eps + 1, eps + 1)`` array of coefficients, low degree first.
    """
    c = np.zeros((eps + 1, eps + 1))
    for i in range(eps + 1):
        c[i, i] = (-1) ** i
    return c


def synthetic_right_basis(structure) -> MinimalBasis:
    """Minimal basis of the right null space of a ``synthetic_singular`` polynomial.

    Each right block ``L_eps`` contributes its null vector placed at the
    block's columns, mapped through ``S^{-1}``.
    """
    n = structure.n
    Sinv = np.linalg.inv(structure.S)
    col = structure.R_offsets[0] if structure.R_offsets else 0
    cols = []
    for e in structure.right_minimal_indices:
        v = np.zeros((e + 1, n), dtype=complex)
        v[:, col:col + e + 1] = kronecker_basis_vector(e)
        cols.append(v @ Sinv.T)
        col += e + 1
    return MinimalBasis.from_arrays(cols)


def load_basis(path) -> MinimalBasis:
    """Read ``{"columns": [[[re, im], ...] per coefficient, ...]}`` from JSON.

    Each column is a list of coefficient vectors (low degree first); each
    entry is ``[re, im]`` or a real number.
    """
    data = json.loads(Path(path).read_text())
    cols = []
    for col in data["columns"]:
        arr = np.array([[_complex(e) for e in vec] for vec in col], dtype=complex)
        cols.append(arr)
    return MinimalBasis.from_arrays(cols)


def _complex(e) -> complex:
    if isinstance(e, (list, tuple)):
        return complex(e[0], e[1])
    return complex(e)
