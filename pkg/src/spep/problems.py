"""Test problems: fixed benchmark singular polynomials, application builders, and a
synthetic generator with known eigenvalues and minimal indices."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

import numpy as np
import scipy.linalg as sla

from .matpoly import MatrixPolynomial, pad_degree


class UnknownFixtureError(KeyError):
    pass


@dataclass(frozen=True)
class GroundTruth:
    finite_eigenvalues: tuple
    nrank: int
    n_infinite: int | None = None
    notes: str = ""


@dataclass(frozen=True, eq=False)
class SyntheticStructure:
    regular_eigenvalues: tuple
    right_minimal_indices: tuple
    left_minimal_indices: tuple
    n: int
    d: int
    n_infinite: int
    T: np.ndarray = field(repr=False)
    S: np.ndarray = field(repr=False)
    R_offsets: tuple = field(repr=False, default=())

    @property
    def k(self) -> int:
        return len(self.right_minimal_indices)

    @property
    def M(self) -> int:
        return int(sum(self.right_minimal_indices))

    @property
    def N(self) -> int:
        return int(sum(self.left_minimal_indices))

    @property
    def nrank(self) -> int:
        return self.n - self.k


def from_entries(entries: Sequence[Sequence[Sequence[float]]]) -> MatrixPolynomial:
    """Build a polynomial from a table of scalar coefficient lists (low degree first)."""
    m, n = len(entries), len(entries[0])
    d = max(len(c) for row in entries for c in row) - 1
    coeffs = np.zeros((d + 1, m, n), dtype=complex)
    for i, row in enumerate(entries):
        for j, c in enumerate(row):
            coeffs[:len(c), i, j] = c
    return MatrixPolynomial(coeffs)


# ---------------------------------------------------------------- bivariate

def bivariate_qep(A1, B1, C1, A2, B2, C2) -> MatrixPolynomial:
    """Quadratic polynomial ``(A1 x C2 - C1 x A2) - lam (C1 x B2) + lam^2 (B1 x C2)``.

    Eliminates ``mu`` from the two-parameter problem
    ``(A1 + lam^2 B1 + mu C1) x = 0``, ``(A2 + lam B2 + mu C2) y = 0``.
    """
    A1, B1, C1, A2, B2, C2 = (np.asarray(a, dtype=complex) for a in (A1, B1, C1, A2, B2, C2))
    return MatrixPolynomial.from_coeffs([
        np.kron(A1, C2) - np.kron(C1, A2),
        -np.kron(C1, B2),
        np.kron(B1, C2),
    ])


# Determinantal representations of
#   p(lam^2, mu) = 1 + 2 lam^2 + 3 mu + 4 lam^4 + 5 lam^2 mu + 6 mu^2
#   q(lam, mu)   = 6 + 5 lam + 4 mu + 3 lam^2 + 2 lam mu + mu^2
BIVARIATE_EXAMPLE = {
    "A1": [[0, 2, 1], [3, 1, 0], [1, 0, 0]],
    "B1": [[0, 4, 0], [5, 0, -1], [0, 0, 0]],
    "C1": [[0, 0, 0], [6, 0, 0], [0, -1, 0]],
    "A2": [[0, 5, 1], [4, 6, 0], [1, 0, 0]],
    "B2": [[0, 3, 0], [2, 0, -1], [0, 0, 0]],
    "C2": [[0, 0, 0], [1, 0, 0], [0, -1, 0]],
}

BIVARIATE_LAMBDAS = (
    -0.658067 + 0.750641j, -0.658067 - 0.750641j,
    -1.332648 + 0.355433j, -1.332648 - 0.355433j,
    0.475211 + 1.902116j, 0.475211 - 1.902116j,
    2.765503 + 0.580944j, 2.765503 - 0.580944j,
)


def bivariate_example() -> MatrixPolynomial:
    """The 9 x 9 quadratic of the worked example, entered entry by entry.

    Entry (2, 4) is ``2 + 4 lam^2`` as produced by :func:`bivariate_qep`.
    """
    z = [0]
    e = [
        [z, z, z, z, z, z, z, z, z],
        [z, z, z, [2, 0, 4], z, z, [1], z, z],
        [z, z, z, z, [-2, 0, -4], z, z, [-1], z],
        [z, [-30, -18], [-6], z, z, z, z, z, z],
        [[-21, -12, 5], [-36], [0, 6], [1], z, z, [0, 0, -1], z, z],
        [[-6], [-3, 0, -5], z, z, [-1], z, z, [0, 0, 1], z],
        [z, z, z, z, [5, 3], [1], z, z, z],
        [[1], z, z, [4, 2], [6], [0, -1], z, z, z],
        [z, [-1], z, [1], z, z, z, z, z],
    ]
    return from_entries(e)


def random_bivariate_degree2(rng: np.random.Generator) -> MatrixPolynomial:
    """Quadratic from two random degree-2 bivariate polynomials.

    Uses the same 3 x 3 determinantal pattern as the worked example, with the
    six coefficients of each polynomial drawn at random.
    """
    def rep(c):
        c00, c10, c01, c20, c11, c02 = c
        A = [[0, c10, c00], [c01, 1, 0], [1, 0, 0]]
        B = [[0, c20, 0], [c11, 0, -1], [0, 0, 0]]
        C = [[0, 0, 0], [c02, 0, 0], [0, -1, 0]]
        return A, B, C

    A1, B1, C1 = rep(rng.standard_normal(6))
    A2, B2, C2 = rep(rng.standard_normal(6))
    return bivariate_qep(A1, B1, C1, A2, B2, C2)


def random_bivariate_degree3(rng: np.random.Generator) -> MatrixPolynomial:
    """Quadratic from two random degree-3 bivariate polynomials (25 x 25)."""
    A1, B1, C1 = cubic_representation(rng.standard_normal(10))
    A2, B2, C2 = cubic_representation(rng.standard_normal(10))
    return bivariate_qep(A1, B1, C1, A2, B2, C2)


def cubic_representation(c):
    """5 x 5 ``A + x B + y C`` whose determinant is the cubic with coefficients ``c``.

    ``c`` lists the coefficients of ``1, x, y, x^2, xy, y^2, x^3, x^2 y, x y^2,
    y^3``. Rows 1..4 have the kernel ``w = (1, x, x^2, y, y^2)`` and a constant
    unit minor, so the determinant is ``u(x, y) . w`` for the linear first row
    ``u``.
    """
    c00, c10, c01, c20, c11, c02, c30, c21, c12, c03 = np.asarray(c, dtype=float)
    A = np.zeros((5, 5)); B = np.zeros((5, 5)); C = np.zeros((5, 5))
    A[0, 0], B[0, 0], C[0, 0] = c00, c10, c01
    B[0, 1], C[0, 1] = c20, c11
    B[0, 2], C[0, 2] = c30, c21
    C[0, 3] = c02
    B[0, 4], C[0, 4] = c12, c03
    # x w0 - w1, x w1 - w2, y w0 - w3, y w3 - w4
    B[1, 0], A[1, 1] = 1, -1
    B[2, 1], A[2, 2] = 1, -1
    C[3, 0], A[3, 3] = 1, -1
    C[4, 3], A[4, 4] = 1, -1
    return A, B, C


# ---------------------------------------------------------------- ZGV points

def zgv_tilde(L0, L1, L2, M):
    """Block matrices of the differentiated waveguide equation."""
    L0, L1, L2, M = (np.asarray(a) * 1.0 for a in (L0, L1, L2, M))
    Z = np.zeros_like(L0)
    L2t = np.block([[L2, Z], [Z, L2]])
    L1t = np.block([[L1, Z], [2 * L2, L1]])
    L0t = np.block([[L0, Z], [L1, L0]])
    Mt = np.block([[M, Z], [Z, M]])
    return L0t, L1t, L2t, Mt


def zgv_qep(L0, L1, L2, M) -> MatrixPolynomial:
    """``2n^2 x 2n^2`` quadratic in ``lam = i k`` whose eigenvalues contain ZGV wavenumbers.

    ``Gamma_j = L_j (x) M~ - M (x) L~_j`` eliminates ``omega^2`` from the pair
    ``(lam^2 L2 + lam L1 + L0 + omega^2 M) u = 0`` and its differentiated,
    block-doubled counterpart acting on ``[u; u']``.
    """
    L0, L1, L2, M = (np.asarray(a) * 1.0 for a in (L0, L1, L2, M))
    L0t, L1t, L2t, Mt = zgv_tilde(L0, L1, L2, M)
    G = [np.kron(L, Mt) - np.kron(M, Lt) for L, Lt in ((L0, L0t), (L1, L1t), (L2, L2t))]
    return MatrixPolynomial.from_coeffs(G)


def zgv_frequencies(L0, L1, L2, M, kappa: float, tol: float = 1e-10):
    """Real frequencies at wavenumber ``kappa`` with their ZGV residuals.

    Solves ``((i kappa)^2 L2 + i kappa L1 + L0 + omega^2 M) u = 0`` for
    ``omega^2``, keeps the real non-negative ones, and returns a list of
    ``(omega, |u^* (2 i kappa L2 + L1) u|)`` with unit-norm ``u``, sorted by
    ``omega``. Raises ``ValueError`` for a numerically singular ``M``.
    """
    L0, L1, L2, M = (np.asarray(a, dtype=complex) for a in (L0, L1, L2, M))
    if np.linalg.cond(M) > 1 / (M.shape[0] * np.finfo(float).eps):
        raise ValueError("mass matrix M is numerically singular")
    ik = 1j * kappa
    K = ik ** 2 * L2 + ik * L1 + L0
    if np.allclose(K, K.conj().T) and np.allclose(M, M.conj().T):
        w2, U = sla.eigh(-K, M)
        w2 = w2.astype(complex)
    else:
        w2, U = sla.eig(-K, M)
    dK = 2 * ik * L2 + L1
    scale = max(1.0, float(np.max(np.abs(w2))))
    out = []
    for j, w in enumerate(w2):
        if abs(w.imag) > tol * scale or w.real < -tol * scale:
            continue
        u = U[:, j] / np.linalg.norm(U[:, j])
        res = abs(np.vdot(u, dK @ u))
        out.append((float(np.sqrt(max(w.real, 0.0))), float(res)))
    return sorted(out)


def zgv_points(L0, L1, L2, M, method: str = "projection", cfg=None, rng=None,
               kappa_tol: float = 1e-8, residual_tol: float = 1e-6):
    """ZGV points ``(omega, kappa)`` from the singular quadratic of :func:`zgv_qep`.

    Finite eigenvalues ``lam = i kappa`` with real ``kappa`` (imaginary part
    below ``kappa_tol (1 + |kappa|)``) are kept; at each such ``kappa`` every
    real frequency with ZGV residual at most ``residual_tol`` is returned.
    Repeated wavenumbers are merged.
    """
    from .classify import extract_finite
    from .singular import run_method

    lams = extract_finite(run_method(zgv_qep(L0, L1, L2, M), method, cfg, rng))
    kappas = []
    for lam in lams:
        kap = -1j * lam
        if abs(kap.imag) <= kappa_tol * (1 + abs(kap)):
            k = float(kap.real)
            if not any(abs(k - q) <= 1e-8 * (1 + abs(k)) for q in kappas):
                kappas.append(k)
    points = []
    for k in sorted(kappas):
        for w, r in zgv_frequencies(L0, L1, L2, M, k):
            if r <= residual_tol:
                points.append((w, k, r))
    return points


ZGV_EXAMPLE = {
    "L2": [[1, 1], [1, 2]],
    "L1": [[0, 3], [-3, 0]],
    "L0": [[-2, 1], [1, -2]],
    "M": [[3, 1], [1, 4]],
}

# finite eigenvalues lam = i k of the example
ZGV_LAMBDAS = (0j, 0j, 1.016018j, -1.016018j, 4.004034 + 0j, -4.004034 + 0j)
ZGV_POINTS = ((1.110602, 0.0), (0.470226, 0.0), (0.364791, 1.016018), (0.364791, -1.016018))


# ---------------------------------------------------------------- other examples

def kk_example() -> MatrixPolynomial:
    """Degree 5, 3 x 3, normal rank 1, single finite eigenvalue -1."""
    e = [
        [[1, 4, 5, 2], [-1, -3, -4, -3, -1], [0, -1, -2, -1]],
        [[-1, -2, 2, 5, 2], [1, 1, -1, -3, -3, -1], [0, 1, 0, -2, -1]],
        [[-1, -2, 1, 2], [1, 1, 0, -1, -1], [0, 1, 0, -1]],
    ]
    return from_entries(e)


def zh_example() -> MatrixPolynomial:
    """Degree 8, 3 x 3, normal rank 2, no finite and 14 infinite eigenvalues."""
    def mono(*powers, sign=1):
        c = [0] * (max(powers) + 1)
        for p in powers:
            c[p] = sign
        return c

    e = [
        [mono(2, 8), mono(1, 7), mono(4)],
        [mono(1, 7, sign=-1), mono(0, 6, sign=-1), mono(3, sign=-1)],
        [mono(4), mono(3), mono(0)],
    ]
    return from_entries(e)


def _orth_rand(n: int, rng: np.random.Generator) -> np.ndarray:
    # orthonormal basis of the range of a uniform(0, 1) matrix
    return sla.orth(rng.random((n, n)))


def _ladder_kcm(n: int, lams: Sequence[float]):
    K = np.zeros((n, n)); C = np.zeros((n, n)); M = np.zeros((n, n))
    for j, lj in enumerate(lams):
        M[j, j + 1] = 1
        C[j, j] = 1
        C[j, j + 1] = -lj
        K[j, j] = -lj
    return K, C, M


def _two_sided(coeffs, rng) -> MatrixPolynomial:
    n = coeffs[0].shape[0]
    W = _orth_rand(n, rng)
    Z = _orth_rand(n, rng)
    return MatrixPolynomial.from_coeffs([Z.T @ c @ W for c in coeffs])


def ksg1(rng):
    lams = [1 + 1e-5 * j for j in range(1, 6)]
    K, C, M = _ladder_kcm(8, lams)
    return _two_sided([K, C, M], rng), GroundTruth(tuple(lams), nrank=5)


def _ksg2_kcm():
    lams = [0.0] + [1.0 / j for j in range(2, 9)]
    return _ladder_kcm(11, lams), lams


def ksg2(rng):
    (K, C, M), lams = _ksg2_kcm()
    return _two_sided([K, C, M], rng), GroundTruth(tuple(lams), nrank=8)


def ksg3(rng):
    (K, C, M), _ = _ksg2_kcm()
    lams = [float(j + 1) for j in range(1, 8)]
    return _two_sided([M, C, K], rng), GroundTruth(tuple(lams), nrank=8)


def ksg4(rng, a: float = 2):
    (K, C, M), _ = _ksg2_kcm()
    D = np.diag([1, a**2, a, 1, a**3, 1, a**4, a**5, a**6, 1, 1]).astype(float)
    lams = [float(j + 1) for j in range(1, 8)]
    P = _two_sided([D @ M @ D, D @ C @ D, D @ K @ D], rng)
    return P, GroundTruth(tuple(lams), nrank=8, notes=f"a={a}")


def ksg5(rng, a: float = 1):
    n = 8
    K = np.zeros((n, n)); C = np.zeros((n, n)); M = np.zeros((n, n))
    for j in range(5):
        M[j, j + 1] = 1
        C[j, j] = 1
        C[j, j + 1] = -1
        K[j, j] = -1
    M[0, 2] = M[1, 3] = 1
    d = np.array([1, a**3, a**6, a**2, a**5, a, a**4, a**7], dtype=float)
    Dinv, D = np.diag(1 / d), np.diag(d)
    P = _two_sided([Dinv @ K @ D, Dinv @ C @ D, Dinv @ M @ D], rng)
    return P, GroundTruth((1.0, 1.0, 1.0, 1.0), nrank=5,
                          notes="eigenvalue 1, algebraic multiplicity 4, geometric 3")


def _fixed(builder, truth):
    def make(rng, **_):
        return builder(), truth
    return make


def _zgv_fixture(rng, **_):
    return zgv_qep(**ZGV_EXAMPLE), GroundTruth(ZGV_LAMBDAS, nrank=6, n_infinite=2)


def _kk_fixture(rng, **_):
    return kk_example(), GroundTruth((-1.0,), nrank=1)


def _zh_fixture(rng, **_):
    return zh_example(), GroundTruth((), nrank=2, n_infinite=14)


def _bivariate_fixture(rng, **_):
    return bivariate_example(), GroundTruth(BIVARIATE_LAMBDAS, nrank=8)


FIXTURES: Mapping[str, Callable] = {
    "bivariate-ex": _bivariate_fixture,
    "zgv-ex": _zgv_fixture,
    "ksg-1": lambda rng, **_: ksg1(rng),
    "ksg-2": lambda rng, **_: ksg2(rng),
    "ksg-3": lambda rng, **_: ksg3(rng),
    "ksg-4": lambda rng, a=2, **_: ksg4(rng, float(a)),
    "ksg-5": lambda rng, a=1, **_: ksg5(rng, float(a)),
    "kk": _kk_fixture,
    "zh": _zh_fixture,
}


def fixture(name: str, params: Mapping | None = None, rng=None):
    """``(P, GroundTruth)`` for a named test problem.

    ``params`` may hold ``a`` (ksg-4, ksg-5) and ``seed`` for the random
    orthogonal factors of the ksg problems; an explicit ``rng`` wins over
    ``seed``.
    """
    params = dict(params or {})
    key = name.strip().lower()
    # accept "ksg-4(8)" style names
    if "(" in key and key.endswith(")"):
        key, arg = key[:-1].split("(", 1)
        params.setdefault("a", float(arg.split("=")[-1]))
    if key not in FIXTURES:
        raise UnknownFixtureError(f"unknown fixture {name!r}; known: {sorted(FIXTURES)}")
    if rng is None:
        rng = np.random.default_rng(int(params.pop("seed", 0)))
    else:
        params.pop("seed", None)
    return FIXTURES[key](rng, **params)


# ---------------------------------------------------------------- synthetic

def _kronecker_block(eps: int) -> np.ndarray:
    """``eps x (eps+1)`` pencil rows ``lam e_i + e_{i+1}`` as a (2, eps, eps+1) array."""
    L = np.zeros((2, eps, eps + 1))
    for i in range(eps):
        L[1, i, i] = 1
        L[0, i, i + 1] = 1
    return L


def _well_conditioned(n: int, rng, cond: float = 100.0) -> np.ndarray:
    u, s, vh = np.linalg.svd(rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)))
    s = np.clip(s, s.max() / cond, None)
    return (u * s) @ vh


def synthetic_singular(reg_eigs: Sequence[complex], d_reg: int, eps: Sequence[int],
                       eta: Sequence[int], seed=None, degree: int | None = None):
    """Singular polynomial with prescribed eigenvalues and minimal indices.

    ``P = T diag(R, L_eps_1, ..., L_eps_k, L_eta_1^T, ..., L_eta_k^T) S`` where
    ``R`` is diagonal with entries ``prod (lam - lam_j)`` of degree at most
    ``d_reg`` holding ``reg_eigs``, ``L_e`` is the ``e x (e+1)`` block with rows
    ``lam e_i + e_{i+1}``, and ``T``, ``S`` are random with condition number at
    most 100. Returns ``(P, SyntheticStructure)``.
    """
    eps, eta = tuple(int(e) for e in eps), tuple(int(e) for e in eta)
    if len(eps) != len(eta) or len(eps) < 1:
        raise ValueError("need len(eps) == len(eta) >= 1")
    if d_reg < 1 and len(reg_eigs):
        raise ValueError("d_reg must be >= 1 when eigenvalues are prescribed")
    rng = np.random.default_rng(seed)
    d = max(d_reg, 1) if degree is None else degree
    if d < max(d_reg, 1):
        raise ValueError("degree must be at least max(d_reg, 1)")
    reg = list(reg_eigs)
    nR = -(-len(reg) // d_reg) if reg else 0
    groups = [reg[i::nR] for i in range(nR)] if nR else []
    rows = nR + sum(eps) + sum(e + 1 for e in eta)
    cols = nR + sum(e + 1 for e in eps) + sum(eta)
    if rows != cols:
        raise ValueError(f"blocks tile a {rows}x{cols} matrix, not a square one")
    n = rows
    Dc = np.zeros((d + 1, n, n), dtype=complex)
    n_inf = 0
    for i, g in enumerate(groups):
        c = np.polynomial.polynomial.polyfromroots(g) if g else np.array([1.0])
        Dc[:len(c), i, i] = c
        n_inf += d - (len(c) - 1)
    r0 = c0 = nR
    for e in eps:
        L = _kronecker_block(e)
        Dc[:2, r0:r0 + e, c0:c0 + e + 1] = L
        n_inf += (d - 1) * e
        r0 += e; c0 += e + 1
    for e in eta:
        L = _kronecker_block(e)
        Dc[:2, r0:r0 + e + 1, c0:c0 + e] = np.transpose(L, (0, 2, 1))
        n_inf += (d - 1) * e
        r0 += e + 1; c0 += e
    T = _well_conditioned(n, rng)
    S = _well_conditioned(n, rng)
    P = pad_degree(MatrixPolynomial(T @ Dc @ S), d)
    st = SyntheticStructure(tuple(complex(z) for z in reg), eps, eta, n, d, n_inf, T, S,
                            R_offsets=(nR,))
    return P, st


def random_synthetic(rng: np.random.Generator, max_n: int = 8, max_d: int = 3,
                     max_k: int = 2, max_index: int = 2, max_eigs: int = 3,
                     semisimple: bool = True):
    """Draw a random admissible ``synthetic_singular`` configuration and build it.

    Sizes stay within ``n <= max_n``, ``d <= max_d`` and ``k <= max_k``;
    eigenvalues are drawn uniformly from the square ``[-3, 3] x [-3, 3] i``.
    With ``semisimple`` every eigenvalue, infinity included, is semisimple:
    a Kronecker block padded to degree ``d`` carries the infinite divisor
    ``mu^(d-1)`` and a diagonal entry of degree ``e`` carries ``mu^(d-e)``, so
    those exponents are kept at most 1.
    """
    while True:
        d = int(rng.integers(1, max_d + 1))
        k = int(rng.integers(1, max_k + 1))
        top = max_index if not semisimple or d <= 2 else 0
        eps = [int(x) for x in rng.integers(0, top + 1, size=k)]
        eta = [int(x) for x in rng.integers(0, top + 1, size=k)]
        n_eigs = int(rng.integers(0, max_eigs + 1))
        d_reg = int(rng.integers(1, d + 1))
        n_r = -(-n_eigs // d_reg) if n_eigs else 0
        n = n_r + sum(eps) + sum(eta) + k
        if semisimple and n_r and n_eigs // n_r < d - 1:
            continue
        if 2 <= n <= max_n and k < n:
            break
    eigs = rng.uniform(-3, 3, n_eigs) + 1j * rng.uniform(-3, 3, n_eigs)
    return synthetic_singular(list(eigs), d_reg, eps, eta,
                              seed=int(rng.integers(1 << 31)), degree=d)
