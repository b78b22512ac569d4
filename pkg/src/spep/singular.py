"""Regularizing transforms for singular matrix polynomials.

Each method turns a singular ``P`` into a regular polynomial whose spectrum
contains the eigenvalues of ``P`` plus fake ones, solves it, and attaches the
quantities that separate the two groups: ``alpha``/``beta`` (how far the right
and left eigenvectors are from the expected subspaces) and ``gamma`` (the
reciprocal of the weak condition number).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .kernel import (
    EPS,
    ProjectiveEigenvalue,
    complex_gaussian,
    numerical_rank,
    random_orthonormal,
    random_unitary,
)
from .matpoly import (
    MatrixPolynomial,
    coefficient_norm_scale,
    coefficient_norms,
    evaluate,
    evaluate_scaled,
    pad_square,
    reversal,
)
from .pep import EigenTriplet, gamma_value, parameter_scaling, solve_regular

PERTURBATION = "perturbation"
PROJECTION = "projection"
AUGMENTATION = "augmentation"
METHODS = (PERTURBATION, PROJECTION, AUGMENTATION)

_ALIASES = {
    "perturb": PERTURBATION, "perturbation": PERTURBATION, "1": PERTURBATION,
    "project": PROJECTION, "projection": PROJECTION, "2": PROJECTION,
    "augment": AUGMENTATION, "augmentation": AUGMENTATION, "3": AUGMENTATION,
}

DEFAULT_DELTA = {PERTURBATION: 1e-10, PROJECTION: 1e-12, AUGMENTATION: 1e-12}


class EmptyResultError(ValueError):
    """The projection would produce an empty (0 x 0) polynomial."""


def method_name(method: str) -> str:
    try:
        return _ALIASES[str(method).lower()]
    except KeyError:
        raise ValueError(f"unknown method {method!r}; expected one of {METHODS}") from None


@dataclass(frozen=True)
class SolverConfig:
    tau: float = 1e-2
    delta_filter: Optional[float] = None
    rank_samples: int = 3
    rank_tol: float = 0.0
    master_seed: int = 0
    balance: bool = True

    def __post_init__(self):
        if not self.tau > 0:
            raise ValueError("tau must be positive")
        if self.delta_filter is not None and not 0 < self.delta_filter < 1:
            raise ValueError("delta_filter must lie in (0, 1)")
        if self.rank_samples < 1:
            raise ValueError("rank_samples must be >= 1")
        if self.rank_tol < 0:
            raise ValueError("rank_tol must be non-negative")

    def delta(self, method: str) -> float:
        if self.delta_filter is not None:
            return self.delta_filter
        return DEFAULT_DELTA[method_name(method)]


@dataclass(frozen=True, eq=False)
class TransformBundle:
    """Random data defining one regularizing transform."""

    kind: str
    k: int
    tau: float = 0.0
    U: Optional[np.ndarray] = None
    V: Optional[np.ndarray] = None
    W: Optional[np.ndarray] = None
    Z: Optional[np.ndarray] = None
    W_perp: Optional[np.ndarray] = None
    Z_perp: Optional[np.ndarray] = None
    Q: Optional[MatrixPolynomial] = None
    Q1: Optional[MatrixPolynomial] = None
    Q2: Optional[MatrixPolynomial] = None


@dataclass(frozen=True, eq=False)
class CandidateEigenvalue:
    lam: ProjectiveEigenvalue
    gamma: float
    alpha: float
    beta: float
    right_x: np.ndarray
    left_y: np.ndarray
    threshold: float
    passed_filter: bool = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "passed_filter",
                           bool(max(self.alpha, self.beta) < self.threshold))

    @property
    def value(self) -> complex:
        return self.lam.value


def normal_rank(P: MatrixPolynomial, cfg: SolverConfig | None = None,
                rng: np.random.Generator | None = None) -> int:
    """Largest numerical rank of ``P`` over random points on the unit circle.

    The automatic tolerance (``rank_tol = 0``) is ``max(m, n) * eps`` times
    ``||A_0|| + ... + ||A_d||``, the size of the rounding error in ``P(zeta)``.
    A tolerance relative to ``sigma_max(P(zeta))`` would be too small whenever
    evaluation cancels.
    """
    cfg = cfg or SolverConfig()
    rng = rng if rng is not None else np.random.default_rng(cfg.master_seed)
    zetas = np.exp(2j * np.pi * rng.random(cfg.rank_samples))
    tol = cfg.rank_tol
    if tol <= 0:
        tol = max(P.shape) * EPS * coefficient_norm_scale(P, 1.0)
        if tol == 0:
            return 0
    return max(numerical_rank(evaluate(P, z), tol) for z in zetas)


def _random_poly(k: int, d: int, rng) -> MatrixPolynomial:
    return MatrixPolynomial(complex_gaussian((d + 1, k, k), rng))


def build_perturbed(P: MatrixPolynomial, k: int, cfg: SolverConfig | None = None,
                    rng=None, *, U=None, V=None, Q: MatrixPolynomial | None = None):
    """``P(lam) + tau U Q(lam) V^*`` with random orthonormal ``U, V`` (n x k)."""
    cfg = cfg or SolverConfig()
    rng = rng if rng is not None else np.random.default_rng(cfg.master_seed)
    n, d = P.nrows, P.degree
    if not P.is_square:
        raise ValueError("perturbation needs a square polynomial; pad it first")
    if not 0 <= k <= n:
        raise ValueError(f"k must lie in [0, {n}], got {k}")
    if U is None:
        U = random_orthonormal(n, k, rng)
    if V is None:
        V = random_orthonormal(n, k, rng)
    if Q is None:
        Q = _random_poly(k, d, rng)
    Pt = MatrixPolynomial(P.coeffs + cfg.tau * (U @ Q.coeffs @ V.conj().T))
    return Pt, TransformBundle(PERTURBATION, k, tau=cfg.tau, U=U, V=V, Q=Q)


def build_projected(P: MatrixPolynomial, k: int, cfg: SolverConfig | None = None,
                    rng=None, *, W_hat=None, Z_hat=None):
    """``W^* P(lam) Z`` with ``[W W_perp]``, ``[Z Z_perp]`` random unitary.

    For an ``m x n`` polynomial ``k`` is ``max(m, n) - nrank`` and the result is
    ``r x r`` with ``r = max(m, n) - k``.
    """
    cfg = cfg or SolverConfig()
    rng = rng if rng is not None else np.random.default_rng(cfg.master_seed)
    m, n = P.shape
    r = max(m, n) - k
    if r < 1:
        raise EmptyResultError(f"projection to size {r} leaves nothing to solve")
    if r > min(m, n):
        raise ValueError(f"cannot project a {m}x{n} polynomial to {r}x{r}")
    if W_hat is None:
        W_hat = random_unitary(m, rng)
    if Z_hat is None:
        Z_hat = random_unitary(n, rng)
    W, W_perp = W_hat[:, :r], W_hat[:, r:]
    Z, Z_perp = Z_hat[:, :r], Z_hat[:, r:]
    P22 = P.transform(W.conj().T, Z)
    return P22, TransformBundle(PROJECTION, k, W=W, Z=Z, W_perp=W_perp, Z_perp=Z_perp)


def build_augmented(P: MatrixPolynomial, k: int, cfg: SolverConfig | None = None,
                    rng=None, *, U=None, V=None, Q1=None, Q2=None):
    """``[[P, U Q1], [Q2 V^*, 0]]`` of size ``(n+k) x (n+k)``."""
    cfg = cfg or SolverConfig()
    rng = rng if rng is not None else np.random.default_rng(cfg.master_seed)
    n, d = P.nrows, P.degree
    if not P.is_square:
        raise ValueError("augmentation needs a square polynomial; pad it first")
    if k < 0:
        raise ValueError("k must be non-negative")
    if U is None:
        U = random_orthonormal(n, k, rng)
    if V is None:
        V = random_orthonormal(n, k, rng)
    if Q1 is None:
        Q1 = _random_poly(k, d, rng)
    if Q2 is None:
        Q2 = _random_poly(k, d, rng)
    c = np.zeros((d + 1, n + k, n + k), dtype=complex)
    c[:, :n, :n] = P.coeffs
    c[:, :n, n:] = U @ Q1.coeffs
    c[:, n:, :n] = Q2.coeffs @ V.conj().T
    return MatrixPolynomial(c), TransformBundle(AUGMENTATION, k, U=U, V=V, Q1=Q1, Q2=Q2)


def _relative_residual(P: MatrixPolynomial, lam: ProjectiveEigenvalue):
    """Scaled ``P(lam)`` and the matching coefficient-norm scale.

    Both are divided by ``max(1, |lam|)^d`` so their ratio equals
    ``P(lam) / (||A_0|| + ... + |lam|^d ||A_d||)``; at infinity ``A_d`` and
    ``||A_d||`` are used.
    """
    if lam.is_infinite:
        Ad = reversal(P).coeffs[0]
        return Ad, coefficient_norms(P)[-1]
    z = lam.value
    r = abs(z)
    d = P.degree
    if r <= 1:
        return evaluate(P, z), coefficient_norm_scale(P, r)
    norms = coefficient_norms(P)
    scale = float(np.sum(norms * (1.0 / r) ** (d - np.arange(d + 1))))
    return evaluate_scaled(P, z), scale


def candidates(P: MatrixPolynomial, transformed: MatrixPolynomial,
               bundle: TransformBundle, delta: float,
               triplets: list[EigenTriplet] | None = None,
               singular_tol: float | None = None) -> list[CandidateEigenvalue]:
    """Solve the transformed problem and attach ``alpha``, ``beta``, ``gamma``.

    ``P`` is the (square-padded, for perturbation and augmentation) original
    polynomial. For projection ``alpha`` and ``beta`` are reported relative to
    ``||A_0|| + |lam| ||A_1|| + ... + |lam|^d ||A_d||`` so every method filters
    on ``max(alpha, beta) < delta``.
    """
    if triplets is None:
        triplets = solve_regular(transformed, singular_tol=singular_tol)
    n = P.ncols
    out = []
    for t in triplets:
        x, y = t.right_x, t.left_y
        if bundle.kind == PERTURBATION:
            a = np.linalg.norm(bundle.V.conj().T @ x)
            b = np.linalg.norm(bundle.U.conj().T @ y)
            g = gamma_value(P, t.lam, x, y)
        elif bundle.kind == PROJECTION:
            Zx = bundle.Z @ x
            Wy = bundle.W @ y
            Ps, scale = _relative_residual(P, t.lam)
            scale = scale if scale > 0 else 1.0
            a = np.linalg.norm(bundle.W_perp.conj().T @ (Ps @ Zx)) / scale
            b = np.linalg.norm((Wy.conj() @ Ps) @ bundle.Z_perp) / scale
            g = gamma_value(P, t.lam, Zx, Wy)
        elif bundle.kind == AUGMENTATION:
            a = np.linalg.norm(x[n:])
            b = np.linalg.norm(y[n:])
            g = gamma_value(P, t.lam, x[:n], y[:n])
        else:
            raise ValueError(f"unknown transform kind {bundle.kind!r}")
        out.append(CandidateEigenvalue(t.lam, float(g), float(a), float(b), x, y, delta))
    return out


def run_method(P: MatrixPolynomial, method: str, cfg: SolverConfig | None = None,
               rng: np.random.Generator | None = None, k: int | None = None,
               return_bundle: bool = False, singular_tol: float | None = None):
    """Eigenvalue candidates of a singular polynomial by one of three transforms.

    ``k`` defaults to ``size - normal_rank(P)``. Rectangular inputs are padded
    with zero rows or columns for perturbation and augmentation; projection
    maps them directly to ``nrank x nrank``. Every candidate is returned with
    ``passed_filter`` set; pass the result to :func:`spep.classify.extract_finite`
    to drop the infinite ones.

    Raises :class:`~spep.kernel.SingularPencilError` when the transformed
    polynomial is still singular (typically an over-estimated normal rank) and
    :class:`EmptyResultError` when projection leaves nothing. A negative
    ``singular_tol`` skips the singularity test and returns whatever QZ
    produces, which is what :func:`rank_diagnostic` inspects.
    """
    method = method_name(method)
    cfg = cfg or SolverConfig()
    rng = rng if rng is not None else np.random.default_rng(cfg.master_seed)
    size = max(P.shape)
    if k is None:
        k = size - normal_rank(P, cfg, rng)
    base = P if method == PROJECTION else pad_square(P)
    g = 1.0
    work = base
    if cfg.balance:
        work, g = parameter_scaling(base)
    if method == PROJECTION:
        Pt, bundle = build_projected(work, k, cfg, rng)
    else:
        builder = build_perturbed if method == PERTURBATION else build_augmented
        Pt, bundle = builder(work, k, cfg, rng)
    cands = candidates(work, Pt, bundle, cfg.delta(method), singular_tol=singular_tol)
    if work is not base:
        cands = [_unscale(base, c, g, bundle) for c in cands]
    if return_bundle:
        return cands, bundle, Pt
    return cands


def _unscale(P: MatrixPolynomial, c: CandidateEigenvalue, g: float,
             bundle: TransformBundle) -> CandidateEigenvalue:
    """Map a candidate of ``P(g mu)`` back to ``lam = g mu``; alpha, beta are unchanged."""
    lam = c.lam
    s = np.hypot(abs(lam.alpha) * g, abs(lam.beta))
    lam = ProjectiveEigenvalue(lam.alpha * g / s, lam.beta / s)
    x, y = c.right_x, c.left_y
    if bundle.kind == PROJECTION:
        x, y = bundle.Z @ x, bundle.W @ y
    elif bundle.kind == AUGMENTATION:
        n = P.nrows
        x, y = x[:n], y[:n]
    gam = gamma_value(P, lam, x, y)
    return CandidateEigenvalue(lam, float(gam), c.alpha, c.beta, c.right_x, c.left_y, c.threshold)
