import numpy as np
import pytest

from oracles import chordal, chordal_matching
from spep.classify import extract_finite, label_candidates
from spep.kernel import SingularPencilError
from spep.matpoly import MatrixPolynomial, evaluate
from spep.pep import solve_regular
from spep.problems import ZGV_LAMBDAS, fixture, random_synthetic, synthetic_singular
from spep.singular import (
    AUGMENTATION,
    DEFAULT_DELTA,
    METHODS,
    PERTURBATION,
    PROJECTION,
    EmptyResultError,
    SolverConfig,
    build_augmented,
    build_perturbed,
    build_projected,
    method_name,
    normal_rank,
    run_method,
)
from spep.trials import match_error


def orthonormal_error(X):
    return np.linalg.norm(X.conj().T @ X - np.eye(X.shape[1]), 2)


def spectrum(P):
    return [np.inf if t.lam.is_infinite else t.lam.value for t in solve_regular(P)]


def test_solver_config_defaults():
    cfg = SolverConfig()
    assert cfg.tau == 1e-2 and cfg.rank_samples == 3 and cfg.rank_tol == 0
    assert [cfg.delta(m) for m in METHODS] == [1e-10, 1e-12, 1e-12]
    assert SolverConfig(delta_filter=1e-6).delta(PROJECTION) == 1e-6
    for bad in ({"tau": 0}, {"delta_filter": 2.0}, {"rank_samples": 0}, {"rank_tol": -1}):
        with pytest.raises(ValueError):
            SolverConfig(**bad)


@pytest.mark.parametrize("alias, name", [("perturb", PERTURBATION), ("2", PROJECTION),
                                         ("Augment", AUGMENTATION), ("projection", PROJECTION)])
def test_method_aliases(alias, name):
    assert method_name(alias) == name


def test_unknown_method():
    with pytest.raises(ValueError):
        method_name("newton")


@pytest.mark.parametrize("name, rank", [("kk", 1), ("bivariate-ex", 8), ("zh", 2), ("zgv-ex", 6),
                                        ("ksg-1", 5), ("ksg-2", 8), ("ksg-4", 8), ("ksg-5", 5)])
def test_normal_rank_of_fixtures(name, rank):
    P, truth = fixture(name)
    assert normal_rank(P, rng=np.random.default_rng(0)) == rank == truth.nrank


def test_normal_rank_identity():
    P = MatrixPolynomial.from_coeffs([np.eye(4), np.zeros((4, 4)), np.zeros((4, 4))])
    assert normal_rank(P) == 4


def test_perturbed_structure():
    P, _ = fixture("zgv-ex")
    rng = np.random.default_rng(2)
    Pt, b = build_perturbed(P, 2, rng=rng)
    assert Pt.shape == P.shape and Pt.degree == 2
    assert orthonormal_error(b.U) < 1e-13 and orthonormal_error(b.V) < 1e-13
    assert np.allclose(evaluate(Pt, 0), P[0] + b.tau * b.U @ b.Q[0] @ b.V.conj().T, rtol=0, atol=1e-15)
    assert b.W is None and b.Q1 is None
    assert len(spectrum(Pt)) == 16


def test_projected_structure():
    P, _ = fixture("bivariate-ex")
    P22, b = build_projected(P, 1, rng=np.random.default_rng(3))
    assert P22.shape == (8, 8) and len(spectrum(P22)) == 16
    for hat in (np.hstack([b.W, b.W_perp]), np.hstack([b.Z, b.Z_perp])):
        assert orthonormal_error(hat) < 1e-13
    P22, _ = build_projected(fixture("kk")[0], 2, rng=np.random.default_rng(3))
    assert P22.shape == (1, 1) and P22.degree == 5


def test_projection_of_zero_is_flagged_singular():
    Z = MatrixPolynomial(np.zeros((3, 3, 3)))
    with pytest.raises(SingularPencilError):
        run_method(Z, PROJECTION, k=1, rng=np.random.default_rng(0))


def test_projection_nothing_left():
    P, _ = fixture("kk")
    with pytest.raises(EmptyResultError):
        run_method(P, PROJECTION, k=3)


def test_augmented_structure():
    P, _ = fixture("zgv-ex")
    Pa, b = build_augmented(P, 2, rng=np.random.default_rng(4))
    assert Pa.shape == (10, 10) and len(spectrum(Pa)) == 20
    assert np.all(Pa.coeffs[:, 8:, 8:] == 0)
    assert np.array_equal(Pa.coeffs[:, :8, :8], P.coeffs)


@pytest.mark.parametrize("method", METHODS)
def test_zgv_finite_set(method):
    P, _ = fixture("zgv-ex")
    found = extract_finite(run_method(P, method, rng=np.random.default_rng(9)))
    assert len(found) == 6 and match_error(found, ZGV_LAMBDAS) < 1e-6


@pytest.mark.parametrize("method", METHODS)
def test_bivariate_finite_set(method):
    P, truth = fixture("bivariate-ex")
    found = extract_finite(run_method(P, method, rng=np.random.default_rng(9)))
    assert len(found) == 8 and match_error(found, truth.finite_eigenvalues) < 1e-6


@pytest.mark.parametrize("method", METHODS)
def test_zh_has_no_finite(method):
    P, _ = fixture("zh")
    assert extract_finite(run_method(P, method, rng=np.random.default_rng(9))).size == 0


@pytest.mark.parametrize("method", METHODS)
def test_candidate_invariants(method):
    P, _ = fixture("kk")
    for c in run_method(P, method, rng=np.random.default_rng(1)):
        assert min(c.alpha, c.beta, c.gamma) >= 0
        assert c.passed_filter == (max(c.alpha, c.beta) < DEFAULT_DELTA[method])


def test_tau_independence():
    rng = np.random.default_rng(8)
    for _ in range(10):
        P, st = random_synthetic(rng)
        P1, b = build_perturbed(P, st.k, SolverConfig(tau=1e-2), rng)
        P2, _ = build_perturbed(P, st.k, SolverConfig(tau=1.0), U=b.U, V=b.V, Q=b.Q)
        assert chordal_matching(spectrum(P1), spectrum(P2)) <= 1e-8


def test_q_independence_of_filtered_candidates():
    from spep.singular import candidates
    P, st = synthetic_singular([1.5, -0.5 + 1j], 1, (1,), (1,), seed=4, degree=2)
    rng = np.random.default_rng(12)
    P1, b1 = build_perturbed(P, 1, rng=rng)
    P2, b2 = build_perturbed(P, 1, rng=rng, U=b1.U, V=b1.V)
    delta = DEFAULT_DELTA[PERTURBATION]
    true1 = [c.lam for c in candidates(P, P1, b1, delta) if c.passed_filter]
    true2 = [c.lam for c in candidates(P, P2, b2, delta) if c.passed_filter]
    small1 = [np.inf if z.is_infinite else z.value for z in true1]
    small2 = [np.inf if z.is_infinite else z.value for z in true2]
    assert len(small1) == len(small2) == (st.n - st.k) * st.d - st.M - st.N
    assert chordal_matching(small1, small2) <= 1e-7


def test_prescribed_containment():
    rng = np.random.default_rng(13)
    for _ in range(10):
        P, st = random_synthetic(rng)
        Pt, b = build_perturbed(P, st.k, rng=rng)
        eigs = spectrum(Pt)
        for z in spectrum(b.Q):
            assert min(chordal(z, w) for w in eigs) <= 1e-8


def test_projection_equals_perturbation_without_prescribed():
    from spep.kernel import random_unitary
    rng = np.random.default_rng(21)
    for _ in range(10):
        P, st = random_synthetic(rng)
        n, k = st.n, st.k
        W_hat, Z_hat = random_unitary(n, rng), random_unitary(n, rng)
        P22, b = build_projected(P, k, W_hat=W_hat, Z_hat=Z_hat)
        Pt, bp = build_perturbed(P, k, rng=rng, U=b.W_perp, V=b.Z_perp)
        projected = spectrum(P22)
        perturbed = spectrum(Pt)
        for z in spectrum(bp.Q):
            j = int(np.argmin([chordal(z, w) for w in perturbed]))
            perturbed.pop(j)
        assert chordal_matching(projected, perturbed) <= 1e-8


def test_rectangular_input():
    # 3 x 4 pencil with one eigenvalue 2: append a random column to diag(lam - 2, 1, 1)
    rng = np.random.default_rng(5)
    base = np.zeros((2, 3, 4))
    base[0, :, :3] = np.diag([-2.0, 1.0, 1.0])
    base[1, 0, 0] = 1
    base[:, :, 3] = 0
    T = rng.standard_normal((3, 3))
    S = rng.standard_normal((4, 4))
    P = MatrixPolynomial(T @ base @ S)
    for method in METHODS:
        found = extract_finite(run_method(P, method, rng=np.random.default_rng(6)))
        assert found.size == 1 and abs(found[0] - 2) < 1e-10


@pytest.mark.parametrize("method", METHODS)
def test_balance_flag_gives_same_result(method):
    P, truth = fixture("ksg-1")
    for bal in (True, False):
        found = extract_finite(run_method(P, method, SolverConfig(balance=bal), np.random.default_rng(2)))
        assert match_error(found, truth.finite_eigenvalues) < 1e-10


def test_labels_for_zgv_perturbation():
    P, _ = fixture("zgv-ex")
    labels = [c.label for c in label_candidates(run_method(P, PERTURBATION, rng=np.random.default_rng(0)))]
    assert len(labels) == 16 and labels.count("prescribed") == 4


def test_augmentation_gamma_with_vanishing_leading_block():
    from spep.trials import trial_rng
    rng = trial_rng(1, 17)
    P, _ = fixture("kk", rng=rng)
    with np.errstate(invalid="raise", divide="raise"):
        cands = run_method(P, AUGMENTATION, rng=rng)
    assert all(np.isfinite(c.gamma) for c in cands)
