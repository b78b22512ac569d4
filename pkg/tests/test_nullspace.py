import json

import numpy as np
import pytest

from oracles import cofactor_det
from spep.matpoly import MatrixPolynomial
from spep.nullspace import (
    DegenerateProjectionError,
    MinimalBasis,
    kronecker_basis_vector,
    load_basis,
    poly_det,
    projected_basis_roots,
    simplicity_check,
    synthetic_right_basis,
)
from spep.problems import random_synthetic, synthetic_singular

PARABOLA = MinimalBasis.from_arrays([np.eye(3)])  # (1, lam, lam^2)^T


def test_poly_det_examples():
    G = MatrixPolynomial.from_coeffs([np.diag([-1.0, -2.0]), np.eye(2)])
    assert np.allclose(poly_det(G), [2, -3, 1])
    assert np.allclose(poly_det(MatrixPolynomial.from_coeffs([[[2.0, 1.0], [1.0, 3.0]]])), [5])
    G = MatrixPolynomial.from_coeffs([[[0, 1], [0, 0]], [[1, 0], [0, 1]]])
    assert np.allclose(poly_det(G), [0, 0, 1])


def test_poly_det_matches_cofactor_expansion():
    rng = np.random.default_rng(0)
    for _ in range(20):
        k = int(rng.integers(1, 4))
        d = int(rng.integers(0, 3))
        c = rng.standard_normal((d + 1, k, k)) + 1j * rng.standard_normal((d + 1, k, k))
        entries = [[list(c[:, i, j]) for j in range(k)] for i in range(k)]
        exact = cofactor_det(entries)
        got = poly_det(MatrixPolynomial(c))
        n = max(exact.size, got.size)
        exact, got = np.pad(exact, (0, n - exact.size)), np.pad(got, (0, n - got.size))
        assert np.max(np.abs(got - exact)) <= 1e-9 * np.max(np.abs(exact))


def test_projected_roots_parabola():
    roots = projected_basis_roots(PARABOLA, np.array([1.0, 0.0, 1.0]))
    assert np.allclose(np.sort_complex(roots), [-1j, 1j])
    assert simplicity_check(roots, [1, 0, 1])


def test_degenerate_projection():
    with pytest.raises(DegenerateProjectionError) as err:
        projected_basis_roots(PARABOLA, np.array([1.0, 0.0, 0.0]))
    assert err.value.degree == 0 and err.value.expected == 2


@pytest.mark.parametrize("roots, poly, simple", [
    ([1, -1], [-1, 0, 1], True),
    ([0, 0], [0, 0, 1], False),
    ([1j, -1j], [1, 0, 1], True),
])
def test_simplicity_examples(roots, poly, simple):
    assert simplicity_check(roots, poly, 1e-8) is simple


def test_kronecker_vector_annihilated():
    for eps in range(4):
        x = MatrixPolynomial(kronecker_basis_vector(eps)[:, :, None])
        L = np.zeros((2, eps, eps + 1))
        for i in range(eps):
            L[1, i, i] = L[0, i, i + 1] = 1
        if eps:
            assert MinimalBasis((x,)).annihilates(MatrixPolynomial(L))


def test_synthetic_basis_invariants():
    rng = np.random.default_rng(1)
    for _ in range(30):
        P, st = random_synthetic(rng, semisimple=False)
        S = synthetic_right_basis(st)
        assert S.k == st.k and S.M == st.M
        assert S.annihilates(P)
        assert S.is_column_reduced()
        assert S.has_full_rank_at(complex(*rng.standard_normal(2)))


def test_random_v_gives_m_simple_roots():
    _, st = synthetic_singular([1.0, 2.0], 1, (2, 1), (0, 1), seed=3)
    S = synthetic_right_basis(st)
    rng = np.random.default_rng(2)
    for _ in range(100):
        V = rng.standard_normal((S.n, S.k)) + 1j * rng.standard_normal((S.n, S.k))
        roots = projected_basis_roots(S, V)
        G = S.as_polynomial().transform(V.conj().T, np.eye(S.k))
        assert len(roots) == S.M and simplicity_check(roots, poly_det(G))


def test_lemma_combination_has_simple_roots():
    rng = np.random.default_rng(7)
    good = 0
    for _ in range(100):
        k = int(rng.integers(2, 4))
        common = rng.standard_normal(2) + 1j * rng.standard_normal(2)
        polys = []
        for _ in range(k):
            extra = rng.standard_normal(3) + 1j * rng.standard_normal(3)
            polys.append(np.polynomial.polynomial.polyfromroots(np.concatenate([common, extra])))
        s = rng.standard_normal(k) + 1j * rng.standard_normal(k)
        comb = sum(si * p for si, p in zip(s, polys))
        good += simplicity_check(np.polynomial.polynomial.polyroots(comb), comb)
    assert good >= 99


def test_load_basis(tmp_path):
    f = tmp_path / "b.json"
    f.write_text(json.dumps({"columns": [[[1, 0, 0], [0, [1, 0], 0], [0, 0, 1]]]}))
    S = load_basis(f)
    assert S.n == 3 and S.k == 1 and S.minimal_indices == (2,)


def test_basis_validation():
    with pytest.raises(ValueError):
        MinimalBasis(())
    with pytest.raises(ValueError):
        projected_basis_roots(PARABOLA, np.ones((2, 1)))
