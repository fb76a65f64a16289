import math
from math import comb

import numpy as np
import pytest
from hypothesis import given, strategies as st
from hypothesis.extra.numpy import arrays

from hardcut.data import load_srgs
from hardcut.families import karloff_generate
from hardcut.graph import Graph, check_srg
from hardcut.params import KarloffParams
from hardcut.spectral import (
    EigenError,
    eigenspace_embedding,
    jacobi_eigen,
    min_eigenvalue,
    row_norm_spread,
    symmetric_eigen,
)

from conftest import C5, K2

sym_matrices = st.integers(1, 12).flatmap(
    lambda n: arrays(np.float64, (n, n), elements=st.floats(-10, 10, allow_nan=False))
).map(lambda a: a + a.T)


def test_identity():
    assert symmetric_eigen(np.eye(3)).eigenvalues == pytest.approx([1, 1, 1])


def test_minus_identity():
    assert min_eigenvalue(-np.eye(4)) == pytest.approx(-1)


def test_rejects_asymmetric():
    with pytest.raises(EigenError):
        symmetric_eigen(np.array([[0.0, 1.0], [0.0, 0.0]]))


@given(sym_matrices)
def test_reconstruction_and_trace(A):
    s = jacobi_eigen(A)
    n = A.shape[0]
    norm = max(np.abs(A).sum(axis=1).max(), 1e-300)
    V, lam = s.eigenvectors, s.eigenvalues
    assert np.abs(V @ np.diag(lam) @ V.T - A).max() <= 1e-8 * norm
    assert np.abs(V.T @ V - np.eye(n)).max() <= 1e-10
    assert abs(lam.sum() - np.trace(A)) <= 1e-8 * n * norm


@given(sym_matrices)
def test_jacobi_matches_lapack(A):
    ours = jacobi_eigen(A).eigenvalues
    ref = np.linalg.eigvalsh(A)
    assert np.abs(ours - ref).max() <= 1e-9 * max(np.abs(A).max(), 1.0)


def test_odd_dimension_padding():
    s = jacobi_eigen(C5.adjacency_matrix())
    assert s.eigenvectors.shape == (5, 5)
    assert s.eigenvalues[-1] == pytest.approx(2)


def test_j631_min_eig(j631):
    assert min_eigenvalue(j631.adjacency_matrix(), method="jacobi") == pytest.approx(-3, abs=1e-8)


def test_j841_min_eig():
    g = karloff_generate(KarloffParams(8, 1))
    assert min_eigenvalue(g.adjacency_matrix(), method="jacobi") == pytest.approx(-8, abs=1e-8)


@pytest.mark.parametrize("m", [6, 8, 10])
def test_karloff_min_eig_formula(m):
    for b in range(m):
        if 4 * b >= m:
            break
        p = KarloffParams(m, b)
        want = comb(m // 2, b) ** 2 * (4 * b / m - 1)
        got = min_eigenvalue(karloff_generate(p).adjacency_matrix())
        assert abs(got - want) <= 1e-6 * abs(want)


def test_srg16_spectrum(srg16):
    for g in srg16:
        s = symmetric_eigen(g.adjacency_matrix())
        d = s.distinct(1e-6)
        assert [round(x, 8) for x, _ in d] == [-2, 2, 6]
        assert [k for _, k in d] == [9, 6, 1]


@pytest.mark.parametrize("t", [3, 5, 9])
def test_srg_spectrum_within_three_values(t):
    from hardcut.families import srg_eigenvalues

    for g in load_srgs(t):
        s = check_srg(g)
        xi1, xi2 = (float(x) for x in srg_eigenvalues(s))
        lam = symmetric_eigen(g.adjacency_matrix()).eigenvalues
        targets = np.array([s.k, xi1, xi2])
        assert np.abs(lam[:, None] - targets).min(axis=1).max() < 1e-8


def test_srg16_embedding(srg16):
    for g in srg16:
        X = eigenspace_embedding(g.adjacency_matrix(), -2)
        ip = np.einsum("ij,ij->i", X[g.edges[:, 0]], X[g.edges[:, 1]])
        assert np.abs(ip + 1 / 3).max() < 1e-8
        assert row_norm_spread(g.adjacency_matrix(), -2) < 1e-6


def test_c5_embedding():
    xi2 = (-1 - math.sqrt(5)) / 2
    X = eigenspace_embedding(C5.adjacency_matrix(), xi2)
    ip = np.einsum("ij,ij->i", X[C5.edges[:, 0]], X[C5.edges[:, 1]])
    assert ip == pytest.approx(np.full(5, xi2 / 2), abs=1e-10)


def test_k2_antipodal():
    X = eigenspace_embedding(K2.adjacency_matrix(), -1)
    assert X.shape == (2, 1)
    assert float(X[0] @ X[1]) == pytest.approx(-1)


def test_embedding_missing_eigenvalue():
    with pytest.raises(EigenError):
        eigenspace_embedding(K2.adjacency_matrix(), 0.5)


def test_zero_projection_reported():
    # isolated vertex 2 has no weight on the -1 eigenspace of the K2 block
    g = Graph.from_edges(3, [(0, 1)])
    with pytest.raises(EigenError, match="zero projection"):
        eigenspace_embedding(g.adjacency_matrix(), -1)
