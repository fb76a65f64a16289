"""Dense symmetric eigendecomposition and eigenspace embeddings.

The in-house solver is cyclic Jacobi with a round-robin (tournament) ordering:
each round rotates n/2 disjoint index pairs at once, so a round is a couple of
vectorised row/column updates and a sweep is n-1 rounds.  The result is
deterministic.  ``method="lapack"`` defers to ``numpy.linalg.eigh`` for
matrices beyond the Jacobi budget.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

JACOBI_MAX_SWEEPS = 100
DENSE_BUDGET = 2048
AUTO_JACOBI_LIMIT = 300


class EigenError(ArithmeticError):
    pass


@dataclass(frozen=True)
class Spectrum:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    sweeps: int = 0

    def distinct(self, tol: float) -> list[tuple[float, int]]:
        """Cluster eigenvalues closer than ``tol``; return (mean, multiplicity) pairs."""
        out: list[list[float]] = []
        for lam in self.eigenvalues.tolist():
            if out and lam - out[-1][-1] <= tol:
                out[-1].append(lam)
            else:
                out.append([lam])
        return [(float(np.mean(c)), len(c)) for c in out]


def _round_robin(n: int) -> list[tuple[np.ndarray, np.ndarray]]:
    """Tournament schedule: n-1 rounds of n/2 disjoint pairs covering every pair once."""
    players = list(range(n))
    rounds = []
    for _ in range(n - 1):
        half = n // 2
        p = np.array(players[:half])
        q = np.array(players[half:][::-1])
        rounds.append((np.minimum(p, q), np.maximum(p, q)))
        players = [players[0]] + [players[-1]] + players[1:-1]
    return rounds


def _off_norm(A: np.ndarray) -> float:
    off = A - np.diag(np.diag(A))
    return float(np.sqrt(np.sum(off * off)))


def jacobi_eigen(A: np.ndarray, tol: float | None = None, max_sweeps: int = JACOBI_MAX_SWEEPS) -> Spectrum:
    A = np.array(A, dtype=np.float64)
    n = A.shape[0]
    if n == 1:
        return Spectrum(A.diagonal().copy(), np.ones((1, 1)))
    scale = np.abs(A).max()
    if scale == 0:
        return Spectrum(np.zeros(n), np.eye(n))
    # work at unit scale so squared entries neither underflow nor overflow
    A /= scale
    tol = 1e-14 * n if tol is None else tol / scale
    pad = n % 2
    if pad:
        A = np.pad(A, ((0, 1), (0, 1)))
    N = A.shape[0]
    V = np.eye(N)
    schedule = _round_robin(N)
    sweeps = 0
    while _off_norm(A) > tol:
        if sweeps >= max_sweeps:
            raise EigenError(f"Jacobi did not converge in {max_sweeps} sweeps")
        sweeps += 1
        for p, q in schedule:
            apq = A[p, q]
            app = A[p, p]
            aqq = A[q, q]
            nz = np.abs(apq) > 1e-300
            tau = np.where(nz, (aqq - app) / (2 * np.where(nz, apq, 1.0)), 0.0)
            big = np.abs(tau) > 1e150
            safe = np.where(big, 1.0, tau)
            t = np.sign(safe) / (np.abs(safe) + np.sqrt(1 + safe * safe))
            t = np.where(big, 0.5 / np.where(big, tau, 1.0), t)
            t = np.where(tau == 0, 1.0, t)
            t = np.where(nz, t, 0.0)
            c = 1 / np.sqrt(1 + t * t)
            s = t * c
            # rows, then columns: A <- J^T A J
            Ap, Aq = A[p].copy(), A[q].copy()
            A[p] = c[:, None] * Ap - s[:, None] * Aq
            A[q] = s[:, None] * Ap + c[:, None] * Aq
            Ap, Aq = A[:, p].copy(), A[:, q].copy()
            A[:, p] = Ap * c - Aq * s
            A[:, q] = Ap * s + Aq * c
            A[p, q] = 0.0
            A[q, p] = 0.0
            Vp, Vq = V[:, p].copy(), V[:, q].copy()
            V[:, p] = Vp * c - Vq * s
            V[:, q] = Vp * s + Vq * c
    vals = A.diagonal() * scale
    if pad:
        # the padding coordinate stays decoupled: its eigenvector is e_N
        keep = np.argsort(np.abs(V[-1]))[:-1]
        vals, V = vals[keep], V[:-1, keep]
    order = np.argsort(vals, kind="stable")
    return Spectrum(vals[order], V[:, order], sweeps)


def _check_symmetric(A: np.ndarray, tol: float) -> None:
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise EigenError("matrix must be square")
    asym = np.abs(A - A.T).max() if A.size else 0.0
    if asym > tol:
        raise EigenError(f"matrix is not symmetric (max asymmetry {asym:.3g})")


def symmetric_eigen(A, tol: float | None = None, method: str = "auto") -> Spectrum:
    A = np.asarray(A, dtype=np.float64)
    n = A.shape[0]
    norm = np.abs(A).sum(axis=1).max() if A.size else 0.0
    if tol is None:
        tol = 1e-10 * n * max(norm, 1.0)
    _check_symmetric(A, tol)
    if n > DENSE_BUDGET:
        raise EigenError(f"dimension {n} exceeds the dense budget {DENSE_BUDGET}")
    if method == "auto":
        method = "jacobi" if n <= AUTO_JACOBI_LIMIT else "lapack"
    A = 0.5 * (A + A.T)
    if method == "jacobi":
        return jacobi_eigen(A)
    if method == "lapack":
        vals, vecs = np.linalg.eigh(A)
        return Spectrum(vals, vecs)
    raise ValueError(f"unknown method {method!r}")


def min_eigenvalue(A, tol: float | None = None, method: str = "auto") -> float:
    A = np.asarray(A, dtype=np.float64)
    if A.shape[0] > DENSE_BUDGET:
        from scipy.sparse.linalg import eigsh

        return float(eigsh(A, k=1, which="SA", return_eigenvectors=False)[0])
    if method == "auto" and A.shape[0] > AUTO_JACOBI_LIMIT:
        return float(np.linalg.eigvalsh(0.5 * (A + A.T))[0])
    return float(symmetric_eigen(A, tol, method).eigenvalues[0])


def eigenspace_embedding(A, target: float, tol: float | None = None, method: str = "auto") -> np.ndarray:
    """Unit vectors (one row per vertex) spanning the eigenspace of ``target``.

    Row i of the eigenvector block for ``target`` is rescaled to unit length.
    Eigenvalues within ``1e-6 * ||A||_inf`` of each other are treated as one.
    """
    A = np.asarray(A, dtype=np.float64)
    norm = max(np.abs(A).sum(axis=1).max(), 1.0)
    if tol is None:
        tol = 1e-6 * norm
    spec = symmetric_eigen(A, method=method)
    sel = np.abs(spec.eigenvalues - target) <= tol
    if not sel.any():
        raise EigenError(f"no eigenvalue within {tol:.3g} of {target}")
    block = spec.eigenvectors[:, sel]
    norms = np.linalg.norm(block, axis=1)
    if np.any(norms < 1e-12):
        bad = int(np.argmin(norms))
        raise EigenError(f"vertex {bad} has a zero projection onto the eigenspace")
    return block / norms[:, None]


def row_norm_spread(A, target: float) -> float:
    """max - min of projector row norms; zero for vertex-transitive inputs."""
    A = np.asarray(A, dtype=np.float64)
    spec = symmetric_eigen(A)
    sel = np.abs(spec.eigenvalues - target) <= 1e-6 * max(np.abs(A).sum(axis=1).max(), 1.0)
    norms = np.linalg.norm(spec.eigenvectors[:, sel], axis=1)
    return float(norms.max() - norms.min())
