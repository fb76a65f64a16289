"""Goemans-Williamson pipeline: SDP embeddings, hyperplane rounding, certificates.

The SDP is

    maximize   1/2 sum_{ij in E} w_ij (1 - Y_ij)   s.t.  Y_ii = 1, Y PSD

with dual

    minimize   W/2 + 1/4 sum_i zeta_i            s.t.  A_w + diag(zeta) PSD,

where W is the total edge weight and A_w the weighted adjacency matrix.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from hardcut.families import karloff_subsets, srg_eigenvalues
from hardcut.graph import Graph, check_srg, complement, is_connected
from hardcut.params import KarloffParams
from hardcut.spectral import eigenspace_embedding, min_eigenvalue


class EmbeddingError(ValueError):
    pass


@dataclass(frozen=True)
class Embedding:
    """One unit vector per vertex, stored as the rows of ``vectors``."""

    vectors: np.ndarray

    def __post_init__(self):
        X = np.asarray(self.vectors, dtype=np.float64)
        if X.ndim != 2 or X.shape[1] < 1:
            raise EmbeddingError("embedding must be an (n, d) array with d >= 1")
        norms = np.linalg.norm(X, axis=1)
        if np.any(np.abs(norms - 1) > 1e-8):
            raise EmbeddingError(f"vectors are not unit length (worst |norm-1| = {np.abs(norms - 1).max():.3g})")
        object.__setattr__(self, "vectors", X)

    @property
    def n(self) -> int:
        return self.vectors.shape[0]

    @property
    def dim(self) -> int:
        return self.vectors.shape[1]

    def gram(self) -> np.ndarray:
        return self.vectors @ self.vectors.T

    def edge_inner_products(self, g: Graph) -> np.ndarray:
        _check_dims(g, self)
        X = self.vectors
        return np.einsum("ij,ij->i", X[g.edges[:, 0]], X[g.edges[:, 1]])

    def to_text(self) -> str:
        return "".join(" ".join(f"{x:.17g}" for x in row) + "\n" for row in self.vectors.tolist())

    @classmethod
    def from_text(cls, text: str) -> "Embedding":
        rows = [[float(x) for x in line.split()] for line in text.splitlines() if line.strip()]
        return cls(np.array(rows))


def _check_dims(g: Graph, e: Embedding) -> None:
    if e.n != g.n:
        raise EmbeddingError(f"embedding has {e.n} vectors, graph has {g.n} vertices")


@dataclass(frozen=True)
class SdpCertificate:
    primal_value: Optional[float]
    dual_vector: np.ndarray
    dual_value: float
    min_eig_slack: float
    certified: bool = False
    iterations: int = 0

    @property
    def gap(self) -> float:
        return math.nan if self.primal_value is None else self.dual_value - self.primal_value

    @property
    def upper_bound(self) -> float:
        """A valid SDP (hence Max-Cut) upper bound even when the slack is negative.

        Shifting every zeta_i by -min_eig_slack restores feasibility.
        """
        n = len(self.dual_vector)
        return self.dual_value + 0.25 * n * max(0.0, -self.min_eig_slack)


def karloff_embedding(p: KarloffParams) -> Embedding:
    """Karloff's +-1/sqrt(m) vectors: coordinate i is + if i is in the subset."""
    subsets = karloff_subsets(p.m)
    X = -np.ones((len(subsets), p.m))
    for row, s in zip(X, subsets):
        row[list(s)] = 1.0
    return Embedding(X / math.sqrt(p.m))


def primal_value(g: Graph, e: Embedding) -> float:
    """SDP objective 1/2 sum w_ij (1 - x_i . x_j) at the embedding."""
    ip = e.edge_inner_products(g)
    return math.fsum((0.5 * g.weights * (1 - ip)).tolist())


def srg_embedding(g: Graph) -> Embedding:
    s = check_srg(g)
    if s is None:
        raise EmbeddingError("graph is not strongly regular")
    if not g.is_unit_weight:
        raise EmbeddingError("SRG embedding is defined for unit-weight graphs")
    if not (is_connected(g) and is_connected(complement(g))):
        raise EmbeddingError(f"SRG{tuple(s)} is imprimitive")
    _, xi2 = srg_eigenvalues(s)
    return Embedding(eigenspace_embedding(g.adjacency_matrix(), float(xi2)))


def srg_sdp_optimum(g: Graph) -> float:
    """Closed-form SDP optimum (|E|/2)(1 - xi2/k) of a strongly regular graph."""
    s = check_srg(g)
    if s is None:
        raise EmbeddingError("graph is not strongly regular")
    _, xi2 = srg_eigenvalues(s)
    return g.m / 2 * (1 - float(xi2) / s.k)


def hp_expectation(g: Graph, e: Embedding) -> float:
    """Expected weight cut by a uniformly random hyperplane through the origin."""
    ip = np.clip(e.edge_inner_products(g), -1.0, 1.0)
    return math.fsum((g.weights * np.arccos(ip) / math.pi).tolist())


def _rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.Generator(np.random.PCG64(seed))


def hyperplane_round(e: Embedding, seed=None) -> np.ndarray:
    r = _rng(seed).standard_normal(e.dim)
    return np.where(e.vectors @ r >= 0, 1, -1)


def rounding_samples(g: Graph, e: Embedding, samples: int, seed=None, batch: int = 8192) -> np.ndarray:
    """Cut values of ``samples`` independent hyperplane roundings."""
    _check_dims(g, e)
    rng = _rng(seed)
    u, v = g.edges[:, 0], g.edges[:, 1]
    out = np.empty(samples)
    done = 0
    while done < samples:
        k = min(batch, samples - done)
        R = rng.standard_normal((e.dim, k))
        S = np.where(e.vectors @ R >= 0, 1.0, -1.0)
        out[done:done + k] = 0.5 * g.weights @ (1 - S[u] * S[v])
        done += k
    return out


@dataclass
class BmOptions:
    rank: Optional[int] = None
    seed: int = 0
    max_iter: int = 50_000
    grad_tol: Optional[float] = None
    gap_tol: Optional[float] = None
    psd_tol: Optional[float] = None
    restarts: int = 1
    armijo: float = 1e-4
    n_budget: int = 2000
    extra: dict = field(default_factory=dict)


POLISH_LEVELS = 3


def bm_rank(n: int) -> int:
    return min(n, math.ceil(math.sqrt(2 * n)) + 1)


def _unit_rows(X: np.ndarray) -> np.ndarray:
    return X / np.linalg.norm(X, axis=1, keepdims=True)


def _riemannian_grad(A: np.ndarray, X: np.ndarray) -> np.ndarray:
    G = -0.5 * (A @ X)
    return G - np.sum(G * X, axis=1, keepdims=True) * X


def _bm_ascent(A: np.ndarray, W: float, X: np.ndarray, opts: BmOptions, grad_tol: float):
    def f(Y):
        return 0.5 * W - 0.25 * float(np.sum(Y * (A @ Y)))

    fx = f(X)
    norm_a = max(np.abs(A).sum(axis=1).max(), 1e-12)
    # steps near 2/|A| can reflect matched pairs onto each other indefinitely
    max_step = 1.5 / norm_a
    step = 1.0 / norm_a
    it = 0
    for it in range(1, opts.max_iter + 1):
        R = _riemannian_grad(A, X)
        gn2 = float(np.sum(R * R))
        if math.sqrt(gn2) <= grad_tol:
            return X, it, True
        step = min(2.0 * step, max_step)
        while True:
            Xn = _unit_rows(X + step * R)
            fn = f(Xn)
            if fn >= fx + opts.armijo * step * gn2:
                break
            step *= 0.5
            if step < 1e-14:
                # no ascent left that float64 can resolve
                return X, it, False
        X, fx = Xn, fn
    return X, it, False


def _row_polish(A: np.ndarray, X: np.ndarray, grad_tol: float, max_sweeps: int = 2000):
    """Exact coordinate ascent: x_i <- -(A X)_i / |(A X)_i|, one row at a time.

    Each update maximises the objective in x_i, so it needs no line search and
    keeps improving below the resolution of objective-value comparisons.
    """
    X = X.copy()
    AX = A @ X
    for sweep in range(1, max_sweeps + 1):
        for i in range(X.shape[0]):
            v = AX[i]
            nv = np.linalg.norm(v)
            if nv == 0:
                continue
            new = -v / nv
            delta = new - X[i]
            X[i] = new
            AX += np.outer(A[:, i], delta)
        AX = A @ X
        if np.linalg.norm(_riemannian_grad(A, X)) <= grad_tol:
            return X, sweep
    return X, max_sweeps


def dual_check(g: Graph, zeta) -> SdpCertificate:
    zeta = np.asarray(zeta, dtype=np.float64)
    if zeta.shape != (g.n,):
        raise ValueError(f"zeta must have length {g.n}")
    A = g.adjacency_matrix() + np.diag(zeta)
    slack = min_eigenvalue(A)
    z_d = 0.5 * g.total_weight + 0.25 * math.fsum(zeta.tolist())
    return SdpCertificate(None, zeta, z_d, slack)


def bm_solve(g: Graph, opts: Optional[BmOptions] = None) -> tuple[Embedding, SdpCertificate]:
    """Low-rank (Burer-Monteiro) solve of the GW SDP with a dual certificate.

    Riemannian gradient ascent on the product of unit spheres with Armijo
    backtracking.  The dual candidate is the row-wise stationarity multiplier
    zeta_i = -(A X)_i . x_i.
    """
    opts = opts or BmOptions()
    n = g.n
    if n > opts.n_budget:
        raise ValueError(f"n={n} exceeds the SDP budget {opts.n_budget}")
    A = g.adjacency_matrix()
    W = g.total_weight
    abs_w = float(np.abs(g.weights).sum())
    grad_tol = opts.grad_tol if opts.grad_tol is not None else 1e-7 * max(abs_w, 1e-300)
    psd_tol = opts.psd_tol if opts.psd_tol is not None else 1e-7 * max(np.abs(A).sum(axis=1).max(), 1.0)
    rank = opts.rank or bm_rank(n)
    rng = _rng(opts.seed)

    best = None
    for attempt in range(opts.restarts + 1):
        X = _unit_rows(rng.standard_normal((n, rank)))
        X, iters, _ = _bm_ascent(A, W, X, opts, grad_tol)
        for level in range(POLISH_LEVELS + 1):
            if level:
                # multiplier error tracks the gradient norm; a converged iterate
                # can still miss psd_tol, so polish to a tighter tolerance
                X, k = _row_polish(A, X, grad_tol * 1e-2 ** level)
                iters += k
            emb = Embedding(X)
            z_p = primal_value(g, emb)
            zeta = -np.sum((A @ X) * X, axis=1)
            cert = dual_check(g, zeta)
            gap_tol = opts.gap_tol if opts.gap_tol is not None else 1e-4 * max(1.0, z_p)
            ok = bool(cert.dual_value - z_p <= gap_tol and cert.min_eig_slack >= -psd_tol)
            if ok or cert.min_eig_slack < -1e3 * psd_tol:
                break
        cert = SdpCertificate(z_p, zeta, cert.dual_value, cert.min_eig_slack, ok, iters)
        if best is None or (ok and not best[1].certified) or (ok == best[1].certified and z_p > best[1].primal_value):
            best = (emb, cert)
        if ok:
            break
    return best


@dataclass(frozen=True)
class GwReport:
    hp: float
    ratio: float
    ratio_is_lower_bound: bool
    sdp_value: float


def gw_report(g: Graph, e: Embedding, maxcut: Optional[float] = None) -> GwReport:
    """Instance-specific GW ratio HP(x)/Max-Cut, or the bound HP(x)/z_P without Max-Cut."""
    hp = hp_expectation(g, e)
    z_p = primal_value(g, e)
    if maxcut is not None:
        if maxcut == 0:
            raise ZeroDivisionError("Max-Cut value is zero")
        return GwReport(hp, hp / float(maxcut), False, z_p)
    return GwReport(hp, hp / z_p, True, z_p)
