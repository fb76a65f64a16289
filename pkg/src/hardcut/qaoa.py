"""Depth-1 QAOA for Max-Cut: the per-edge cut probability of an edge with
(d_u, d_v, lambda_uv), grid search over (gamma, beta), the triangle-free
closed form, Karloff limiting ratios, and an exact statevector oracle.

Throughout, ``d_u`` and ``d_v`` are the endpoint degrees minus one (the number
of *other* neighbours) and ``lam`` is the number of common neighbours.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Union

import numpy as np

from hardcut.families import (
    karloff_common_neighbors,
    karloff_degree,
    karloff_edge_count,
    karloff_maxcut,
)
from hardcut.graph import Graph, check_regular, edge_profile, is_triangle_free
from hardcut.params import DomainError, KarloffParams

STATEVECTOR_MAX_QUBITS = 24

EdgeProfile = Mapping[tuple[int, int, int], Union[int, float]]


@dataclass(frozen=True)
class GridSpec:
    gamma_points: int = 1000
    beta_points: int = 1000

    def __post_init__(self):
        if self.gamma_points < 2 or self.beta_points < 2:
            raise ValueError("grid needs at least 2 points per axis")

    @property
    def gammas(self) -> np.ndarray:
        return -math.pi / 2 + np.arange(self.gamma_points) * (math.pi / self.gamma_points)

    @property
    def betas(self) -> np.ndarray:
        return -math.pi / 4 + np.arange(self.beta_points) * ((math.pi / 2) / self.beta_points)

    @classmethod
    def parse(cls, text: str) -> "GridSpec":
        g, b = text.lower().split("x")
        return cls(int(g), int(b))


@dataclass(frozen=True)
class QaoaAngles:
    gamma: float
    beta: float
    value: float
    index: tuple[int, int] = (-1, -1)


def _fexp(k) -> float:
    """Exponent as float; astronomically large integer exponents become inf."""
    return float(k) if k < 2**1000 else math.inf


def _check_edge_args(du, dv, lam) -> None:
    if du < 0 or dv < 0:
        raise ValueError(f"d_u, d_v must be non-negative, got {du}, {dv}")
    if not 0 <= lam <= min(du, dv):
        raise ValueError(f"lambda_uv={lam} outside [0, min(d_u, d_v)]")


def _edge_terms(gamma, du, dv, lam):
    """(a, b) with p(gamma, beta) = 1/2 + a sin(4 beta) - b sin^2(2 beta)."""
    gamma = np.asarray(gamma, dtype=np.float64)
    c = np.cos(gamma)
    a = 0.25 * np.sin(gamma) * (np.power(c, _fexp(du)) + np.power(c, _fexp(dv)))
    if lam == 0:
        b = np.zeros_like(gamma)
    else:
        b = 0.25 * np.power(c, _fexp(du + dv - 2 * lam)) * (1 - np.power(np.cos(2 * gamma), _fexp(lam)))
    return a, b


def edge_cut_prob(gamma, beta, du: int, dv: int, lam: int):
    """Probability that depth-1 QAOA cuts an edge whose endpoints have
    ``du``/``dv`` other neighbours and ``lam`` common neighbours."""
    _check_edge_args(du, dv, lam)
    a, b = _edge_terms(gamma, du, dv, lam)
    beta = np.asarray(beta, dtype=np.float64)
    p = 0.5 + a * np.sin(4 * beta) - b * np.sin(2 * beta) ** 2
    if np.any(p < -1e-12) or np.any(p > 1 + 1e-12):
        raise ArithmeticError(f"cut probability outside [0, 1]: {p}")
    return float(p) if np.ndim(p) == 0 else p


def expected_cut_param(edge_count, du: int, dv: int, lam: int, gamma, beta):
    return edge_count * edge_cut_prob(gamma, beta, du, dv, lam)


def profile_expectation(profile: EdgeProfile, gamma, beta):
    """Expected cut of a unit-weight graph summarised by its edge profile."""
    total = 0.0
    for (du, dv, lam), count in profile.items():
        total = total + count * edge_cut_prob(gamma, beta, du, dv, lam)
    return total


def _as_profile(source) -> EdgeProfile:
    if isinstance(source, Graph):
        if not source.is_unit_weight:
            raise ValueError("the per-edge formula is valid for unit weights only; use the statevector path")
        return edge_profile(source)
    if isinstance(source, tuple) and len(source) == 4:
        count, du, dv, lam = source
        return {(du, dv, lam): count}
    return dict(source)


def grid_search(source, spec: Optional[GridSpec] = None, chunk: int = 256) -> QaoaAngles:
    """Exhaustive grid maximisation of F_1(gamma, beta).

    ``source`` is a unit-weight Graph, an edge profile ``{(du, dv, lam): count}``,
    or a homogeneous tuple ``(edge_count, du, dv, lam)``.  Ties go to the
    lexicographically smallest (i, j).
    """
    spec = spec or GridSpec()
    profile = _as_profile(source)
    for du, dv, lam in profile:
        _check_edge_args(du, dv, lam)
    gammas, betas = spec.gammas, spec.betas
    s4 = np.sin(4 * betas)
    s2 = np.sin(2 * betas) ** 2
    half = 0.5 * sum(profile.values())
    best = (-math.inf, -1, -1)
    for start in range(0, len(gammas), chunk):
        g = gammas[start:start + chunk]
        A = np.zeros_like(g)
        B = np.zeros_like(g)
        for (du, dv, lam), count in profile.items():
            a, b = _edge_terms(g, du, dv, lam)
            A += count * a
            B += count * b
        F = half + np.outer(A, s4) - np.outer(B, s2)
        k = int(np.argmax(F))
        i, j = divmod(k, len(betas))
        if F[i, j] > best[0]:
            best = (float(F[i, j]), start + i, j)
    value, i, j = best
    return QaoaAngles(float(gammas[i]), float(betas[j]), value, (i, j))


def triangle_free_factor(d) -> float:
    """d^(-1/2) ((d-1)/d)^((d-1)/2), evaluated in log space."""
    if d < 1:
        raise DomainError("degree must be at least 1")
    if d == 1:
        return 1.0
    log_d = math.log(d)
    if d < 2**50:
        expo = ((d - 1) / 2) * math.log1p(-1 / d)
    else:
        # ((d-1)/2) log(1 - 1/d) = -1/2 + 1/(4d) + O(d^-2)
        expo = -0.5 + 0.25 / float(d) if d < 2**1000 else -0.5
    return math.exp(-0.5 * log_d + expo)


def triangle_free_optimum(d, edge_count) -> float:
    """Optimal depth-1 expected cut of a d-regular triangle-free graph."""
    return edge_count / 2 * (1 + triangle_free_factor(d))


def triangle_free_optimum_graph(g: Graph) -> float:
    d = check_regular(g)
    if d is None or not is_triangle_free(g):
        raise ValueError("closed form needs a regular triangle-free graph")
    return triangle_free_optimum(d, g.m)


def karloff_f1_ratio(p: KarloffParams, spec: Optional[GridSpec] = None) -> float:
    """Depth-1 QAOA instance ratio F_1 / Max-Cut on J(m, m/2, b).

    Uses the triangle-free closed form when edges have no common neighbours,
    otherwise a grid search on the homogeneous per-edge probability.
    |E| / Max-Cut = 1 / (1 - 2b/m) is taken exactly, so huge m is fine.
    """
    if not p.in_formula_range:
        raise DomainError(f"Max-Cut formula unproven outside b < m/4 ({p.label})")
    if p.b == 0:
        return 1.0
    d = karloff_degree(p)
    lam = karloff_common_neighbors(p)
    edges_over_mc = float(Fraction(karloff_edge_count(p)) / karloff_maxcut(p))
    if lam == 0:
        return edges_over_mc / 2 * (1 + triangle_free_factor(d))
    best = grid_search((1, d - 1, d - 1, lam), spec)
    return edges_over_mc * best.value


def karloff_f1_angles(p: KarloffParams, spec: Optional[GridSpec] = None) -> QaoaAngles:
    """Grid-optimal angles and expected cut for a Karloff instance (float |E|)."""
    d = karloff_degree(p)
    lam = karloff_common_neighbors(p)
    best = grid_search((1, d - 1, d - 1, lam), spec)
    e = karloff_edge_count(p)
    return QaoaAngles(best.gamma, best.beta, e * best.value, best.index)


def limiting_ratio(r: float) -> float:
    """m -> infinity depth-1 ratio on Karloff graphs with b/m = r.

    Proven for r < 1/6 (triangle-free regime); an extrapolation on [1/6, 1/4).
    """
    if not 0 < r < 0.25:
        raise DomainError(f"r must lie in (0, 1/4), got {r}")
    return 1 / (2 - 4 * r)


def cut_diagonal(g: Graph) -> np.ndarray:
    """Cut value of every bitstring; bit i of the index is vertex i."""
    idx = np.arange(1 << g.n, dtype=np.int64)
    c = np.zeros(1 << g.n)
    for (u, v), w in zip(g.edges.tolist(), g.weights.tolist()):
        c += w * (((idx >> u) ^ (idx >> v)) & 1)
    return c


def qaoa_state(g: Graph, gamma: float, beta: float, diag: Optional[np.ndarray] = None) -> np.ndarray:
    """exp(-i beta sum X) exp(-i gamma C) |+>^n with C = sum w (1 - Z_u Z_v) / 2."""
    n = g.n
    if n > STATEVECTOR_MAX_QUBITS:
        raise ValueError(f"statevector limited to {STATEVECTOR_MAX_QUBITS} qubits, graph has {n}")
    c = cut_diagonal(g) if diag is None else diag
    psi = np.exp(-1j * gamma * c) / math.sqrt(1 << n)
    cb, sb = math.cos(beta), -1j * math.sin(beta)
    for q in range(n):
        view = psi.reshape(1 << (n - 1 - q), 2, 1 << q)
        a0 = view[:, 0, :].copy()
        a1 = view[:, 1, :]
        view[:, 0, :] = cb * a0 + sb * a1
        view[:, 1, :] = sb * a0 + cb * a1
    return psi


def statevector_expectation(g: Graph, gamma: float, beta: float) -> float:
    c = cut_diagonal(g)
    psi = qaoa_state(g, gamma, beta, c)
    return float(np.dot(np.abs(psi) ** 2, c))


@dataclass(frozen=True)
class QaoaReport:
    value: float
    gamma: float
    beta: float
    ratio: float


def qaoa_report(angles: QaoaAngles, maxcut: float) -> QaoaReport:
    if maxcut == 0:
        raise ZeroDivisionError("Max-Cut value is zero")
    return QaoaReport(angles.value, angles.gamma, angles.beta, angles.value / float(maxcut))
