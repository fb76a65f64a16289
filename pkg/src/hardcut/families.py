"""Instance families: Karloff graphs J(m, m/2, b), the q3t strongly-regular
parameter family, and seeded weight perturbations.

Integer quantities (degrees, common-neighbor counts, Max-Cut values) are exact
Python integers or Fractions so they can serve as certificates.
"""
from __future__ import annotations

import math
import warnings
from fractions import Fraction
from itertools import combinations

import numpy as np

from hardcut.graph import Graph
from hardcut.params import DomainError, KarloffParams, SrgParams

DEFAULT_VERTEX_BUDGET = 10_000


def _comb(a: int, c: int) -> int:
    if c < 0 or c > a or a < 0:
        return 0
    return math.comb(a, c)


def karloff_subsets(m: int) -> list[tuple[int, ...]]:
    """All (m/2)-subsets of range(m) in lexicographic order; index = vertex id."""
    return list(combinations(range(m), m // 2))


def subset_rank(subset, m: int) -> int:
    """Lexicographic rank of a sorted (m/2)-subset of range(m)."""
    t = m // 2
    rank, prev = 0, -1
    for pos, x in enumerate(sorted(subset)):
        for y in range(prev + 1, x):
            rank += math.comb(m - 1 - y, t - 1 - pos)
        prev = x
    return rank


def karloff_generate(p: KarloffParams, vertex_budget: int = DEFAULT_VERTEX_BUDGET) -> Graph:
    n = math.comb(p.m, p.half)
    if n > vertex_budget:
        raise DomainError(f"{p.label} has {n} vertices, over the budget of {vertex_budget}")
    subsets = karloff_subsets(p.m)
    M = np.zeros((n, p.m), dtype=np.int64)
    for i, s in enumerate(subsets):
        M[i, list(s)] = 1
    inter = M @ M.T
    iu, iv = np.nonzero(np.triu(inter == p.b, k=1))
    return Graph.from_edges(n, np.column_stack([iu, iv]))


def karloff_degree(p: KarloffParams) -> int:
    if p.b == p.half:
        # sharing all m/2 elements means the same subset: no edges
        return 0
    return math.comb(p.half, p.b) ** 2


def karloff_common_neighbors(p: KarloffParams) -> int:
    """Number of common neighbours shared by the endpoints of any edge."""
    h, b = p.half, p.b
    return sum(
        _comb(b, k) * _comb(h - b, b - k) ** 2 * _comb(b, h - 2 * b + k)
        for k in range(b + 1)
    )


def karloff_vertex_count(p: KarloffParams) -> int:
    return math.comb(p.m, p.half)


def karloff_edge_count(p: KarloffParams) -> int:
    return karloff_vertex_count(p) * karloff_degree(p) // 2


def karloff_maxcut(p: KarloffParams) -> Fraction:
    if not p.in_formula_range:
        raise DomainError(f"Max-Cut formula unproven outside b < m/4 ({p.label})")
    n = karloff_vertex_count(p)
    return Fraction(n, 2) * karloff_degree(p) * (1 - Fraction(2 * p.b, p.m))


def karloff_angle(p: KarloffParams) -> float:
    """Angle between adjacent vertices in the optimal SDP embedding."""
    return math.acos(4 * p.b / p.m - 1)


def karloff_gw_ratio(p: KarloffParams) -> float:
    if not p.in_formula_range:
        raise DomainError(f"GW ratio formula unproven outside b < m/4 ({p.label})")
    if p.b == 0:
        return 1.0
    return (karloff_angle(p) / math.pi) / (1 - 2 * p.b / p.m)


def gw_objective(theta: float) -> float:
    return (2 / math.pi) * theta / (1 - math.cos(theta))


def minimize_theta(tol: float = 1e-12) -> tuple[float, float]:
    """Minimiser and minimum of (2/pi) theta / (1 - cos theta) on (0, pi].

    Bisects on the sign of the numerator of the derivative,
    1 - cos(t) - t sin(t), which is negative at pi/2 and positive at pi.
    """
    lo, hi = math.pi / 2, math.pi
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if 1 - math.cos(mid) - mid * math.sin(mid) < 0:
            lo = mid
        else:
            hi = mid
    theta = 0.5 * (lo + hi)
    return theta, gw_objective(theta)


def worst_ratio_r() -> float:
    """The b/m ratio that minimises the GW ratio, (cos theta* + 1) / 4."""
    theta, _ = minimize_theta()
    return (math.cos(theta) + 1) / 4


def karloff_worst_b(m: int, floor: bool = False) -> int:
    if m < 12 or m % 2:
        raise DomainError(f"worst-case b needs even m >= 12, got {m}")
    x = worst_ratio_r() * m
    return math.floor(x) if floor else math.ceil(x)


def q3t_params(t: int) -> SrgParams:
    if t < 0:
        raise DomainError("t must be non-negative")
    return SrgParams(4 * (3 * t + 1), 3 * (t + 1), 2, t + 1)


def q3t_maxcut_bound(t: int) -> int:
    """The SDP optimum 2|E|/3 for the q3t family, exact."""
    s = q3t_params(t)
    return 2 * s.edge_count // 3


def srg_eigenvalues(s: SrgParams):
    """Non-principal eigenvalues (xi1, xi2), xi1 >= xi2.

    Returned as Fractions when the discriminant is a perfect square, floats otherwise.
    """
    a = s.lam - s.mu
    disc = a * a + 4 * (s.k - s.mu)
    if disc < 0:
        raise DomainError(f"parameters {tuple(s)} have no real eigenvalues")
    root = math.isqrt(disc)
    if root * root == disc:
        return Fraction(a + root, 2), Fraction(a - root, 2)
    sq = math.sqrt(disc)
    return (a + sq) / 2, (a - sq) / 2


def srg_multiplicities(s: SrgParams) -> tuple[float, float]:
    """Multiplicities of (xi1, xi2) from trace conditions: 1 + f + g = n, k + f xi1 + g xi2 = 0."""
    x1, x2 = (float(x) for x in srg_eigenvalues(s))
    g = (s.k + (s.n - 1) * x1) / (x1 - x2)
    return s.n - 1 - g, g


def perturb_weights(g: Graph, sigma: float, seed: int) -> Graph:
    """Same edges, weights drawn iid as 1 + sigma * Z with a PCG64 stream."""
    if sigma < 0:
        raise DomainError("sigma must be non-negative")
    if not g.is_unit_weight:
        warnings.warn("perturb_weights: input weights are not unit; they are replaced, not scaled")
    rng = np.random.Generator(np.random.PCG64(seed))
    z = rng.standard_normal(g.m)
    return g.with_weights(1.0 + sigma * z)
