"""Weighted undirected simple graphs and the structural queries used throughout.

Vertices are ``0..n-1``.  Edges are stored canonically: each row ``(u, v)`` has
``u < v`` and rows are sorted lexicographically, so two graphs with the same
edge set compare equal regardless of the order they were built from.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional, Sequence

import numpy as np

from hardcut.params import SrgParams


class GraphError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Graph:
    n: int
    edges: np.ndarray
    weights: np.ndarray
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: Iterable[Sequence[int]],
        weights: Optional[Iterable[float]] = None,
    ) -> "Graph":
        n = int(n)
        if n < 1:
            raise GraphError(f"vertex count must be positive, got {n}")
        e = np.asarray(list(edges) if not isinstance(edges, np.ndarray) else edges, dtype=np.int64)
        if e.size == 0:
            e = np.zeros((0, 2), dtype=np.int64)
        if e.ndim != 2 or e.shape[1] != 2:
            raise GraphError("edges must be a sequence of (u, v) pairs")
        if weights is None:
            w = np.ones(len(e), dtype=np.float64)
        else:
            w = np.asarray(list(weights) if not isinstance(weights, np.ndarray) else weights, dtype=np.float64)
            if w.shape != (len(e),):
                raise GraphError("one weight per edge required")
        if not np.all(np.isfinite(w)):
            raise GraphError("weights must be finite")
        if np.any(e < 0) or np.any(e >= n):
            raise GraphError("vertex index out of range")
        if np.any(e[:, 0] == e[:, 1]):
            raise GraphError("self-loops are not allowed")
        e = np.sort(e, axis=1)
        order = np.lexsort((e[:, 1], e[:, 0]))
        e, w = e[order], w[order]
        if len(e) > 1 and np.any(np.all(e[1:] == e[:-1], axis=1)):
            raise GraphError("duplicate edge")
        e.setflags(write=False)
        w.setflags(write=False)
        return cls(n, e, w)

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def is_unit_weight(self) -> bool:
        return bool(np.all(self.weights == 1.0))

    @property
    def total_weight(self) -> float:
        return float(self.weights.sum())

    @cached_property
    def degrees(self) -> np.ndarray:
        d = np.bincount(self.edges.ravel(), minlength=self.n)
        d.setflags(write=False)
        return d

    @cached_property
    def neighbors(self) -> tuple[frozenset, ...]:
        nbrs: list[set] = [set() for _ in range(self.n)]
        for u, v in self.edges.tolist():
            nbrs[u].add(v)
            nbrs[v].add(u)
        return tuple(frozenset(s) for s in nbrs)

    @cached_property
    def adjacency(self) -> tuple[tuple[tuple[int, float], ...], ...]:
        """Neighbor lists with weights, ``adjacency[u] = ((v, w_uv), ...)``."""
        lists: list[list] = [[] for _ in range(self.n)]
        for (u, v), w in zip(self.edges.tolist(), self.weights.tolist()):
            lists[u].append((v, w))
            lists[v].append((u, w))
        return tuple(tuple(sorted(l)) for l in lists)

    def adjacency_matrix(self, weighted: bool = True) -> np.ndarray:
        A = np.zeros((self.n, self.n))
        u, v = self.edges[:, 0], self.edges[:, 1]
        vals = self.weights if weighted else 1.0
        A[u, v] = vals
        A[v, u] = vals
        return A

    def csr(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """(indptr, indices, data) of the symmetric weighted adjacency."""
        A = self._cache.get("csr")
        if A is None:
            u = np.concatenate([self.edges[:, 0], self.edges[:, 1]])
            v = np.concatenate([self.edges[:, 1], self.edges[:, 0]])
            w = np.concatenate([self.weights, self.weights])
            order = np.lexsort((v, u))
            u, v, w = u[order], v[order], w[order]
            indptr = np.zeros(self.n + 1, dtype=np.int64)
            np.cumsum(np.bincount(u, minlength=self.n), out=indptr[1:])
            A = (indptr, v.astype(np.int64), w.astype(np.float64))
            self._cache["csr"] = A
        return A

    def with_weights(self, weights: Iterable[float]) -> "Graph":
        return Graph.from_edges(self.n, self.edges, np.asarray(list(weights), dtype=np.float64))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self.n == other.n
            and np.array_equal(self.edges, other.edges)
            and np.array_equal(self.weights, other.weights)
        )

    def __hash__(self) -> int:
        return hash((self.n, self.edges.tobytes(), self.weights.tobytes()))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m}, unit_weight={self.is_unit_weight})"


def cut_value(g: Graph, sides: Sequence[int]) -> float:
    """Total weight of edges whose endpoints lie on different sides (+1/-1)."""
    x = np.asarray(sides)
    if x.shape != (g.n,):
        raise GraphError(f"assignment has length {x.size}, graph has {g.n} vertices")
    if g.m == 0:
        return 0.0
    prod = x[g.edges[:, 0]] * x[g.edges[:, 1]]
    return float(0.5 * np.dot(g.weights, 1 - prod))


def _check_vertex(g: Graph, u: int) -> None:
    if not 0 <= u < g.n:
        raise GraphError(f"vertex {u} out of range for n={g.n}")


def common_neighbors(g: Graph, u: int, v: int) -> int:
    _check_vertex(g, u)
    _check_vertex(g, v)
    if u == v:
        raise GraphError("common_neighbors needs two distinct vertices")
    return len(g.neighbors[u] & g.neighbors[v])


def edge_common_neighbors(g: Graph) -> np.ndarray:
    """Common-neighbor count for every stored edge, in edge order."""
    if g.m == 0:
        return np.zeros(0, dtype=np.int64)
    if g.n <= 4096:
        A = g.adjacency_matrix(weighted=False).astype(np.int64)
        u, v = g.edges[:, 0], g.edges[:, 1]
        return np.einsum("ij,ij->i", A[u], A[v])
    nb = g.neighbors
    return np.array([len(nb[u] & nb[v]) for u, v in g.edges.tolist()], dtype=np.int64)


def check_regular(g: Graph) -> Optional[int]:
    d = g.degrees
    if np.all(d == d[0]):
        return int(d[0])
    return None


def check_srg(g: Graph) -> Optional[SrgParams]:
    """Return (n, k, lambda, mu) if ``g`` is strongly regular, else None."""
    k = check_regular(g)
    if k is None or k == 0 or k == g.n - 1:
        return None
    A = g.adjacency_matrix(weighted=False).astype(np.int64)
    A2 = A @ A
    off = ~np.eye(g.n, dtype=bool)
    adj = (A == 1) & off
    non = (A == 0) & off
    lam_vals = np.unique(A2[adj])
    mu_vals = np.unique(A2[non])
    if len(lam_vals) != 1 or len(mu_vals) != 1:
        return None
    return SrgParams(g.n, k, int(lam_vals[0]), int(mu_vals[0]))


def is_triangle_free(g: Graph) -> bool:
    return bool(np.all(edge_common_neighbors(g) == 0))


def is_connected(g: Graph) -> bool:
    seen = np.zeros(g.n, dtype=bool)
    stack = [0]
    seen[0] = True
    nb = g.neighbors
    while stack:
        u = stack.pop()
        for v in nb[u]:
            if not seen[v]:
                seen[v] = True
                stack.append(v)
    return bool(seen.all())


def complement(g: Graph) -> Graph:
    iu, iv = np.triu_indices(g.n, k=1)
    A = g.adjacency_matrix(weighted=False)
    keep = A[iu, iv] == 0
    return Graph.from_edges(g.n, np.column_stack([iu[keep], iv[keep]]))


def magnitude_range(g: Graph) -> float:
    """Spread in decades of the nonzero edge-weight magnitudes."""
    w = np.abs(g.weights[g.weights != 0])
    if w.size == 0:
        raise GraphError("magnitude range undefined: no nonzero weights")
    logs = np.log10(w)
    return float(logs.max() - logs.min())


def edge_profile(g: Graph) -> dict[tuple[int, int, int], int]:
    """Count edges by (d_u, d_v, lambda_uv) with d = degree - 1 and d_u <= d_v."""
    deg = g.degrees
    lam = edge_common_neighbors(g)
    du = deg[g.edges[:, 0]] - 1
    dv = deg[g.edges[:, 1]] - 1
    lo, hi = np.minimum(du, dv), np.maximum(du, dv)
    keys, counts = np.unique(np.column_stack([lo, hi, lam]), axis=0, return_counts=True)
    return {tuple(int(x) for x in k): int(c) for k, c in zip(keys, counts)}

