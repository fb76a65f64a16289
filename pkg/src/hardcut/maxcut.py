"""Exact and heuristic Max-Cut, plus the bound-meets-cut certificate.

``brute_force`` enumerates all 2^(n-1) bipartitions with vertex 0 pinned to
side +1, walking a binary reflected Gray code so each step flips one vertex
and updates the cut in O(degree).  ``local_search`` is a seeded multi-start
1-flip tabu search.  Both inner loops are compiled with numba.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Optional, Union

import numba
import numpy as np

from hardcut.graph import Graph, cut_value

BRUTE_FORCE_MAX_N = 26

EXACT = "exact"
CERTIFIED = "certified"
HEURISTIC = "heuristic"


class MaxCutError(ValueError):
    pass


class InconsistentBoundError(ArithmeticError):
    """A cut beat an upper bound: something upstream is wrong."""


@dataclass(frozen=True)
class MaxCutResult:
    best_cut: np.ndarray
    value: float
    upper_bound: Optional[Fraction] = None
    status: str = HEURISTIC

    @property
    def gap(self) -> Optional[float]:
        return None if self.upper_bound is None else float(self.upper_bound) - self.value


@numba.njit(cache=True)
def _gray_walk(n, indptr, indices, w, checkpoints):
    sides = np.ones(n, dtype=np.int8)
    value = 0.0
    best = 0.0
    best_k = 0
    total = np.int64(1) << (n - 1)
    ck_val = np.empty(checkpoints.size)
    c = 0
    while c < checkpoints.size and checkpoints[c] == 0:
        ck_val[c] = 0.0
        c += 1
    for k in range(1, total):
        # the Gray code changes bit ctz(k), i.e. vertex ctz(k) + 1
        bit = 0
        kk = k
        while (kk & 1) == 0:
            kk >>= 1
            bit += 1
        v = bit + 1
        sv = sides[v]
        delta = 0.0
        for p in range(indptr[v], indptr[v + 1]):
            # edge becomes cut iff its endpoints were on the same side
            if sides[indices[p]] == sv:
                delta += w[p]
            else:
                delta -= w[p]
        sides[v] = -sv
        value += delta
        if value > best:
            best = value
            best_k = k
        while c < checkpoints.size and checkpoints[c] == k:
            ck_val[c] = value
            c += 1
    return best, best_k, total, ck_val


def gray_sides(n: int, k: int) -> np.ndarray:
    """Assignment visited at Gray-code step ``k``: vertex i+1 is -1 iff bit i of k ^ (k >> 1)."""
    code = k ^ (k >> 1)
    sides = np.ones(n, dtype=np.int8)
    for i in range(n - 1):
        if (code >> i) & 1:
            sides[i + 1] = -1
    return sides


@dataclass(frozen=True)
class GrayTrace:
    states: int
    checkpoints: np.ndarray
    values: np.ndarray


def brute_force(g: Graph, checkpoints=None) -> MaxCutResult:
    """Exact Max-Cut; ``checkpoints`` (sorted step indices) also returns a GrayTrace."""
    result, _ = _brute_force(g, checkpoints)
    return result


def brute_force_traced(g: Graph, checkpoints) -> tuple[MaxCutResult, GrayTrace]:
    return _brute_force(g, checkpoints)


def _brute_force(g: Graph, checkpoints):
    n = g.n
    if n > BRUTE_FORCE_MAX_N:
        raise MaxCutError(f"brute force limited to n <= {BRUTE_FORCE_MAX_N}, got {n}")
    if n == 1:
        sides = np.ones(1, dtype=np.int8)
        return MaxCutResult(sides, 0.0, status=EXACT), GrayTrace(1, np.zeros(0, np.int64), np.zeros(0))
    indptr, indices, w = g.csr()
    ck = np.sort(np.asarray(checkpoints if checkpoints is not None else [], dtype=np.int64))
    best, best_k, total, ck_val = _gray_walk(n, indptr, indices, w, ck)
    sides = gray_sides(n, int(best_k))
    value = cut_value(g, sides)
    return MaxCutResult(sides, value, status=EXACT), GrayTrace(int(total), ck, ck_val)


@numba.njit(cache=True)
def _tabu(n, indptr, indices, w, sides, perm, tenure, max_stall):
    gain = np.zeros(n)
    value = 0.0
    for v in range(n):
        for p in range(indptr[v], indptr[v + 1]):
            u = indices[p]
            if sides[u] == sides[v]:
                gain[v] += w[p]
            else:
                gain[v] -= w[p]
                if u > v:
                    value += w[p]
    best = value
    best_sides = sides.copy()
    tabu_until = np.zeros(n, dtype=np.int64)
    it = 0
    stall = 0
    while stall < max_stall:
        it += 1
        pick = -1
        pick_gain = -np.inf
        for idx in range(n):
            v = perm[idx]
            g = gain[v]
            allowed = tabu_until[v] < it or value + g > best + 1e-12
            if allowed and g > pick_gain:
                pick = v
                pick_gain = g
        if pick < 0:
            break
        sv = sides[pick]
        sides[pick] = -sv
        value += pick_gain
        gain[pick] = -pick_gain
        for p in range(indptr[pick], indptr[pick + 1]):
            u = indices[p]
            # u now agrees with pick iff it disagreed before
            if sides[u] == sides[pick]:
                gain[u] += 2 * w[p]
            else:
                gain[u] -= 2 * w[p]
        if pick_gain <= 0:
            tabu_until[pick] = it + tenure
        if value > best + 1e-12:
            best = value
            best_sides[:] = sides
            stall = 0
        else:
            stall += 1
    return best, best_sides


@dataclass
class LocalSearchOptions:
    restarts: int = 100
    tenure: int = 10
    seed: int = 0
    max_stall: Optional[int] = None


def local_search(g: Graph, restarts: int = 100, seed: int = 0, tenure: int = 10,
                 max_stall: Optional[int] = None) -> MaxCutResult:
    """Multi-start 1-flip search: steepest ascent to a local optimum, then tabu moves.

    Each restart draws a random assignment and a vertex order (used to break
    gain ties) from PCG64(seed).  The winner is the best value, then the
    lowest restart index.
    """
    n = g.n
    if restarts < 1:
        raise ValueError("need at least one restart")
    indptr, indices, w = g.csr()
    stall = max_stall if max_stall is not None else max(50, 10 * n)
    rng = np.random.Generator(np.random.PCG64(seed))
    best_val, best_sides = -math.inf, None
    for _ in range(restarts):
        sides = np.where(rng.random(n) < 0.5, 1, -1).astype(np.int8)
        perm = rng.permutation(n).astype(np.int64)
        val, s = _tabu(n, indptr, indices, w, sides, perm, tenure, stall)
        if val > best_val + 1e-12:
            best_val, best_sides = val, s.copy()
    if best_sides[0] < 0:
        best_sides = -best_sides
    return MaxCutResult(best_sides, cut_value(g, best_sides), status=HEURISTIC)


def certify(g: Graph, r: MaxCutResult, bound: Union[int, Fraction]) -> MaxCutResult:
    """Upgrade a cut to ``certified`` when it meets a valid upper bound.

    Unit-weight graphs need an integral bound met exactly; weighted graphs
    need the cut within 1e-6 of the bound.
    """
    bound = Fraction(bound)
    if r.value > bound + Fraction(1, 10**6):
        raise InconsistentBoundError(f"cut {r.value} exceeds upper bound {float(bound)}")
    status = r.status
    if status != EXACT:
        if g.is_unit_weight:
            if bound.denominator == 1 and round(r.value) == bound:
                status = CERTIFIED
        elif r.value >= bound - Fraction(1, 10**6):
            status = CERTIFIED
    return replace(r, upper_bound=bound, status=status)
