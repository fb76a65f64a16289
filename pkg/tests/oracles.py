"""Independent reference implementations used only by the tests.

Each one takes a different route from the library code it checks: plain
Python sets instead of matrix products, itertools enumeration instead of a
Gray-code walk, dense matrix exponentials instead of butterfly updates.
"""
import itertools
import math

import numpy as np
from scipy.linalg import expm


def neighbor_sets(g):
    nb = [set() for _ in range(g.n)]
    for u, v in g.edges.tolist():
        nb[u].add(v)
        nb[v].add(u)
    return nb


def common_neighbor_count(g, u, v):
    nb = neighbor_sets(g)
    return len(nb[u] & nb[v])


def maxcut_enumerate(g):
    """Max over all 2^n assignments, cut recomputed from scratch each time."""
    edges = g.edges.tolist()
    w = g.weights.tolist()
    best = 0.0
    for bits in itertools.product((0, 1), repeat=g.n):
        val = sum(wi for (u, v), wi in zip(edges, w) if bits[u] != bits[v])
        best = max(best, val)
    return best


def maxcut_numpy(g):
    """Vectorised enumeration of all 2^(n-1) cuts with vertex 0 fixed (n <= 22)."""
    n = g.n
    idx = np.arange(1 << (n - 1), dtype=np.int64) << 1
    total = np.zeros(idx.size)
    for (u, v), w in zip(g.edges.tolist(), g.weights.tolist()):
        total += w * (((idx >> u) ^ (idx >> v)) & 1)
    return float(total.max())


def qaoa_dense(g, gamma, beta):
    """<psi|C|psi> from full 2^n x 2^n matrices (n <= 10)."""
    n = g.n
    X = np.array([[0, 1], [1, 0]], dtype=complex)
    Z = np.diag([1.0, -1.0]).astype(complex)
    I = np.eye(2, dtype=complex)

    def op(single, q):
        # vertex q is bit q of the basis index, i.e. the q-th factor from the right
        mats = [single if k == q else I for k in reversed(range(n))]
        out = mats[0]
        for m in mats[1:]:
            out = np.kron(out, m)
        return out

    dim = 1 << n
    C = np.zeros((dim, dim), dtype=complex)
    for (u, v), w in zip(g.edges.tolist(), g.weights.tolist()):
        C += w * (np.eye(dim) - op(Z, u) @ op(Z, v)) / 2
    B = sum(op(X, q) for q in range(n))
    plus = np.full(dim, 1 / math.sqrt(dim), dtype=complex)
    psi = expm(-1j * beta * B) @ (expm(-1j * gamma * C) @ plus)
    return float(np.real(np.conj(psi) @ C @ psi))


def graph6_hand_decode(s):
    """Bit-by-bit decoder for small graph6 strings (n < 63)."""
    data = [ord(c) - 63 for c in s]
    n = data[0]
    bits = []
    for x in data[1:]:
        bits.extend((x >> k) & 1 for k in range(5, -1, -1))
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                edges.append((i, j))
            k += 1
    return n, edges
