"""Write graph6 files for known q3t strongly-regular graphs into src/hardcut/data/.

Sources (all classical constructions):
  t=1  SRG(16,6,2,2): 4x4 rook's graph and the Shrikhande graph
  t=3  SRG(40,12,2,4): collinearity graphs of the quadrangles W(3) and Q(4,3)
  t=5  SRG(64,18,2,6): collinearity graph of T2*(O), O a hyperoval of PG(2,4)
  t=9  SRG(112,30,2,10): collinearity graph of the elliptic quadric Q-(5,3)

Needs networkx for graph6 encoding (hardcut itself only decodes).
"""
from __future__ import annotations

import itertools
from pathlib import Path

import networkx as nx

DATA = Path(__file__).resolve().parents[1] / "src" / "hardcut" / "data"


def rook_4x4():
    V = list(itertools.product(range(4), repeat=2))
    return V, lambda a, b: (a[0] == b[0]) != (a[1] == b[1])


def shrikhande():
    V = list(itertools.product(range(4), repeat=2))
    conn = {(1, 0), (3, 0), (0, 1), (0, 3), (1, 1), (3, 3)}
    return V, lambda a, b: ((a[0] - b[0]) % 4, (a[1] - b[1]) % 4) in conn


def _projective_points(q, dim):
    pts = []
    for v in itertools.product(range(q), repeat=dim):
        if any(v):
            lead = next(x for x in v if x)
            if lead == 1:
                pts.append(v)
    return pts


def symplectic_w3():
    pts = _projective_points(3, 4)

    def form(x, y):
        return (x[0] * y[1] - x[1] * y[0] + x[2] * y[3] - x[3] * y[2]) % 3

    return pts, lambda a, b: a != b and form(a, b) == 0


def parabolic_q4_3():
    def Q(x):
        return (x[0] * x[1] + x[2] * x[3] + x[4] * x[4]) % 3

    def B(x, y):
        return (x[0] * y[1] + x[1] * y[0] + x[2] * y[3] + x[3] * y[2] + 2 * x[4] * y[4]) % 3

    pts = [p for p in _projective_points(3, 5) if Q(p) == 0]
    return pts, lambda a, b: a != b and B(a, b) == 0


# GF(4) = {0, 1, w, w^2} encoded 0..3 with w = 2, w^2 = 3
_GF4_MUL = [[0, 0, 0, 0], [0, 1, 2, 3], [0, 2, 3, 1], [0, 3, 1, 2]]


def _gf4_add(a, b):
    return a ^ b


def _gf4_normalize(v):
    lead = next(x for x in v if x)
    inv = {1: 1, 2: 3, 3: 2}[lead]
    return tuple(_GF4_MUL[inv][x] for x in v)


def t2star_hyperoval():
    # hyperoval of PG(2,4): conic {(1, s, s^2)} + (0,0,1) + nucleus (0,1,0)
    oval = {(1, s, _GF4_MUL[s][s]) for s in range(4)} | {(0, 0, 1), (0, 1, 0)}
    pts = list(itertools.product(range(4), repeat=3))

    def adj(a, b):
        if a == b:
            return False
        d = tuple(_gf4_add(x, y) for x, y in zip(a, b))
        return _gf4_normalize(d) in oval

    return pts, adj


def elliptic_q5_3():
    def Q(x):
        return (x[0] * x[1] + x[2] * x[3] + x[4] * x[4] + x[5] * x[5]) % 3

    def B(x, y):
        return (x[0] * y[1] + x[1] * y[0] + x[2] * y[3] + x[3] * y[2] + 2 * x[4] * y[4] + 2 * x[5] * y[5]) % 3

    pts = [p for p in _projective_points(3, 6) if Q(p) == 0]
    return pts, lambda a, b: a != b and B(a, b) == 0


def build(construction) -> nx.Graph:
    V, adj = construction()
    G = nx.Graph()
    G.add_nodes_from(range(len(V)))
    for i, j in itertools.combinations(range(len(V)), 2):
        if adj(V[i], V[j]):
            G.add_edge(i, j)
    return G


FILES = {
    "srg16_6_2_2.g6": [rook_4x4, shrikhande],
    "srg40_12_2_4.g6": [symplectic_w3, parabolic_q4_3],
    "srg64_18_2_6.g6": [t2star_hyperoval],
    "srg112_30_2_10.g6": [elliptic_q5_3],
}


def main():
    DATA.mkdir(parents=True, exist_ok=True)
    for name, constructions in FILES.items():
        lines = [nx.to_graph6_bytes(build(c), header=False) for c in constructions]
        (DATA / name).write_bytes(b"".join(lines))
        print(f"wrote {name}: {len(lines)} graph(s)")


if __name__ == "__main__":
    main()
