"""Instance I/O: MQLib-style edge lists, graph6 decoding, provenance sidecars.

Edge-list files are 1-based::

    n m
    u v w
    ...

with ``u < v`` and ``w`` optional (default 1).  Weights are written with 17
significant digits so a write/parse round trip is bit-exact.
"""
from __future__ import annotations

import math
from pathlib import Path
from typing import Mapping, Union

import numpy as np

from hardcut import __version__
from hardcut.graph import Graph, GraphError

PathLike = Union[str, Path]

GRAPH6_MAX_N = 1 << 18


class ParseError(ValueError):
    def __init__(self, msg: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {msg}" if line is not None else msg)


def _parse_int(tok: str, line: int, what: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"{what} is not an integer: {tok!r}", line) from None


def parse_edge_list(text: str) -> Graph:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise ParseError("empty input", 1)
    header = lines[0].split()
    if len(header) != 2:
        raise ParseError("header must be 'n m'", 1)
    n = _parse_int(header[0], 1, "vertex count")
    m = _parse_int(header[1], 1, "edge count")
    if n < 1 or m < 0:
        raise ParseError(f"bad header values n={n} m={m}", 1)
    body = lines[1:]
    if len(body) != m:
        raise ParseError(f"header declares {m} edges, found {len(body)} lines", 1)

    edges = np.empty((m, 2), dtype=np.int64)
    weights = np.ones(m, dtype=np.float64)
    seen: dict[tuple[int, int], int] = {}
    for i, raw in enumerate(body):
        lineno = i + 2
        toks = raw.split()
        if len(toks) not in (2, 3):
            raise ParseError("expected 'u v' or 'u v w'", lineno)
        u = _parse_int(toks[0], lineno, "endpoint")
        v = _parse_int(toks[1], lineno, "endpoint")
        if not (1 <= u <= n and 1 <= v <= n):
            raise ParseError(f"vertex index out of range 1..{n}", lineno)
        if u == v:
            raise ParseError("self-loop", lineno)
        key = (min(u, v), max(u, v))
        if key in seen:
            raise ParseError(f"duplicate edge (first seen on line {seen[key]})", lineno)
        seen[key] = lineno
        if len(toks) == 3:
            try:
                w = float(toks[2])
            except ValueError:
                raise ParseError(f"bad weight {toks[2]!r}", lineno) from None
            if not math.isfinite(w):
                raise ParseError("non-finite weight", lineno)
            weights[i] = w
        edges[i] = (key[0] - 1, key[1] - 1)
    return Graph.from_edges(n, edges, weights)


def write_edge_list(g: Graph, with_weights: bool = True) -> str:
    out = [f"{g.n} {g.m}"]
    if with_weights:
        out += [f"{u + 1} {v + 1} {w:.17g}" for (u, v), w in zip(g.edges.tolist(), g.weights.tolist())]
    else:
        out += [f"{u + 1} {v + 1}" for u, v in g.edges.tolist()]
    return "\n".join(out) + "\n"


def read_edge_list(path: PathLike) -> Graph:
    return parse_edge_list(Path(path).read_text())


def save_edge_list(g: Graph, path: PathLike) -> None:
    Path(path).write_text(write_edge_list(g))


def _graph6_size(data: bytes) -> tuple[int, int]:
    """Decode N(n); return (n, number of header bytes)."""
    if not data:
        raise ParseError("empty graph6 string")
    if data[0] != 126:
        return data[0] - 63, 1
    if len(data) >= 2 and data[1] == 126:
        if len(data) < 8:
            raise ParseError("truncated 8-byte size field")
        n = 0
        for c in data[2:8]:
            n = (n << 6) | (c - 63)
        return n, 8
    if len(data) < 4:
        raise ParseError("truncated 4-byte size field")
    n = 0
    for c in data[1:4]:
        n = (n << 6) | (c - 63)
    return n, 4


def parse_graph6(data: Union[bytes, str]) -> Graph:
    """Decode one graph6 record (optional ``>>graph6<<`` header, trailing newline allowed)."""
    if isinstance(data, str):
        data = data.encode("ascii")
    data = data.strip()
    if data.startswith(b">>graph6<<"):
        data = data[len(b">>graph6<<"):]
    if data.startswith(b":") or data.startswith(b"&"):
        raise ParseError("sparse6/digraph6 records are not graph6")
    bad = [c for c in data if c < 63 or c > 126]
    if bad:
        raise ParseError(f"character {chr(bad[0])!r} outside graph6 range 63..126")
    n, skip = _graph6_size(data)
    if n > GRAPH6_MAX_N:
        raise ParseError(f"unsupported size n={n} (limit {GRAPH6_MAX_N})")
    if n == 0:
        raise ParseError("graph6 record encodes the empty graph")
    nbits = n * (n - 1) // 2
    body = data[skip:]
    if len(body) != (nbits + 5) // 6:
        raise ParseError(f"expected {(nbits + 5) // 6} data bytes for n={n}, got {len(body)}")
    six = np.frombuffer(body, dtype=np.uint8) - 63
    bits = np.unpackbits(six[:, None], axis=1)[:, 2:].ravel()[:nbits]
    # bit order: x(0,1), x(0,2), x(1,2), x(0,3), ... (column-major upper triangle)
    cols = np.repeat(np.arange(1, n), np.arange(1, n))
    rows = np.concatenate([np.arange(j) for j in range(1, n)]) if n > 1 else np.zeros(0, dtype=np.int64)
    on = bits.astype(bool)
    return Graph.from_edges(n, np.column_stack([rows[on], cols[on]]))


def read_graph6_file(path: PathLike) -> list[Graph]:
    out = []
    for line in Path(path).read_bytes().splitlines():
        if line.strip():
            out.append(parse_graph6(line))
    return out


def read_instance(path: PathLike) -> Graph:
    """Load an edge-list file, or the first record of a ``.g6`` file."""
    path = Path(path)
    if path.suffix in (".g6", ".graph6"):
        graphs = read_graph6_file(path)
        if not graphs:
            raise ParseError("no graph6 records in file")
        return graphs[0]
    return read_edge_list(path)


def meta_path(path: PathLike) -> Path:
    return Path(path).with_suffix(".meta")


def write_meta(path: PathLike, family: str, params: Mapping[str, object], seed: int | None = None) -> Path:
    """Write the provenance sidecar next to an instance file."""
    lines = [f"family: {family}"]
    lines += [f"{k}: {v}" for k, v in params.items()]
    lines.append(f"seed: {seed if seed is not None else 'none'}")
    lines.append(f"tool_version: hardcut {__version__}")
    out = meta_path(path)
    out.write_text("\n".join(lines) + "\n")
    return out


def read_meta(path: PathLike) -> dict[str, str]:
    p = meta_path(path)
    if not p.exists():
        return {}
    meta = {}
    for line in p.read_text().splitlines():
        if ":" in line:
            k, v = line.split(":", 1)
            meta[k.strip()] = v.strip()
    return meta


__all__ = [
    "GraphError",
    "ParseError",
    "parse_edge_list",
    "write_edge_list",
    "read_edge_list",
    "save_edge_list",
    "parse_graph6",
    "read_graph6_file",
    "read_instance",
    "write_meta",
    "read_meta",
]
