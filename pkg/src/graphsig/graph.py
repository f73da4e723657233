"""Weighted undirected graphs and their matrix operators.

A Graph stores a canonical edge list (u < v, sorted lexicographically) so
that every derived matrix is built in a fixed order and comes out exactly
symmetric. Matrices are dense float64 arrays; the design point is a few
hundred vertices.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass

import numpy as np

from .errors import (
    DuplicateEdgeError,
    IndexOutOfRangeError,
    IsolatedVertexError,
    NonPositiveWeightError,
    ParseError,
    SelfLoopError,
)

Edge = tuple[int, int, float]


@dataclass(frozen=True)
class Graph:
    """Validated weighted undirected graph.

    Construct through :func:`build_graph`; the edge list is canonical
    (u < v, sorted, unique pairs, strictly positive weights, no loops).
    Instances are immutable and safe to share across threads.
    """

    n: int
    edges: tuple[Edge, ...]

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def neighbor_lists(self) -> list[list[int]]:
        """Adjacency lists, each sorted ascending."""
        out: list[list[int]] = [[] for _ in range(self.n)]
        for u, v, _ in self.edges:
            out[u].append(v)
            out[v].append(u)
        for lst in out:
            lst.sort()
        return out


def build_graph(n: int, edges) -> Graph:
    """Validate and canonicalize an edge list into a Graph.

    Raises IndexOutOfRangeError, SelfLoopError, NonPositiveWeightError, or
    DuplicateEdgeError; the message names the offending edge.
    """
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise ValueError(f"vertex count must be a positive integer, got {n!r}")
    canonical: list[Edge] = []
    seen: set[tuple[int, int]] = set()
    for edge in edges:
        u, v, w = edge
        u = int(u)
        v = int(v)
        w = float(w)
        if not (0 <= u < n) or not (0 <= v < n):
            raise IndexOutOfRangeError(
                f"edge ({u}, {v}, {w}) references a vertex outside 0..{n - 1}"
            )
        if u == v:
            raise SelfLoopError(f"edge ({u}, {v}, {w}) is a self-loop")
        if not (w > 0.0) or not math.isfinite(w):
            raise NonPositiveWeightError(
                f"edge ({u}, {v}, {w}) must have a finite weight > 0"
            )
        if u > v:
            u, v = v, u
        if (u, v) in seen:
            raise DuplicateEdgeError(f"edge ({u}, {v}, {w}) duplicates pair {{{u}, {v}}}")
        seen.add((u, v))
        canonical.append((u, v, w))
    canonical.sort(key=lambda e: (e[0], e[1]))
    return Graph(n=int(n), edges=tuple(canonical))


def adjacency(g: Graph) -> np.ndarray:
    """0/1 connectivity matrix; symmetric with zero diagonal."""
    a = np.zeros((g.n, g.n))
    for u, v, _ in g.edges:
        a[u, v] = 1.0
        a[v, u] = 1.0
    return a


def weight_matrix(g: Graph) -> np.ndarray:
    """Edge-weight matrix; symmetric with zero diagonal."""
    w = np.zeros((g.n, g.n))
    for u, v, wt in g.edges:
        w[u, v] = wt
        w[v, u] = wt
    return w


def degrees(g: Graph) -> np.ndarray:
    """Weighted degree of each vertex, accumulated in canonical edge order."""
    d = np.zeros(g.n)
    for u, v, wt in g.edges:
        d[u] += wt
        d[v] += wt
    return d


def degree_matrix(g: Graph) -> np.ndarray:
    """Diagonal matrix of weighted degrees."""
    return np.diag(degrees(g))


def laplacian(g: Graph) -> np.ndarray:
    """Combinatorial Laplacian: degrees on the diagonal, -weight elsewhere.

    The diagonal is the accumulated degree rather than a subtraction, so
    every row sums to zero up to rounding of the accumulation order.
    """
    lap = np.zeros((g.n, g.n))
    for u, v, wt in g.edges:
        lap[u, v] = -wt
        lap[v, u] = -wt
        lap[u, u] += wt
        lap[v, v] += wt
    return lap


def random_walk_matrix(g: Graph) -> np.ndarray:
    """Degree-normalized weight matrix; rows sum to one.

    Raises IsolatedVertexError when any vertex has degree zero.
    """
    d = degrees(g)
    isolated = np.flatnonzero(d == 0.0)
    if isolated.size:
        raise IsolatedVertexError(
            f"vertex {int(isolated[0])} has degree 0; the degree matrix is singular"
        )
    return weight_matrix(g) / d[:, None]


def is_connected(g: Graph) -> bool:
    """Breadth-first check that the graph has a single component."""
    if g.n == 1:
        return True
    neigh = g.neighbor_lists()
    seen = [False] * g.n
    seen[0] = True
    queue = deque([0])
    count = 1
    while queue:
        u = queue.popleft()
        for v in neigh[u]:
            if not seen[v]:
                seen[v] = True
                count += 1
                queue.append(v)
    return count == g.n


# ---------------------------------------------------------------------------
# Edge-list text format
# ---------------------------------------------------------------------------
#
#   # comment
#   n <count>
#   e <u> <v> <w>
#
# The first non-comment line must be the `n` directive. Weights are written
# with 17 significant digits, so write -> parse -> write is byte-stable.


def format_edgelist(g: Graph) -> str:
    lines = [f"n {g.n}"]
    for u, v, w in g.edges:
        lines.append(f"e {u} {v} {w:.17g}")
    return "\n".join(lines) + "\n"


def parse_edgelist(text: str) -> Graph:
    """Parse the edge-list format; ParseError messages carry line numbers."""
    n: int | None = None
    edges: list[Edge] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if tokens[0] == "n":
            if n is not None:
                raise ParseError(f"line {lineno}: repeated 'n' directive")
            if len(tokens) != 2:
                raise ParseError(f"line {lineno}: expected 'n <count>', got {raw.strip()!r}")
            try:
                n = int(tokens[1])
            except ValueError:
                raise ParseError(f"line {lineno}: vertex count {tokens[1]!r} is not an integer") from None
        elif tokens[0] == "e":
            if n is None:
                raise ParseError(f"line {lineno}: edge before 'n' directive")
            if len(tokens) != 4:
                raise ParseError(f"line {lineno}: expected 'e <u> <v> <w>', got {raw.strip()!r}")
            try:
                u, v = int(tokens[1]), int(tokens[2])
                w = float(tokens[3])
            except ValueError:
                raise ParseError(f"line {lineno}: malformed edge {raw.strip()!r}") from None
            edges.append((u, v, w))
        else:
            raise ParseError(f"line {lineno}: unknown directive {tokens[0]!r}")
    if n is None:
        raise ParseError("missing 'n' directive")
    return build_graph(n, edges)
