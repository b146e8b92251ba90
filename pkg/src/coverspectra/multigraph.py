"""Finite undirected multigraphs stored as half-edge pairs, with file I/O.

Loops and parallel edges are first-class: edge i contributes half-edges
2*i (u to v) and 2*i + 1 (v to u), so inv(h) = h ^ 1 and a loop at u is a
pair of half-edges both sourced at u. A loop contributes 2 to the degree
of its vertex and 2 to the diagonal of the adjacency matrix.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from functools import cached_property

import numpy as np


class GraphParseError(ValueError):
    """Malformed graph file; the message names the offending line."""


class CyclomaticClass(enum.IntEnum):
    """Connected multigraphs ordered by cycle rank: m - n + 1 = 0, 1, >= 2."""

    TREE = 0
    UNICYCLIC = 1
    MULTICYCLIC = 2


@dataclass(frozen=True)
class MultiGraph:
    """Multigraph on vertices 0..n-1 with an explicit edge tuple.

    The half-edge with id 2*i + b has source edges[i][b] and target
    edges[i][1 - b]; its inverse is 2*i + (1 - b).
    """

    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"vertex count must be positive, got {self.n}")
        for i, (u, v) in enumerate(self.edges):
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge {i} = ({u}, {v}) out of range for n = {self.n}")

    @staticmethod
    def from_edges(n: int, edges) -> "MultiGraph":
        return MultiGraph(n, tuple((int(u), int(v)) for u, v in edges))

    # -- half-edge primitives -------------------------------------------------

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def num_half_edges(self) -> int:
        return 2 * len(self.edges)

    def source(self, h: int) -> int:
        return self.edges[h >> 1][h & 1]

    def target(self, h: int) -> int:
        return self.edges[h >> 1][1 - (h & 1)]

    @staticmethod
    def inv(h: int) -> int:
        return h ^ 1

    @cached_property
    def sources(self) -> tuple[int, ...]:
        out = []
        for u, v in self.edges:
            out.append(u)
            out.append(v)
        return tuple(out)

    @cached_property
    def targets(self) -> tuple[int, ...]:
        out = []
        for u, v in self.edges:
            out.append(v)
            out.append(u)
        return tuple(out)

    @cached_property
    def half_edges_at(self) -> tuple[tuple[int, ...], ...]:
        """Half-edge ids sourced at each vertex, in increasing id order."""
        buckets: list[list[int]] = [[] for _ in range(self.n)]
        for h, u in enumerate(self.sources):
            buckets[u].append(h)
        return tuple(tuple(b) for b in buckets)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(len(b) for b in self.half_edges_at)

    def deg(self, v: int) -> int:
        return self.degrees[v]

    @cached_property
    def max_degree(self) -> int:
        return max(self.degrees) if self.n else 0

    @cached_property
    def neighbor_multiplicities(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        """Per vertex: (neighbor, half-edge multiplicity) pairs. A loop at v
        appears as (v, 2)."""
        out = []
        for v in range(self.n):
            counts: dict[int, int] = {}
            for h in self.half_edges_at[v]:
                w = self.targets[h]
                counts[w] = counts.get(w, 0) + 1
            out.append(tuple(sorted(counts.items())))
        return tuple(out)

    # -- matrices and traversal ----------------------------------------------

    def adjacency_matrix(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=np.int64)
        for u, v in self.edges:
            a[u, v] += 1
            a[v, u] += 1
        return a

    def distances_from(self, starts) -> list[int]:
        """BFS distance from a vertex or an iterable of source vertices.
        Unreachable vertices get -1."""
        if isinstance(starts, int):
            starts = (starts,)
        dist = [-1] * self.n
        queue = deque()
        for s in starts:
            if dist[s] == -1:
                dist[s] = 0
                queue.append(s)
        while queue:
            u = queue.popleft()
            for h in self.half_edges_at[u]:
                w = self.targets[h]
                if dist[w] == -1:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return dist

    def connected_components(self) -> list[tuple[int, ...]]:
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            comp = []
            queue = deque([s])
            seen[s] = True
            while queue:
                u = queue.popleft()
                comp.append(u)
                for h in self.half_edges_at[u]:
                    w = self.targets[h]
                    if not seen[w]:
                        seen[w] = True
                        queue.append(w)
            comps.append(tuple(sorted(comp)))
        return comps

    @cached_property
    def is_connected(self) -> bool:
        return min(self.distances_from(0)) >= 0


def require_connected(g: MultiGraph, what: str = "this operation") -> None:
    if not g.is_connected:
        raise ValueError(f"{what} requires a connected graph")


def is_tree(g: MultiGraph) -> bool:
    return g.is_connected and g.m == g.n - 1


def cyclomatic_class(g: MultiGraph) -> CyclomaticClass:
    """Classify a connected multigraph by its cycle rank m - n + 1."""
    require_connected(g, "cyclomatic_class")
    rank = g.m - g.n + 1
    if rank == 0:
        return CyclomaticClass.TREE
    if rank == 1:
        return CyclomaticClass.UNICYCLIC
    return CyclomaticClass.MULTICYCLIC


# -- neighborhoods -----------------------------------------------------------


@dataclass(frozen=True)
class Neighborhood:
    """Induced ball: subgraph on all vertices within a fixed distance of the
    center, keeping every parallel edge and loop among them.

    vertices[i] is the original id of subgraph vertex i; center_index locates
    the ball's center inside the subgraph.
    """

    graph: MultiGraph
    vertices: tuple[int, ...]
    center_index: int

    def original(self, i: int) -> int:
        return self.vertices[i]


def ball(g: MultiGraph, v: int, r: int) -> Neighborhood:
    """Induced subgraph on {u : dist(u, v) <= r}. r = 0 keeps v and its loops."""
    if not (0 <= v < g.n):
        raise ValueError(f"vertex {v} out of range")
    if r < 0:
        raise ValueError("radius must be nonnegative")
    dist = g.distances_from(v)
    chosen = sorted(u for u in range(g.n) if 0 <= dist[u] <= r)
    index = {u: i for i, u in enumerate(chosen)}
    sub_edges = [
        (index[a], index[b])
        for (a, b) in g.edges
        if a in index and b in index
    ]
    return Neighborhood(MultiGraph.from_edges(len(chosen), sub_edges), tuple(chosen), index[v])


# -- file format ---------------------------------------------------------------
#
# Line 1: "n m". Then m lines "u v" with 0-based endpoints; "u u" is a loop and
# repeated lines are parallel edges. Lines starting with '#' are comments.


def load_graph(text: str) -> MultiGraph:
    """Parse the plain edge-list format. Raises GraphParseError with a line
    number on malformed input."""
    header: tuple[int, int] | None = None
    edges: list[tuple[int, int]] = []
    header_line = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if header is None:
            if len(fields) != 2:
                raise GraphParseError(f"line {lineno}: expected header 'n m', got {raw!r}")
            try:
                n, m = int(fields[0]), int(fields[1])
            except ValueError:
                raise GraphParseError(f"line {lineno}: non-integer header {raw!r}") from None
            if n < 1:
                raise GraphParseError(f"line {lineno}: vertex count must be positive, got {n}")
            if m < 0:
                raise GraphParseError(f"line {lineno}: negative edge count {m}")
            header = (n, m)
            header_line = lineno
            continue
        if len(fields) != 2:
            raise GraphParseError(f"line {lineno}: expected edge 'u v', got {raw!r}")
        try:
            u, v = int(fields[0]), int(fields[1])
        except ValueError:
            raise GraphParseError(f"line {lineno}: non-integer edge {raw!r}") from None
        n = header[0]
        if not (0 <= u < n and 0 <= v < n):
            raise GraphParseError(f"line {lineno}: endpoint out of range 0..{n - 1}: {raw!r}")
        if len(edges) == header[1]:
            raise GraphParseError(f"line {lineno}: more than {header[1]} edge lines")
        edges.append((u, v))
    if header is None:
        raise GraphParseError("line 1: empty graph file")
    if len(edges) != header[1]:
        raise GraphParseError(
            f"line {header_line}: header promises {header[1]} edges, found {len(edges)}"
        )
    return MultiGraph.from_edges(header[0], edges)


def dump_graph(g: MultiGraph) -> str:
    """Serialize with sorted edge lines so load/dump round-trips bit-exact."""
    lines = [f"{g.n} {g.m}"]
    for u, v in sorted((min(e), max(e)) for e in g.edges):
        lines.append(f"{u} {v}")
    return "\n".join(lines) + "\n"
