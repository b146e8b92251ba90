"""Local-geometry statistics: tree-ball fractions, short-cycle structure,
bouquet detection, mass-transport balance checks, and canonical radius-r
ball histograms with total-variation comparison.

Cycle semantics on multigraphs: an l-cycle is a closed non-backtracking
half-edge sequence through l distinct vertices and l distinct edges, taken up
to rotation and reflection. A loop is a 1-cycle, a parallel edge pair a
2-cycle. Distinct edges already force the sequence to be non-backtracking,
so enumeration only tracks vertex and edge sets. Two cycles are equal iff
their edge sets are equal: a set of l distinct edges spanning l distinct
vertices forms a single 2-regular connected subgraph, which pins the cyclic
order up to rotation and reflection.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction

from .multigraph import MultiGraph, ball, is_tree, require_connected

CANON_CAP = 64

# individualization-refinement leaves explored before giving up; only very
# symmetric non-tree balls (complete bipartite cores and the like) get close
_CANON_LEAF_BUDGET = 1_000_000


@dataclass(frozen=True)
class Cycle:
    """One l-cycle: a representative half-edge walk plus its invariant sets."""

    half_edges: tuple[int, ...]
    vertices: tuple[int, ...]
    edge_ids: frozenset[int]

    def __len__(self) -> int:
        return len(self.half_edges)

    @property
    def vertex_set(self) -> frozenset[int]:
        return frozenset(self.vertices)

    def disjoint_from(self, other: "Cycle") -> bool:
        return not (self.vertex_set & other.vertex_set)


def enumerate_cycles(g: MultiGraph, length: int) -> list[Cycle]:
    """All l-cycles of g, each reported once, anchored at its smallest vertex.

    DFS over half-edge paths from every anchor s, visiting only vertices
    above s in between, so each cycle appears exactly at its minimum vertex;
    runs of the same cycle in both directions collapse in the edge-set dedup.
    """
    if length < 1:
        raise ValueError("cycle length must be at least 1")
    found: dict[frozenset[int], Cycle] = {}

    def extend(s: int, u: int, walk: list[int], seen: set[int], used: set[int]) -> None:
        depth = len(walk)
        for h in g.half_edges_at[u]:
            e = h >> 1
            if e in used:
                continue
            w = g.targets[h]
            if depth == length - 1:
                if w != s:
                    continue
                walk.append(h)
                key = frozenset(used | {e})
                if key not in found:
                    verts = tuple(g.sources[x] for x in walk)
                    found[key] = Cycle(tuple(walk), verts, key)
                walk.pop()
            elif w > s and w not in seen:
                walk.append(h)
                seen.add(w)
                used.add(e)
                extend(s, w, walk, seen, used)
                used.remove(e)
                seen.remove(w)
                walk.pop()

    for s in range(g.n):
        extend(s, s, [], {s}, set())
    return sorted(found.values(), key=lambda c: (c.vertices, sorted(c.edge_ids)))


@dataclass(frozen=True)
class CycleStats:
    length: int
    cycles: tuple[Cycle, ...]
    counts: tuple[int, ...]

    @property
    def fraction(self) -> float:
        """Fraction of vertices lying on at least one cycle of this length."""
        n = len(self.counts)
        return sum(1 for c in self.counts if c > 0) / n

    @property
    def max_count(self) -> int:
        return max(self.counts, default=0)


def cycle_stats(g: MultiGraph, length: int) -> CycleStats:
    cycles = enumerate_cycles(g, length)
    counts = [0] * g.n
    for c in cycles:
        for v in c.vertex_set:
            counts[v] += 1
    return CycleStats(length, tuple(cycles), tuple(counts))


def tree_fraction(g: MultiGraph, r: int) -> float:
    """Fraction of vertices whose induced radius-r ball is a tree.

    A ball is connected by construction, so it is a tree exactly when its
    edge count (loops and parallel edges included) is one less than its
    vertex count.
    """
    if r < 1:
        raise ValueError("radius must be at least 1")
    hits = sum(1 for v in range(g.n) if is_tree(ball(g, v, r).graph))
    return hits / g.n


def find_bouquet(
    g: MultiGraph, v: int, k: int, length: int
) -> tuple[Cycle, Cycle] | None:
    """A pair of vertex-disjoint l-cycles both within distance k - l of v,
    or None. With both distances r1, r2 at most k - l, the budget condition
    k >= l + max(r1, r2) holds automatically."""
    if k < length:
        raise ValueError("need k >= cycle length")
    if not 0 <= v < g.n:
        raise ValueError(f"vertex {v} out of range")
    dist = g.distances_from(v)
    reach = []
    for c in enumerate_cycles(g, length):
        d = min(dist[u] for u in c.vertex_set)
        if d >= 0 and d <= k - length:
            reach.append((d, c))
    reach.sort(key=lambda t: (t[0], t[1].vertices))
    for i in range(len(reach)):
        for j in range(i + 1, len(reach)):
            if reach[i][1].disjoint_from(reach[j][1]):
                return reach[i][1], reach[j][1]
    return None


@dataclass(frozen=True)
class MassTransportReport:
    radius: int
    length: int
    lhs: Fraction
    rhs: Fraction
    hypothesis_holds: bool
    nr_average: Fraction
    nr_bound: Fraction
    nr_holds: bool | None

    @property
    def balanced(self) -> bool:
        return self.lhs == self.rhs


def mass_transport_check(g: MultiGraph, R: int, length: int) -> MassTransportReport:
    """Exact double-counting balance for F(u, v) = 1{dist(u, v) <= R and u on
    an l-cycle}, plus the averaged N_R lower bound when every radius-R ball
    holds at least R vertices. N_R(v) counts l-cycles with some vertex within
    distance R of v; the bound check is skipped (nr_holds = None) whenever
    the ball-size hypothesis fails."""
    if R < 0:
        raise ValueError("radius must be nonnegative")
    require_connected(g)
    n = g.n
    stats = cycle_stats(g, length)
    on_cycle = [c > 0 for c in stats.counts]
    dist = [g.distances_from(v) for v in range(n)]

    lhs_total = sum(
        1 for o in range(n) for v in range(n) if on_cycle[o] and 0 <= dist[o][v] <= R
    )
    rhs_total = sum(
        1 for o in range(n) for v in range(n) if on_cycle[v] and 0 <= dist[v][o] <= R
    )

    hypothesis = all(
        sum(1 for d in dist[v] if 0 <= d <= R) >= R for v in range(n)
    )
    nr_total = sum(
        1
        for v in range(n)
        for c in stats.cycles
        if min(dist[v][u] for u in c.vertex_set) <= R
    )
    nr_average = Fraction(nr_total, n)
    on_fraction = Fraction(sum(on_cycle), n)
    nr_bound = Fraction(R, length) * on_fraction
    nr_holds = (nr_average >= nr_bound) if hypothesis else None

    return MassTransportReport(
        R,
        length,
        Fraction(lhs_total, n),
        Fraction(rhs_total, n),
        hypothesis,
        nr_average,
        nr_bound,
        nr_holds,
    )


def _ahu_code(b: MultiGraph, root: int) -> str:
    """Canonical parenthesis string for a rooted tree."""
    order = [root]
    parent = {root: -1}
    for u in order:
        for h in b.half_edges_at[u]:
            w = b.targets[h]
            if w not in parent:
                parent[w] = u
                order.append(w)
    codes: dict[int, str] = {}
    for u in reversed(order):
        kids = sorted(codes[w] for w in (b.targets[h] for h in b.half_edges_at[u]) if parent.get(w) == u)
        codes[u] = "(" + "".join(kids) + ")"
    return codes[root]


def _refine(b: MultiGraph, colors: list[int]) -> list[int]:
    """Equitable refinement; color ids are re-ranked by signature each round,
    so equal inputs (up to iso) end in identical id sequences."""
    while True:
        sigs = [
            (
                colors[v],
                tuple(sorted(colors[b.targets[h]] for h in b.half_edges_at[v])),
            )
            for v in range(b.n)
        ]
        palette = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [palette[sigs[v]] for v in range(b.n)]
        if len(set(new)) == len(set(colors)):
            return new
        colors = new


def _code_for_order(b: MultiGraph, pos: list[int]) -> str:
    pairs = sorted(
        (min(pos[u], pos[v]), max(pos[u], pos[v])) for u, v in b.edges
    )
    return f"{b.n};" + ",".join(f"{a}-{c}" for a, c in pairs)


def _canonical_code(b: MultiGraph, root: int) -> str:
    """Minimal edge-list code over root-fixing orderings, searched by
    individualization-refinement: refine, branch on every member of the
    first non-singleton class, keep the lexicographically smallest leaf."""
    seed = [int(d) for d in b.distances_from(root)]
    best: str | None = None
    budget = _CANON_LEAF_BUDGET

    def search(colors: list[int]) -> None:
        nonlocal best, budget
        colors = _refine(b, colors)
        cells: dict[int, list[int]] = defaultdict(list)
        for v, c in enumerate(colors):
            cells[c].append(v)
        target = next(
            (cells[c] for c in sorted(cells) if len(cells[c]) > 1), None
        )
        if target is None:
            budget -= 1
            if budget < 0:  # pragma: no cover - symmetric beyond any real ball
                raise RuntimeError("ball canonicalization budget exceeded")
            pos = [0] * b.n
            for i, v in enumerate(sorted(range(b.n), key=colors.__getitem__)):
                pos[v] = i
            code = _code_for_order(b, pos)
            if best is None or code < best:
                best = code
            return
        for m in target:
            child = [2 * c for c in colors]
            child[m] = 2 * colors[m] - 1
            search(child)

    search(seed)
    return best


def ball_code(g: MultiGraph, v: int, r: int, cap: int = CANON_CAP) -> str:
    """Canonical code of the rooted induced ball B_r(v); equal codes iff the
    rooted balls are isomorphic. Tree balls use the linear parenthesis form,
    anything with a cycle goes through the backtracking canonizer."""
    nbh = ball(g, v, r)
    b = nbh.graph
    if b.n > cap:
        raise ValueError(
            f"ball at vertex {v} has {b.n} vertices, over the cap of {cap}"
        )
    if is_tree(b):
        return "t" + _ahu_code(b, nbh.center_index)
    return "g" + _canonical_code(b, nbh.center_index)


def bs_histogram(g: MultiGraph, r: int, cap: int = CANON_CAP) -> dict[str, int]:
    """Counts of rooted radius-r ball types over all vertices."""
    if r < 0:
        raise ValueError("radius must be nonnegative")
    hist: dict[str, int] = defaultdict(int)
    for v in range(g.n):
        hist[ball_code(g, v, r, cap)] += 1
    return dict(hist)


def tv_distance(h1: dict[str, int], h2: dict[str, int]) -> float:
    """Total-variation distance between two normalized ball histograms."""
    n1 = sum(h1.values())
    n2 = sum(h2.values())
    if n1 <= 0 or n2 <= 0:
        raise ValueError("histograms must be nonempty")
    keys = set(h1) | set(h2)
    tv = (
        sum(abs(Fraction(h1.get(k, 0), n1) - Fraction(h2.get(k, 0), n2)) for k in keys)
        / 2
    )
    return float(tv)


@dataclass(frozen=True)
class LocalStatsReport:
    radius: int
    histogram: dict[str, int]
    tree_fraction: float
    cycle_fractions: dict[int, float]
    cycle_max_counts: dict[int, int]


def local_stats_report(
    g: MultiGraph, r: int, lengths: tuple[int, ...] = (1, 2, 3)
) -> LocalStatsReport:
    per_l = {l: cycle_stats(g, l) for l in lengths}
    return LocalStatsReport(
        r,
        bs_histogram(g, r),
        tree_fraction(g, r),
        {l: s.fraction for l, s in per_l.items()},
        {l: s.max_count for l, s in per_l.items()},
    )
