"""Universal cover machinery: truncated tree balls, purely backtracking
closed-walk counts, and vertex orbit distributions.

The universal cover of a connected multigraph is the tree of non-backtracking
walks from a base vertex; closed walks of the base graph that lift to closed
walks of the tree are exactly the walks whose half-edge word reduces to the
empty word under cancellation of adjacent inverse pairs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .multigraph import MultiGraph, require_connected

TREE_BALL_NODE_CAP = 20_000_000


class BallCapExceeded(RuntimeError):
    """Materializing a tree ball would exceed the node cap."""


@dataclass(frozen=True)
class TreeBall:
    """Truncated ball of the universal cover, rooted at node 0.

    pi projects nodes to base vertices; in_half_edge[x] is the base half-edge
    whose lift enters x from its parent (None at the root). Children of a node
    are in bijection with the half-edges at its projection, minus the inverse
    of the inbound one; the root's children realize every half-edge at pi(0).
    """

    graph: MultiGraph
    center: int
    radius: int
    pi: tuple[int, ...]
    parent: tuple[int, ...]
    in_half_edge: tuple[int, ...]
    children: tuple[tuple[int, ...], ...]
    depth: tuple[int, ...]

    @property
    def node_count(self) -> int:
        return len(self.pi)

    def as_multigraph(self) -> MultiGraph:
        """The ball as a plain tree on its node ids (root stays node 0)."""
        edges = [(self.parent[x], x) for x in range(1, self.node_count)]
        return MultiGraph.from_edges(self.node_count, edges)


def tree_ball(g: MultiGraph, v: int, radius: int, cap: int = TREE_BALL_NODE_CAP) -> TreeBall:
    """Materialize B_radius of the universal cover at a lift of v.

    Children are generated in increasing half-edge id order, so node ids are
    deterministic. Raises BallCapExceeded before allocating past cap nodes.
    """
    require_connected(g, "tree_ball")
    if not (0 <= v < g.n):
        raise ValueError(f"vertex {v} out of range")
    if radius < 0:
        raise ValueError("radius must be nonnegative")

    pi = [v]
    parent = [-1]
    in_he = [-1]
    depth = [0]
    children: list[list[int]] = [[]]
    frontier = [0]
    for _ in range(radius):
        next_frontier = []
        for x in frontier:
            banned = -1 if in_he[x] < 0 else (in_he[x] ^ 1)
            for h in g.half_edges_at[pi[x]]:
                if h == banned:
                    continue
                node = len(pi)
                if node >= cap:
                    raise BallCapExceeded(
                        f"tree ball at vertex {v}, radius {radius} exceeds {cap} nodes"
                    )
                pi.append(g.targets[h])
                parent.append(x)
                in_he.append(h)
                depth.append(depth[x] + 1)
                children.append([])
                children[x].append(node)
                next_frontier.append(node)
        frontier = next_frontier
    return TreeBall(
        g,
        v,
        radius,
        tuple(pi),
        tuple(parent),
        tuple(in_he),
        tuple(tuple(c) for c in children),
        tuple(depth),
    )


# -- purely backtracking closed walks -----------------------------------------
#
# N_k(v) counts length-k closed walks at v whose half-edge word cancels to the
# empty word, equivalently closed walks of the universal cover at a lift of v.
# Rather than materializing a radius k/2 ball (whose size is exponential in the
# max degree), we solve the first-return convolution system over half-edges:
#
#   branch[h][j] = closed walks of length j at the head of h that stay in the
#                  branch hanging below h (never step back along inv(h) at the
#                  bottom of the excursion stack),
#
#   branch[h][j] = sum over continuations h' of h, a + b = j - 2 of
#                  branch[h'][a] * branch[h][b],
#
# and the same decomposition at the root over all half-edges at v. Counts are
# exact integers.


@lru_cache(maxsize=100_000)
def _branch_tables(g: MultiGraph, k_max: int) -> tuple[tuple[int, ...], ...]:
    hh = g.num_half_edges
    continuations = [
        tuple(h2 for h2 in g.half_edges_at[g.targets[h]] if h2 != (h ^ 1))
        for h in range(hh)
    ]
    branch = [[0] * (k_max + 1) for _ in range(hh)]
    for h in range(hh):
        branch[h][0] = 1
    for j in range(2, k_max + 1, 2):
        for h in range(hh):
            total = 0
            bh = branch[h]
            for h2 in continuations[h]:
                b2 = branch[h2]
                total += sum(b2[a] * bh[j - 2 - a] for a in range(0, j - 1, 2))
            branch[h][j] = total
    return tuple(tuple(row) for row in branch)


def backtracking_walk_profile(g: MultiGraph, v: int, k_max: int) -> list[int]:
    """[N_k(g, v) for k in 0..k_max]; odd entries are zero."""
    require_connected(g, "backtracking_walk_profile")
    if not (0 <= v < g.n):
        raise ValueError(f"vertex {v} out of range")
    if k_max < 0:
        raise ValueError("walk length must be nonnegative")
    branch = _branch_tables(g, k_max if k_max % 2 == 0 else k_max - 1)
    counts = [0] * (k_max + 1)
    counts[0] = 1
    for k in range(2, k_max + 1, 2):
        total = 0
        for h in g.half_edges_at[v]:
            bh = branch[h]
            total += sum(bh[a] * counts[k - 2 - a] for a in range(0, k - 1, 2))
        counts[k] = total
    return counts


def backtracking_walk_count(g: MultiGraph, v: int, k: int) -> int:
    """Exact count of length-k purely backtracking closed walks at v (k even)."""
    if k < 0 or k % 2 != 0:
        raise ValueError(f"walk length must be even and nonnegative, got {k}")
    return backtracking_walk_profile(g, v, k)[k]


def tree_ball_walk_count(g: MultiGraph, v: int, k: int, cap: int = TREE_BALL_NODE_CAP) -> int:
    """Closed walks of length k at the root of the materialized radius k/2
    tree ball. Same quantity as backtracking_walk_count by a different route;
    kept as a cross-check (cost is exponential in max degree)."""
    if k < 0 or k % 2 != 0:
        raise ValueError(f"walk length must be even and nonnegative, got {k}")
    tb = tree_ball(g, v, k // 2, cap=cap)
    x = [0] * tb.node_count
    x[0] = 1
    for _ in range(k):
        y = [0] * tb.node_count
        for node in range(tb.node_count):
            xn = x[node]
            if xn:
                if tb.parent[node] >= 0:
                    y[tb.parent[node]] += xn
                for c in tb.children[node]:
                    y[c] += xn
        x = y
    return x[0]


# -- orbit distribution --------------------------------------------------------


@dataclass(frozen=True)
class OrbitClass:
    representative: int
    members: tuple[int, ...]
    p: Fraction


@dataclass(frozen=True)
class OrbitDistribution:
    """Coarsest equitable partition of the vertices.

    Two vertices land in the same class exactly when their rooted universal
    covers are isomorphic, so p lists the proportions of cover types.
    """

    classes: tuple[OrbitClass, ...]
    colors: tuple[int, ...]
    rounds: int

    @property
    def proportions(self) -> tuple[Fraction, ...]:
        return tuple(c.p for c in self.classes)


def orbit_distribution(g: MultiGraph) -> OrbitDistribution:
    """Refine vertex colors by (own color, multiset of neighbor colors over
    half-edges) until stable."""
    require_connected(g, "orbit_distribution")
    colors = [0] * g.n
    rounds = 0
    while True:
        sigs = []
        for v in range(g.n):
            nbr = tuple(sorted(colors[g.targets[h]] for h in g.half_edges_at[v]))
            sigs.append((colors[v], nbr))
        palette = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new_colors = [palette[s] for s in sigs]
        rounds += 1
        if new_colors == colors:
            break
        colors = new_colors

    members: dict[int, list[int]] = {}
    for v, c in enumerate(colors):
        members.setdefault(c, []).append(v)
    classes = tuple(
        OrbitClass(min(vs), tuple(vs), Fraction(len(vs), g.n))
        for _, vs in sorted(members.items())
    )
    return OrbitDistribution(classes, tuple(colors), rounds)
