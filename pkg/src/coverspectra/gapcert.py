"""Certified spectral gap between a multicyclic graph and its cover tree.

The certificate splits edges at the 2-core: interior half-edges (core to
core) get weights Gamma in [1, 2) built so that the weights of the
continuations of any interior half-edge strictly outsum it, and pendant-tree
half-edges directed away from the core get weights Delta in (0, 1] that
strictly shrink along the tree. Scaling these weights by small parameters
gamma and delta and pushing them through a weighted arithmetic-geometric
mean bound on the cover's quadratic form yields, for every vertex type of the
cover tree, a value g with |f_T(x)| <= max g * ||x||^2. The certified gap is
lambda1(G) - max g, valid for any positive gamma and delta; a grid search
picks a pair with a comfortable margin.

All weight bookkeeping is in exact rationals; only the final g evaluation
against the Perron vector uses floats.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .multigraph import CyclomaticClass, MultiGraph, cyclomatic_class
from .rho import RhoResult, rho_tree
from .spectra import Spectrum, eigen_spectrum
from .twocore import CoreDecomposition, two_core

ROLE_INT = "int-child"
ROLE_EXT = "ext-child"
ROLE_ROOT = "root-type"

GAMMA_GRID_BITS = 40
DELTA_POWERS = (1, 2, 3)


class CertificationError(RuntimeError):
    """The certificate search failed or its cross-check did not hold."""


@dataclass(frozen=True)
class GapCertificate:
    graph: MultiGraph
    gamma: float
    delta: float
    gamma_weights: dict[int, Fraction]
    delta_weights: dict[int, Fraction]
    epsilon_chain_step: Fraction
    g_values: dict[tuple[int, str], float]
    g_max: float
    lambda1: float
    margin: float
    perron: np.ndarray

    @property
    def rho_upper_bound(self) -> float:
        """Certified upper bound for the cover tree's spectral radius."""
        return self.lambda1 - self.margin


def gamma_assignment(core: CoreDecomposition) -> dict[int, Fraction]:
    """Interior weights: 1 on half-edges leaving core vertices of core degree
    above 2, then +epsilon per step walking along degree-2 chains, with
    epsilon = 1 / (2 * number of interior half-edges).

    Requires a multicyclic core, where every core cycle passes through a
    vertex of core degree above 2, so every chain terminates.
    """
    g = core.graph
    if cyclomatic_class(g) is not CyclomaticClass.MULTICYCLIC:
        raise ValueError("gamma_assignment requires a multicyclic graph")
    int_hes = sorted(core.int_half_edges)
    eps = Fraction(1, 2 * len(int_hes))
    core_deg = core.core_degrees

    weights: dict[int, Fraction] = {}
    for h in int_hes:
        if core_deg[g.source(h)] > 2:
            weights[h] = Fraction(1)

    # chain vertices have exactly two interior half-edges; the weight of one
    # is the weight of the other's inverse plus epsilon
    pending = [h for h in int_hes if h not in weights]
    while pending:
        progressed = False
        remaining = []
        for h in pending:
            u = g.source(h)
            others = [h2 for h2 in core.int_half_edges_at[u] if h2 != h]
            if len(others) != 1:  # pragma: no cover - chain vertices only
                raise AssertionError("unassigned half-edge at a non-chain vertex")
            upstream = others[0] ^ 1
            if upstream in weights:
                weights[h] = weights[upstream] + eps
                progressed = True
            else:
                remaining.append(h)
        if not progressed:
            raise ValueError(
                "gamma_assignment: a core cycle has no vertex of core degree above 2"
            )
        pending = remaining

    for h, w in weights.items():
        if not (1 <= w < 2):  # pragma: no cover
            raise AssertionError(f"interior weight {w} escaped [1, 2)")
    return weights


def delta_assignment(core: CoreDecomposition) -> dict[int, Fraction]:
    """Pendant-tree weights: 1 on half-edges leaving the core, then each
    vertex with d onward half-edges passes 1/(d+1) of its inbound weight to
    each, so children always sum below their parent."""
    g = core.graph
    weights: dict[int, Fraction] = {}
    roots = sorted(h for h in core.ext_half_edges if g.source(h) in core.core_vertices)
    stack = []
    for h in roots:
        weights[h] = Fraction(1)
        stack.append(h)
    while stack:
        h = stack.pop()
        u = g.targets[h]
        onward = [h2 for h2 in g.half_edges_at[u] if h2 != (h ^ 1)]
        share = Fraction(weights[h], len(onward) + 1) if onward else None
        for h2 in onward:
            if h2 not in core.ext_half_edges:  # pragma: no cover
                raise AssertionError("pendant tree walked into the core")
            weights[h2] = share
            stack.append(h2)
    if set(weights) != set(core.ext_half_edges):  # pragma: no cover
        raise AssertionError("exterior weights missed some half-edges")
    return weights


def g_values(
    g: MultiGraph,
    perron: np.ndarray,
    gamma_weights: dict[int, Fraction],
    delta_weights: dict[int, Fraction],
    gamma: float,
    delta: float,
) -> dict[tuple[int, str], float]:
    """Per-type Rayleigh bound values over the cover tree's vertex types.

    A non-root type is the half-edge its parent edge projects to (interior
    both ways, pendant edges only in the away direction); root types, one per
    core vertex, take the child factor on every incident half-edge.
    """
    y = perron
    gam = {h: float(w) for h, w in gamma_weights.items()}
    del_ = {h: float(w) for h, w in delta_weights.items()}

    def child_factor(h: int) -> float:
        u, w = g.source(h), g.targets[h]
        ratio = y[w] / y[u]
        if h in gam:
            return ratio / (1.0 + gam[h] * gamma / (y[u] * y[w]))
        return ratio * (1.0 + del_[h] * delta / (y[u] * y[w]))

    values: dict[tuple[int, str], float] = {}
    for h in gamma_weights:
        p, u = g.source(h), g.targets[h]
        total = (y[p] / y[u]) * (1.0 + gam[h] * gamma / (y[p] * y[u]))
        for h2 in g.half_edges_at[u]:
            if h2 != (h ^ 1):
                total += child_factor(h2)
        values[(h, ROLE_INT)] = total
    for h in delta_weights:
        p, u = g.source(h), g.targets[h]
        total = (y[p] / y[u]) / (1.0 + del_[h] * delta / (y[p] * y[u]))
        for h2 in g.half_edges_at[u]:
            if h2 != (h ^ 1):
                total += child_factor(h2)
        values[(h, ROLE_EXT)] = total

    core_vertices = sorted({g.source(h) for h in gamma_weights})
    for v in core_vertices:
        values[(v, ROLE_ROOT)] = sum(child_factor(h) for h in g.half_edges_at[v])
    return values


def certify_gap(
    g: MultiGraph,
    tol: float = 1e-6,
    rho_result: RhoResult | None = None,
    spectrum: Spectrum | None = None,
) -> GapCertificate:
    """Search gamma = 2^-1 .. 2^-40 and delta in {gamma, gamma^2, gamma^3}
    for the widest certified margin lambda1 - max g, then cross-check the
    implied bound against the bisection bracket for rho(T)."""
    if cyclomatic_class(g) is not CyclomaticClass.MULTICYCLIC:
        raise ValueError(
            "certify_gap requires a multicyclic graph; unicyclic and tree covers "
            "carry no gap (see unicyclic_defect)"
        )
    core = two_core(g)
    gamma_w = gamma_assignment(core)
    delta_w = delta_assignment(core)
    spec = spectrum if spectrum is not None else eigen_spectrum(g)
    lam = spec.lambda1

    best: tuple[float, float, float, dict[tuple[int, str], float]] | None = None
    for i in range(1, GAMMA_GRID_BITS + 1):
        gamma = 2.0 ** -i
        for power in DELTA_POWERS:
            delta = gamma ** power
            vals = g_values(g, spec.perron, gamma_w, delta_w, gamma, delta)
            margin = lam - max(vals.values())
            if best is None or margin > best[0]:
                best = (margin, gamma, delta, vals)

    margin, gamma, delta, vals = best
    if margin <= 0:
        raise CertificationError(f"no positive margin found (best {margin:.3e})")

    rho = rho_result if rho_result is not None else rho_tree(g)
    if rho.hi > lam - margin + tol:
        raise CertificationError(
            f"certified bound {lam - margin:.9f} is inconsistent with the "
            f"bisection bracket hi = {rho.hi:.9f}"
        )

    eps = Fraction(1, 2 * len(gamma_w))
    return GapCertificate(
        g,
        gamma,
        delta,
        gamma_w,
        delta_w,
        eps,
        vals,
        max(vals.values()),
        lam,
        margin,
        spec.perron,
    )


def unicyclic_defect(g: MultiGraph, copies: int, spectrum: Spectrum | None = None) -> float:
    """Rigorous lower bound for rho(T) of a unicyclic graph.

    Cutting one cycle edge (v1, vn) and chaining N copies of the cut graph
    along the cover produces a unit test vector whose Rayleigh quotient is
    lambda1(G) - (2 / N) * y_v1 * y_vn; it increases to rho(T) as N grows.
    The cut edge is chosen to minimize y_v1 * y_vn.
    """
    if cyclomatic_class(g) is not CyclomaticClass.UNICYCLIC:
        raise ValueError("unicyclic_defect requires a unicyclic graph")
    if copies < 1:
        raise ValueError("copies must be at least 1")
    spec = spectrum if spectrum is not None else eigen_spectrum(g)
    y = spec.perron
    core = two_core(g)  # the unique cycle
    cycle_edges = sorted({h >> 1 for h in core.int_half_edges})
    e = min(cycle_edges, key=lambda i: (y[g.edges[i][0]] * y[g.edges[i][1]], i))
    v1, vn = g.edges[e]
    return spec.lambda1 - 2.0 * float(y[v1]) * float(y[vn]) / copies
