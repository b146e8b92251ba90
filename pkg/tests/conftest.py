"""Shared fixtures: small graph zoo, corpus slices, and cached analyses.

Session-scoped caches keep the expensive pieces (corpus enumeration, rho
brackets, spectra) shared across test modules without any global state in
the library itself.
"""

from __future__ import annotations

import pytest

from coverspectra.generators import (
    bowtie,
    complete,
    cycle,
    path,
    small_connected_multigraphs,
    star,
    theta,
)
from coverspectra.multigraph import MultiGraph
from coverspectra.rho import rho_tree
from coverspectra.spectra import eigen_spectrum


@pytest.fixture(scope="session")
def corpus():
    """Exhaustive connected multigraphs, <= 5 vertices and <= 7 edges."""
    return small_connected_multigraphs(5, 7)


@pytest.fixture(scope="session")
def small_corpus():
    """The <= 4 vertex / <= 5 edge slice, for per-module property tests."""
    return small_connected_multigraphs(4, 5)


class _Cache:
    """Memoize per-graph analyses keyed on the edge tuple."""

    def __init__(self):
        self._rho = {}
        self._spec = {}

    def rho(self, g: MultiGraph):
        key = (g.n, g.edges)
        if key not in self._rho:
            self._rho[key] = rho_tree(g)
        return self._rho[key]

    def spectrum(self, g: MultiGraph):
        key = (g.n, g.edges)
        if key not in self._spec:
            self._spec[key] = eigen_spectrum(g)
        return self._spec[key]


@pytest.fixture(scope="session")
def cache():
    return _Cache()


ZOO = {
    "triangle": cycle(3),
    "c4": cycle(4),
    "c6": cycle(6),
    "path3": path(3),
    "k4": complete(4),
    "star3": star(3),
    "bowtie": bowtie(),
    "theta222": theta(2, 2, 2),
    "loop": MultiGraph(1, ((0, 0),)),
    "double_edge": MultiGraph(2, ((0, 1), (0, 1))),
    "loop_path": MultiGraph(3, ((0, 0), (0, 1), (1, 2))),
    "c4_leaf": MultiGraph(5, ((0, 1), (1, 2), (2, 3), (3, 0), (0, 4))),
}


@pytest.fixture(params=sorted(ZOO), ids=sorted(ZOO))
def zoo_graph(request):
    return ZOO[request.param]
