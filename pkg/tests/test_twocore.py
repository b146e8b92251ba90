import pytest

from coverspectra.localstats import enumerate_cycles
from coverspectra.multigraph import CyclomaticClass, MultiGraph, cyclomatic_class
from coverspectra.twocore import two_core
from coverspectra.generators import bowtie, cycle, path


def _all_cycles(g):
    for length in range(1, g.m + 1):
        yield from enumerate_cycles(g, length)


def test_bowtie_core_is_whole_graph():
    dec = two_core(bowtie())
    assert dec.core_vertices == frozenset(range(5))
    assert dec.ext_vertices == frozenset()
    assert dec.int_half_edges == frozenset(range(12))
    assert dec.ext_half_edges == frozenset()


def test_triangle_with_pendant_path():
    # triangle 0-1-2 plus path 0-3-4
    g = MultiGraph(5, ((0, 1), (1, 2), (2, 0), (0, 3), (3, 4)))
    dec = two_core(g)
    assert dec.core_vertices == frozenset({0, 1, 2})
    assert dec.ext_vertices == frozenset({3, 4})
    assert len(dec.ext_half_edges) == 2
    # each exterior half-edge points away from the core
    dist = g.distances_from(dec.core_vertices)
    for h in dec.ext_half_edges:
        assert dist[g.source(h)] + 1 == dist[g.target(h)]


def test_c4_with_leaf_per_vertex():
    edges = [(0, 1), (1, 2), (2, 3), (3, 0)] + [(i, 4 + i) for i in range(4)]
    g = MultiGraph(8, tuple(edges))
    dec = two_core(g)
    assert dec.core_vertices == frozenset({0, 1, 2, 3})
    assert len(dec.ext_vertices) == 4
    assert len(dec.ext_half_edges) == 4
    for h in dec.ext_half_edges:
        assert g.source(h) in dec.core_vertices


def test_loop_with_tail():
    g = MultiGraph(3, ((0, 0), (0, 1), (1, 2)))
    dec = two_core(g)
    assert dec.core_vertices == frozenset({0})
    assert dec.core_degrees[0] == 2
    assert len(dec.ext_half_edges) == 2


def test_rejects_trees_and_disconnected():
    with pytest.raises(ValueError, match="tree"):
        two_core(path(4))
    with pytest.raises(ValueError, match="connected"):
        two_core(MultiGraph(6, ((0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3))))


def _core_subgraph(dec):
    g = dec.graph
    idx = {v: i for i, v in enumerate(sorted(dec.core_vertices))}
    edges = [
        (idx[u], idx[v])
        for u, v in g.edges
        if u in dec.core_vertices and v in dec.core_vertices
    ]
    return MultiGraph.from_edges(len(idx), edges), idx


def test_idempotent_and_min_degree_two(corpus):
    for g in corpus[:400]:
        if g.m < g.n:
            continue
        dec = two_core(g)
        core, _ = _core_subgraph(dec)
        assert min(core.degrees) >= 2
        again = two_core(core)
        assert again.core_vertices == frozenset(range(core.n))
        assert again.ext_half_edges == frozenset()
        # partition and half-edge bookkeeping
        assert dec.core_vertices | dec.ext_vertices == frozenset(range(g.n))
        assert not (dec.core_vertices & dec.ext_vertices)
        assert len(dec.int_half_edges) + 2 * len(dec.ext_half_edges) == g.num_half_edges


def test_every_cycle_lies_in_core(small_corpus):
    for g in small_corpus:
        if g.m < g.n:
            continue
        dec = two_core(g)
        for cyc in _all_cycles(g):
            assert set(cyc.vertices) <= dec.core_vertices


def test_multicyclic_cores_have_branch_vertex_on_every_cycle(corpus):
    """In a graph with at least two independent cycles, no cycle of the core
    can avoid vertices of core-degree > 2."""
    checked = 0
    for g in corpus:
        if cyclomatic_class(g) is not CyclomaticClass.MULTICYCLIC:
            continue
        dec = two_core(g)
        core, idx = _core_subgraph(dec)
        back = {i: v for v, i in idx.items()}
        for cyc in _all_cycles(core):
            assert any(dec.core_degrees[back[u]] > 2 for u in cyc.vertices)
        checked += 1
    assert checked > 1000
