from fractions import Fraction

import pytest

from coverspectra.cover import orbit_distribution, tree_ball
from coverspectra.localstats import (
    CANON_CAP,
    ball_code,
    bs_histogram,
    cycle_stats,
    enumerate_cycles,
    find_bouquet,
    local_stats_report,
    mass_transport_check,
    tree_fraction,
    tv_distance,
)
from coverspectra.multigraph import MultiGraph, is_tree
from coverspectra.generators import bowtie, complete, cycle, path, random_regular, star


def _girth(g):
    for length in range(1, g.m + 1):
        if enumerate_cycles(g, length):
            return length
    return None


# -- cycle enumeration ------------------------------------------------------------


def test_triangle_cycles():
    s = cycle_stats(cycle(3), 3)
    assert s.fraction == 1.0
    assert s.counts == (1, 1, 1)


def test_bowtie_center_on_two_triangles():
    s = cycle_stats(bowtie(), 3)
    assert s.fraction == 1.0
    assert s.counts[0] == 2
    assert s.max_count == 2


def test_c6_has_no_triangles():
    assert cycle_stats(cycle(6), 3).fraction == 0.0


def test_loops_and_parallel_pairs_are_short_cycles():
    g = MultiGraph(2, ((0, 0), (0, 1), (0, 1)))
    assert len(enumerate_cycles(g, 1)) == 1
    assert len(enumerate_cycles(g, 2)) == 1
    s1 = cycle_stats(g, 1)
    assert s1.counts == (1, 0)


def test_parallel_triple_gives_three_two_cycles():
    g = MultiGraph(2, ((0, 1),) * 3)
    assert len(enumerate_cycles(g, 2)) == 3


def test_cycle_count_bounded_by_degree_power(corpus):
    for g in corpus[::9]:
        delta = g.max_degree
        for length in (1, 2, 3):
            assert cycle_stats(g, length).max_count <= delta**length


def test_cycles_are_valid(small_corpus):
    for g in small_corpus[::5]:
        for length in (1, 2, 3, 4):
            for c in enumerate_cycles(g, length):
                assert len(c.half_edges) == length
                assert len(set(c.vertices)) == length
                assert len(c.edge_ids) == length
                # consecutive half-edges chain through the graph
                for i, h in enumerate(c.half_edges):
                    assert g.source(h) == c.vertices[i]
                    assert g.target(h) == c.vertices[(i + 1) % length]


# -- tree fractions --------------------------------------------------------------


def test_cycle_balls_are_paths():
    for n, r in ((8, 2), (8, 3), (100, 10)):
        assert tree_fraction(cycle(n), r) == 1.0


def test_triangle_radius_one_fraction_zero():
    assert tree_fraction(cycle(3), 1) == 0.0


def test_random_cubic_mostly_tree_like():
    g, _ = random_regular(500, 3, seed=11)
    assert tree_fraction(g, 2) >= 0.9


def test_tree_fraction_one_iff_tree(corpus):
    for g in corpus[::11]:
        r_max = max(2, g.n)
        if is_tree(g):
            assert all(tree_fraction(g, r) == 1.0 for r in (1, 2, r_max))
        else:
            assert tree_fraction(g, r_max) < 1.0


def test_tree_fraction_girth_consistency(corpus):
    """All radius-r balls are trees exactly when no cycle is short enough to
    fit inside one, i.e. girth at least 2r + 2."""
    for g in corpus[::13]:
        girth = _girth(g)
        for r in (1, 2):
            if tree_fraction(g, r) == 1.0:
                assert girth is None or girth >= 2 * r + 2
            else:
                assert girth is not None and girth <= 2 * r + 1


def test_tree_fraction_validates_radius():
    with pytest.raises(ValueError):
        tree_fraction(cycle(3), 0)


# -- bouquets ----------------------------------------------------------------------


def test_bowtie_has_no_bouquet():
    assert find_bouquet(bowtie(), 0, 3, 3) is None


def test_two_triangles_on_a_path():
    # triangles {0,1,2} and {4,5,6} joined by the 2-path 0-3-4; from the
    # midpoint 3 both cycles sit at distance 1, within the k = 4 budget
    g = MultiGraph(
        7,
        ((0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 5), (5, 6), (6, 4)),
    )
    got = find_bouquet(g, 3, 4, 3)
    assert got is not None
    c1, c2 = got
    assert c1.disjoint_from(c2)
    assert {frozenset(c1.vertices), frozenset(c2.vertices)} == {
        frozenset({0, 1, 2}),
        frozenset({4, 5, 6}),
    }


def test_c8_has_no_triangle_bouquet():
    assert find_bouquet(cycle(8), 0, 5, 3) is None


def test_bouquet_needs_budget():
    with pytest.raises(ValueError):
        find_bouquet(bowtie(), 0, 2, 3)


def test_bouquet_respects_distance_budget(corpus):
    for g in corpus[::17]:
        got = find_bouquet(g, 0, 4, 3)
        if got is None:
            continue
        c1, c2 = got
        dist = g.distances_from(0)
        for c in (c1, c2):
            assert min(dist[u] for u in c.vertex_set) <= 4 - 3


# -- mass transport ---------------------------------------------------------------


def test_balance_is_exact_everywhere(corpus):
    for g in corpus[::21]:
        for r, length in ((1, 3), (2, 2)):
            rep = mass_transport_check(g, r, length)
            assert rep.balanced
            assert rep.lhs == rep.rhs


def test_c12_full_cycle():
    rep = mass_transport_check(cycle(12), 6, 12)
    assert rep.balanced
    assert rep.nr_average == 1
    assert rep.nr_bound == Fraction(1, 2)
    assert rep.nr_holds is True


def test_bowtie_both_triangles_in_reach():
    rep = mass_transport_check(bowtie(), 2, 3)
    assert rep.nr_average == 2
    assert rep.nr_bound == Fraction(2, 3)
    assert rep.nr_holds is True


def test_nr_check_skipped_when_balls_too_small():
    # radius 3 balls of the triangle hold 3 vertices < R is false (3 >= 3),
    # so force it with a bigger radius on a tiny graph
    rep = mass_transport_check(path(3), 4, 1)
    assert rep.nr_holds is None
    assert not rep.hypothesis_holds
    assert rep.balanced


def test_nr_bound_on_corpus(corpus):
    for g in corpus[::19]:
        rep = mass_transport_check(g, 2, 3)
        if rep.hypothesis_holds:
            assert rep.nr_holds is (rep.nr_average >= rep.nr_bound)
            assert rep.nr_holds


# -- ball histograms ---------------------------------------------------------------


def test_tv_of_identical_histograms_is_zero():
    h = bs_histogram(bowtie(), 2)
    assert tv_distance(h, h) == 0.0


def test_long_cycles_look_alike_locally():
    assert tv_distance(bs_histogram(cycle(100), 2), bs_histogram(cycle(101), 2)) == 0.0


def test_triangle_vs_c6_disjoint_types():
    assert tv_distance(bs_histogram(cycle(3), 1), bs_histogram(cycle(6), 1)) == 1.0


def test_histogram_counts_sum_to_n(corpus):
    for g in corpus[::23]:
        h = bs_histogram(g, 2)
        assert sum(h.values()) == g.n


def test_codes_separate_known_types():
    # a path's interior and endpoints differ; C4 vertices all agree
    assert len(bs_histogram(path(4), 1)) == 2
    assert len(bs_histogram(cycle(4), 1)) == 1
    # star center vs leaves
    assert len(bs_histogram(star(3), 1)) == 2


def test_codes_respect_rooted_isomorphism(small_corpus):
    """Vertices in the same orbit class of the same graph always share a ball
    code; across graphs, equal codes pin equal ball vertex counts."""
    from coverspectra.multigraph import ball

    for g in small_corpus[::6]:
        dist = orbit_distribution(g)
        for c in dist.classes:
            codes = {ball_code(g, v, 2) for v in c.members}
            assert len(codes) == 1


def test_ball_code_cap():
    with pytest.raises(ValueError, match="cap"):
        ball_code(complete(5), 0, 1, cap=3)
    with pytest.raises(ValueError, match="cap"):
        bs_histogram(complete(5), 1, cap=3)


def test_loop_and_parallel_codes_differ():
    lp = MultiGraph(1, ((0, 0),))
    de = MultiGraph(2, ((0, 1), (0, 1)))
    assert ball_code(lp, 0, 1) != ball_code(de, 0, 1)


def test_report_fields(zoo_graph):
    rep = local_stats_report(zoo_graph, 2)
    assert rep.radius == 2
    assert sum(rep.histogram.values()) == zoo_graph.n
    assert 0.0 <= rep.tree_fraction <= 1.0
    assert set(rep.cycle_fractions) == {1, 2, 3}
    for length, cnt in rep.cycle_max_counts.items():
        assert cnt <= zoo_graph.max_degree**length


# -- lifts converge locally to the cover -------------------------------------------


def test_lift_histograms_approach_cover_types():
    """Random n-lifts of the bowtie lose short cycles as n grows, so their
    radius-2 ball histogram drifts toward the two cover ball types weighted
    by the orbit proportions."""
    from coverspectra.generators import random_lift

    base = bowtie()
    dist = orbit_distribution(base)
    limit_hist: dict[str, int] = {}
    for c in dist.classes:
        tb = tree_ball(base, c.representative, 2)
        code = ball_code(tb.as_multigraph(), 0, 2)
        limit_hist[code] = limit_hist.get(code, 0) + len(c.members)

    # single lifts are noisy at n = 2, so the trend is asserted on the mean
    # over a fixed seed set
    seeds = range(10)
    means = []
    for n in (2, 4, 8, 16):
        total = 0.0
        for seed in seeds:
            lift, _ = random_lift(base, n, seed=seed)
            total += tv_distance(bs_histogram(lift, 2), limit_hist)
        means.append(total / 10)
    assert all(a >= b - 1e-12 for a, b in zip(means, means[1:]))
    assert means[-1] < means[0]
    assert means[-1] < 0.2
