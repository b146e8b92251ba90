import math

import pytest

from coverspectra.cover import orbit_distribution
from coverspectra.multigraph import CyclomaticClass, MultiGraph, cyclomatic_class
from coverspectra.rho import rho_tree
from coverspectra.spectra import eigen_spectrum
from coverspectra.generators import (
    biregular,
    bowtie,
    canonical_key,
    complete,
    cycle,
    make,
    path,
    random_lift,
    random_regular,
    small_connected_multigraphs,
    star,
    theta,
    two_cycles_glued,
)


# -- fixed families ---------------------------------------------------------------


def test_bowtie_shape():
    g = bowtie()
    assert (g.n, g.m) == (5, 6)
    assert g.degrees == (4, 2, 2, 2, 2)


def test_cycle_spectrum_closed_form():
    s = eigen_spectrum(cycle(5))
    want = sorted((2 * math.cos(2 * math.pi * j / 5) for j in range(5)), reverse=True)
    assert s.eigenvalues == pytest.approx(want, abs=1e-12)


def test_cycle_edge_cases():
    assert cycle(1).edges == ((0, 0),)
    assert cycle(2).degrees == (2, 2)
    assert path(1).m == 0


def test_theta_shape():
    g = theta(2, 2, 2)
    assert (g.n, g.m) == (5, 6)
    assert sorted(g.degrees) == [2, 2, 2, 3, 3]
    assert theta(1, 1, 1).m == 3  # three parallel edges


def test_biregular_is_complete_bipartite():
    g = biregular(2, 3)
    assert (g.n, g.m) == (5, 6)
    assert sorted(g.degrees) == [2, 2, 2, 3, 3]


def test_two_cycles_glued_shape():
    g = two_cycles_glued(20, 20)
    assert g.n == 39
    assert cyclomatic_class(g) is CyclomaticClass.MULTICYCLIC
    assert g.deg(0) == 4
    small = two_cycles_glued(3, 3)
    assert canonical_key(small) == canonical_key(bowtie())


def test_make_dispatch():
    g, info = make("bowtie")
    assert g.edges == bowtie().edges and info == {}
    g, info = make("cycle", n=7)
    assert g.n == 7
    g, info = make("random_regular", n=10, d=3, seed=1)
    assert info["simple"] and info["connected"]
    with pytest.raises(ValueError, match="unknown family"):
        make("petersen")


def test_family_validation():
    with pytest.raises(ValueError):
        cycle(0)
    with pytest.raises(ValueError):
        theta(0, 1, 1)
    with pytest.raises(ValueError):
        star(0)
    with pytest.raises(ValueError):
        two_cycles_glued(1, 0)


# -- random regular ----------------------------------------------------------------


def test_random_regular_basics():
    g, info = random_regular(20, 3, seed=7)
    assert g.degrees == (3,) * 20
    assert info["simple"] and info["connected"]
    assert info["attempts"] >= 1


def test_random_regular_deterministic():
    a, _ = random_regular(30, 3, seed=5)
    b, _ = random_regular(30, 3, seed=5)
    c, _ = random_regular(30, 3, seed=6)
    assert a.edges == b.edges
    assert a.edges != c.edges


def test_random_regular_odd_product_rejected():
    with pytest.raises(ValueError, match="even"):
        random_regular(5, 3, seed=0)
    with pytest.raises(ValueError):
        random_regular(4, 3, seed=0, retries=0)


def test_random_regular_exhausted_budget_is_flagged():
    # d = n forces loops/multi-edges in every configuration draw
    g, info = random_regular(2, 4, seed=3, retries=5)
    assert g.degrees == (4, 4)
    assert info["attempts"] == 5
    assert not info["simple"]


# -- lifts ------------------------------------------------------------------------


def test_identity_degree_lift_is_isomorphic():
    for base in (bowtie(), cycle(5), MultiGraph(2, ((0, 1), (0, 1), (0, 0)))):
        lift, spec = random_lift(base, 1, seed=9)
        assert canonical_key(lift) == canonical_key(base)
        assert spec.degree == 1


def test_lift_degree_sequence():
    base = bowtie()
    for n in (2, 3, 8):
        lift, _ = random_lift(base, n, seed=2)
        assert lift.n == base.n * n
        assert sorted(lift.degrees) == sorted(base.degrees * n)


def test_lift_preserves_lambda1():
    base = bowtie()
    lam = eigen_spectrum(base).lambda1
    for seed in (0, 1, 2):
        lift, _ = random_lift(base, 6, seed=seed)
        if not lift.is_connected:
            continue
        assert eigen_spectrum(lift).lambda1 == pytest.approx(lam, abs=1e-8)


def test_lift_preserves_orbit_proportions():
    base = bowtie()
    want = sorted(orbit_distribution(base).proportions)
    for n in (2, 5):
        lift, _ = random_lift(base, n, seed=4)
        if not lift.is_connected:
            continue
        assert sorted(orbit_distribution(lift).proportions) == want


def test_lift_preserves_rho_bracket():
    base = bowtie()
    rb = rho_tree(base)
    lift, _ = random_lift(base, 4, seed=1)
    if lift.is_connected:
        rl = rho_tree(lift)
        assert abs(rl.value - rb.value) <= rb.width + rl.width + 1e-12


def test_loop_lift_follows_permutation():
    base = MultiGraph(1, ((0, 0),))
    lift, spec = random_lift(base, 4, seed=0)
    assert lift.n == 4 and lift.m == 4
    assert lift.degrees == (2, 2, 2, 2)
    perm = spec.permutations[0]
    assert lift.edges == tuple((j, perm[j]) for j in range(4))


def test_lift_validation():
    with pytest.raises(ValueError):
        random_lift(bowtie(), 0, seed=1)


# -- exhaustive corpus ---------------------------------------------------------------


def test_corpus_counts(corpus, small_corpus):
    assert len(corpus) == 1177
    assert len(small_corpus) == 114
    trees = sum(1 for g in corpus if g.m == g.n - 1)
    unicyclic = sum(1 for g in corpus if g.m == g.n)
    assert trees == 8
    assert unicyclic == 36
    assert trees + unicyclic + 1133 == len(corpus)


def test_corpus_members_are_connected_and_bounded(corpus):
    for g in corpus:
        assert g.n <= 5 and g.m <= 7
        assert g.is_connected


def test_corpus_has_no_isomorphic_duplicates(small_corpus):
    keys = {canonical_key(g) for g in small_corpus}
    assert len(keys) == len(small_corpus)


def test_corpus_is_deterministic(corpus):
    again = small_connected_multigraphs(5, 7)
    assert [g.edges for g in again] == [g.edges for g in corpus]


def test_corpus_contains_the_named_small_graphs(corpus, small_corpus):
    small_keys = {canonical_key(g) for g in small_corpus}
    for named in (cycle(3), cycle(4), path(4), star(3), MultiGraph(1, ((0, 0),))):
        assert canonical_key(named) in small_keys
    full_keys = {canonical_key(g) for g in corpus}
    for named in (complete(4), bowtie(), theta(2, 2, 2), biregular(2, 3)):
        assert canonical_key(named) in full_keys


def test_canonical_key_guard():
    with pytest.raises(ValueError, match="n <= 8"):
        canonical_key(cycle(9))
