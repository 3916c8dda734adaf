"""Node distance and neighborhood expansion against an independent BFS oracle."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import bfs_distance, bfs_frontier, make_random_graph
from ontotag.errors import InvalidRange, UnknownSynset
from ontotag.ontology import (
    TAXONOMY_RELATIONS,
    NeighborhoodConfig,
    RelationType,
    Sense,
    SynsetId,
    neighborhood,
    node_distance,
)


def sid(n: int) -> SynsetId:
    return SynsetId("n", n)


class TestNodeDistance:
    def test_identity_is_zero(self, chain_graph):
        cfg = NeighborhoodConfig(0)
        assert node_distance(sid(2), sid(2), cfg, chain_graph) == 0

    def test_two_edge_chain(self, chain_graph):
        cfg = NeighborhoodConfig(5, TAXONOMY_RELATIONS)
        assert node_distance(sid(3), sid(1), cfg, chain_graph) == 2

    def test_symmetric(self, chain_graph):
        cfg = NeighborhoodConfig(5)
        assert node_distance(sid(1), sid(3), cfg, chain_graph) == 2

    def test_cutoff_returns_none(self, chain_graph):
        cfg = NeighborhoodConfig(1)
        assert node_distance(sid(3), sid(1), cfg, chain_graph) is None

    def test_single_relation_set_still_walks_both_ways(self, chain_graph):
        # {hypernym} alone induces the same undirected edges as the pair.
        up = NeighborhoodConfig(5, frozenset({RelationType.HYPERNYM}))
        down = NeighborhoodConfig(5, frozenset({RelationType.HYPONYM}))
        assert node_distance(sid(1), sid(3), up, chain_graph) == 2
        assert node_distance(sid(3), sid(1), down, chain_graph) == 2

    def test_unknown_synset(self, chain_graph):
        with pytest.raises(UnknownSynset):
            node_distance(sid(99), sid(1), NeighborhoodConfig(5), chain_graph)

    def test_max_distance_cap_enforced(self):
        with pytest.raises(InvalidRange):
            NeighborhoodConfig(31)

    def test_matches_bfs_oracle_on_random_graphs(self):
        import random

        rng = random.Random(20240501)
        cfg = NeighborhoodConfig(30)
        for trial in range(10):
            graph, adjacency = make_random_graph(seed=trial, size=30)
            for _ in range(50):
                a, b = sid(rng.randrange(30)), sid(rng.randrange(30))
                assert node_distance(a, b, cfg, graph) == bfs_distance(adjacency, a, b, 30)


class TestMetricProperties:
    @given(seed=st.integers(0, 10_000), pair=st.tuples(st.integers(0, 9), st.integers(0, 9)))
    @settings(max_examples=200, deadline=None)
    def test_symmetry_and_identity(self, seed, pair):
        graph, _ = make_random_graph(seed=seed, size=10)
        cfg = NeighborhoodConfig(30)
        a, b = sid(pair[0]), sid(pair[1])
        d_ab = node_distance(a, b, cfg, graph)
        assert d_ab == node_distance(b, a, cfg, graph)
        assert (d_ab == 0) == (a == b)

    @given(
        seed=st.integers(0, 10_000),
        triple=st.tuples(st.integers(0, 9), st.integers(0, 9), st.integers(0, 9)),
    )
    @settings(max_examples=200, deadline=None)
    def test_triangle_inequality(self, seed, triple):
        graph, _ = make_random_graph(seed=seed, size=10)
        cfg = NeighborhoodConfig(30)
        a, b, c = (sid(i) for i in triple)
        d_ab = node_distance(a, b, cfg, graph)
        d_bc = node_distance(b, c, cfg, graph)
        d_ac = node_distance(a, c, cfg, graph)
        if d_ab is not None and d_bc is not None:
            assert d_ac is not None and d_ac <= d_ab + d_bc


class TestNeighborhood:
    def test_distance_zero_is_seed_senses(self, chain_graph):
        result = neighborhood(sid(2), NeighborhoodConfig(0), chain_graph)
        assert result == {Sense("dog", sid(2)), Sense("domestic_dog", sid(2))}

    def test_one_hop_chain(self, chain_graph):
        result = neighborhood(sid(2), NeighborhoodConfig(1), chain_graph)
        lemmas = {s.lemma for s in result}
        assert lemmas == {"animal", "dog", "domestic_dog", "puppy"}

    def test_exclude_synonyms_drops_seed_synset(self, chain_graph):
        cfg = NeighborhoodConfig(1, include_synonyms=False)
        result = neighborhood(sid(2), cfg, chain_graph)
        assert {s.lemma for s in result} == {"animal", "puppy"}

    def test_monotone_in_distance(self):
        for seed in range(5):
            graph, _ = make_random_graph(seed=seed, size=30)
            previous = set()
            for d in range(6):
                current = neighborhood(sid(7), NeighborhoodConfig(d), graph)
                assert current >= previous
                previous = current

    def test_matches_bfs_frontier_oracle(self):
        graph, adjacency = make_random_graph(seed=77, size=30)
        reached = bfs_frontier(adjacency, sid(4), 3)
        expected = {
            Sense(lemma, node) for node in reached for lemma in graph.get(node).lemmas
        }
        assert neighborhood(sid(4), NeighborhoodConfig(3), graph) == expected

    def test_unknown_seed(self, chain_graph):
        with pytest.raises(UnknownSynset):
            neighborhood(sid(42), NeighborhoodConfig(1), chain_graph)
