"""Path similarity, table overrides, and the SimPairs file format."""

import io

import pytest

from conftest import make_random_graph, sense
from ontotag.errors import MalformedLine, ScoreOutOfRange, UnknownSense, UnknownSynset
from ontotag.ontology import (
    Sense,
    SimilarityTable,
    SynsetId,
    load_similarity_pairs,
    parse_sense_ref,
    similarity,
)


class TestPathMeasure:
    def test_identity_scores_one(self, chain_graph):
        s = sense(chain_graph, "dog")
        assert similarity(s, s, chain_graph) == 1.0

    def test_synonyms_score_one(self, chain_graph):
        a = sense(chain_graph, "dog")
        b = sense(chain_graph, "domestic_dog")
        assert a.synset == b.synset
        assert similarity(a, b, chain_graph) == 1.0

    def test_two_edge_chain(self, chain_graph):
        puppy = sense(chain_graph, "puppy")
        animal = sense(chain_graph, "animal")
        assert similarity(puppy, animal, chain_graph) == pytest.approx(1 / 3, abs=0)

    def test_no_path_within_cutoff_is_zero(self, chain_graph):
        puppy = sense(chain_graph, "puppy")
        animal = sense(chain_graph, "animal")
        assert similarity(puppy, animal, chain_graph, max_distance=1) == 0.0

    def test_meronym_edges_do_not_count(self, basic_graph):
        # wheel connects to car only through a part-whole edge.
        wheel = sense(basic_graph, "wheel")
        car = sense(basic_graph, "car")
        assert similarity(wheel, car, basic_graph) == 0.0

    def test_unknown_sense_rejected(self, chain_graph):
        ghost = Sense("ghost", SynsetId("n", 1))
        with pytest.raises(UnknownSynset):
            similarity(ghost, sense(chain_graph, "dog"), chain_graph)

    def test_symmetry_and_bounds_on_random_graph(self):
        graph, _ = make_random_graph(seed=3, size=25)
        senses = [Sense(s.lemmas[0], s.id) for s in graph]
        for a in senses[:10]:
            for b in senses[:10]:
                ab = similarity(a, b, graph)
                assert 0.0 <= ab <= 1.0
                assert ab == similarity(b, a, graph)


class TestTableOverride:
    def test_table_wins_over_path(self, chain_graph):
        table = SimilarityTable()
        puppy = sense(chain_graph, "puppy")
        animal = sense(chain_graph, "animal")
        table.put(puppy, animal, 0.42)
        assert similarity(puppy, animal, chain_graph, table) == 0.42

    def test_symmetric_lookup(self, chain_graph):
        table = SimilarityTable()
        a, b = sense(chain_graph, "dog"), sense(chain_graph, "puppy")
        table.put(a, b, 0.86)
        assert table.get(b, a) == 0.86

    def test_out_of_range_rejected(self, chain_graph):
        table = SimilarityTable()
        with pytest.raises(ScoreOutOfRange):
            table.put(sense(chain_graph, "dog"), sense(chain_graph, "puppy"), 1.5)


class TestSimPairsFormat:
    def test_basic_pair(self, basic_graph):
        stream = io.StringIO("dog#n#1\tcat#n#1\t0.86\n")
        table = load_similarity_pairs(stream, basic_graph)
        dog = sense(basic_graph, "dog")
        cat = sense(basic_graph, "cat")
        assert table.get(dog, cat) == 0.86
        assert table.get(cat, dog) == 0.86

    def test_empty_stream(self, basic_graph):
        assert len(load_similarity_pairs(io.StringIO(""), basic_graph)) == 0

    def test_comments_allowed(self, basic_graph):
        stream = io.StringIO("# header\ndog#n#1\tcat#n#1\t0.5\n")
        assert len(load_similarity_pairs(stream, basic_graph)) == 1

    def test_score_out_of_range(self, basic_graph):
        with pytest.raises(ScoreOutOfRange):
            load_similarity_pairs(io.StringIO("dog#n#1\tcat#n#1\t1.5\n"), basic_graph)

    def test_later_duplicate_overwrites(self, basic_graph):
        stream = io.StringIO("dog#n#1\tcat#n#1\t0.3\ncat#n#1\tdog#n#1\t0.9\n")
        table = load_similarity_pairs(stream, basic_graph)
        assert table.get(sense(basic_graph, "dog"), sense(basic_graph, "cat")) == 0.9
        assert len(table) == 1

    def test_malformed_line(self, basic_graph):
        with pytest.raises(MalformedLine):
            load_similarity_pairs(io.StringIO("dog#n#1 cat#n#1 0.5\n"), basic_graph)

    def test_unresolvable_ref(self, basic_graph):
        with pytest.raises(UnknownSense):
            load_similarity_pairs(io.StringIO("dog#n#7\tcat#n#1\t0.5\n"), basic_graph)


class TestSenseRefs:
    def test_sense_numbers_are_one_based_lookup_positions(self, basic_graph):
        # "run" appears as both a verb synset lemma and in no noun synset.
        ref = parse_sense_ref("run#v#1", basic_graph)
        assert ref.lemma == "run"
        assert ref.synset.pos == "v"

    def test_bad_pos(self, basic_graph):
        with pytest.raises(UnknownSense):
            parse_sense_ref("dog#x#1", basic_graph)

    def test_bad_number(self, basic_graph):
        with pytest.raises(UnknownSense):
            parse_sense_ref("dog#n#zero", basic_graph)
