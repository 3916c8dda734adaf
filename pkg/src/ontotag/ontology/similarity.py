"""Sense-pair semantic similarity: precomputed table with a path fallback.

A loaded table entry always wins; otherwise the score is 1 / (1 + d) for
the shortest hypernym/hyponym path d between the two synsets, and 0 when
no path exists within the distance cap. Senses sharing a synset are
synonyms and score 1 by construction (d = 0).
"""

from __future__ import annotations

from typing import Iterator, TextIO

from ..errors import MalformedLine, ScoreOutOfRange, UnknownSense, UnknownSynset
from .graph_ops import node_distance
from .model import (
    MAX_DISTANCE_CAP,
    POS_TAGS,
    TAXONOMY_RELATIONS,
    NeighborhoodConfig,
    OntologyGraph,
    Sense,
)

DEFAULT_MAX_DISTANCE = 10


def _pair_key(a: Sense, b: Sense) -> tuple[Sense, Sense]:
    return (a, b) if a <= b else (b, a)


class SimilarityTable:
    """Symmetric sense-pair score table; unordered keys, scores in [0, 1]."""

    def __init__(self):
        self._entries: dict[tuple[Sense, Sense], float] = {}

    def put(self, a: Sense, b: Sense, score: float) -> None:
        if not 0.0 <= score <= 1.0:
            raise ScoreOutOfRange(score)
        self._entries[_pair_key(a, b)] = score

    def get(self, a: Sense, b: Sense) -> float | None:
        return self._entries.get(_pair_key(a, b))

    def __len__(self) -> int:
        return len(self._entries)

    def __iter__(self) -> Iterator[tuple[Sense, Sense, float]]:
        for (a, b), score in self._entries.items():
            yield a, b, score


def parse_sense_ref(text: str, graph: OntologyGraph) -> Sense:
    """Resolve a ``lemma#pos#senseNo`` reference (1-based sense numbering)."""
    parts = text.strip().split("#")
    if len(parts) != 3 or parts[1] not in POS_TAGS:
        raise UnknownSense(f"bad sense reference {text!r}")
    lemma, pos, number = parts
    try:
        index = int(number) - 1
    except ValueError:
        raise UnknownSense(f"bad sense number in {text!r}") from None
    senses = graph.senses_of(lemma, pos)
    if index < 0 or index >= len(senses):
        raise UnknownSense(f"{text!r} does not resolve to a loaded sense")
    return senses[index]


def load_similarity_pairs(stream: TextIO, graph: OntologyGraph) -> SimilarityTable:
    """Parse SimPairs lines: ``ref TAB ref TAB score``; later pairs overwrite."""
    table = SimilarityTable()
    for line_no, line in enumerate(stream, start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        parts = stripped.split("\t")
        if len(parts) != 3:
            raise MalformedLine(line_no, f"expected 3 tab fields, got {len(parts)}")
        try:
            score = float(parts[2])
        except ValueError:
            raise MalformedLine(line_no, f"bad score {parts[2]!r}") from None
        a = parse_sense_ref(parts[0], graph)
        b = parse_sense_ref(parts[1], graph)
        table.put(a, b, score)
    return table


def similarity(
    a: Sense,
    b: Sense,
    graph: OntologyGraph,
    table: SimilarityTable | None = None,
    max_distance: int = MAX_DISTANCE_CAP,
) -> float:
    """Score a sense pair in [0, 1]; table entries override the path measure."""
    if not graph.contains_sense(a):
        raise UnknownSynset(f"sense {a} not in graph")
    if not graph.contains_sense(b):
        raise UnknownSynset(f"sense {b} not in graph")
    if table is not None:
        stored = table.get(a, b)
        if stored is not None:
            return stored
    cfg = NeighborhoodConfig(max_distance, TAXONOMY_RELATIONS)
    distance = node_distance(a.synset, b.synset, cfg, graph)
    if distance is None:
        return 0.0
    return 1.0 / (1.0 + distance)
