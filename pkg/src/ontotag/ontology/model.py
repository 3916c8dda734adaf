"""Core graph model: synsets, senses, relations and the immutable graph.

A synset is one concept node; a sense is a (lemma, synset) pairing — the
unit images get tagged with. The four supported relations are stored as
inverse pairs, so every edge can be walked in both directions.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Mapping, Sequence

from ..errors import DanglingPointer, InvalidRange, UnknownSynset

POS_TAGS = ("n", "v", "a", "r")
POS_NAMES = {"n": "noun", "v": "verb", "a": "adj", "r": "adv"}

# Hard upper bound on any node-distance / neighborhood traversal.
MAX_DISTANCE_CAP = 30


class RelationType(Enum):
    HYPERNYM = "hypernym"
    HYPONYM = "hyponym"
    HOLONYM = "holonym"
    MERONYM = "meronym"

    @property
    def inverse(self) -> "RelationType":
        return _INVERSES[self]


_INVERSES = {
    RelationType.HYPERNYM: RelationType.HYPONYM,
    RelationType.HYPONYM: RelationType.HYPERNYM,
    RelationType.HOLONYM: RelationType.MERONYM,
    RelationType.MERONYM: RelationType.HOLONYM,
}

ALL_RELATIONS = frozenset(RelationType)
TAXONOMY_RELATIONS = frozenset({RelationType.HYPERNYM, RelationType.HYPONYM})


@dataclass(frozen=True, order=True)
class SynsetId:
    pos: str
    offset: int

    def __post_init__(self):
        if self.pos not in POS_TAGS:
            raise ValueError(f"unknown part-of-speech tag {self.pos!r}")
        if self.offset < 0:
            raise ValueError(f"negative synset offset {self.offset}")

    def __str__(self) -> str:
        return f"{self.pos}{self.offset}"


@dataclass(frozen=True)
class Synset:
    id: SynsetId
    lemmas: tuple[str, ...]
    gloss: str
    relations: tuple[tuple[RelationType, SynsetId], ...]


@dataclass(frozen=True, order=True)
class Sense:
    lemma: str
    synset: SynsetId

    def __str__(self) -> str:
        return f"{self.lemma}#{self.synset.pos}#{self.synset.offset}"


@dataclass(frozen=True)
class NeighborhoodConfig:
    """Traversal settings: depth cap, admitted relations, seed-synonym toggle."""

    max_distance: int
    relation_set: frozenset[RelationType] = ALL_RELATIONS
    include_synonyms: bool = True

    def __post_init__(self):
        if not 0 <= self.max_distance <= MAX_DISTANCE_CAP:
            raise InvalidRange(
                f"max_distance {self.max_distance} outside [0, {MAX_DISTANCE_CAP}]"
            )


def normalize_surface(text: str) -> str:
    """Lowercase and join spaces with underscores (the lemma key form)."""
    return "_".join(text.strip().lower().split())


class OntologyGraph:
    """Immutable synset graph with a lemma index and morphological exceptions.

    Construct through :func:`build_graph` (or the file parsers); instances
    are safe to share across threads, all accessors are pure reads.
    """

    def __init__(
        self,
        synsets: Mapping[SynsetId, Synset],
        lemma_index: Mapping[str, tuple[SynsetId, ...]],
        exception_forms: Mapping[str, tuple[str, ...]],
    ):
        self._synsets = dict(synsets)
        self._lemma_index = dict(lemma_index)
        self._exception_forms = dict(exception_forms)
        self._adjacency_cache: dict[frozenset, dict[SynsetId, tuple[SynsetId, ...]]] = {}

    def __len__(self) -> int:
        return len(self._synsets)

    def __contains__(self, synset_id: SynsetId) -> bool:
        return synset_id in self._synsets

    def __iter__(self):
        return iter(self._synsets.values())

    @property
    def exception_forms(self) -> Mapping[str, tuple[str, ...]]:
        return self._exception_forms

    @property
    def lemma_index(self) -> Mapping[str, tuple[SynsetId, ...]]:
        return self._lemma_index

    def get(self, synset_id: SynsetId) -> Synset:
        try:
            return self._synsets[synset_id]
        except KeyError:
            raise UnknownSynset(f"synset {synset_id} not in graph") from None

    def has_lemma(self, lemma: str) -> bool:
        return lemma in self._lemma_index

    def synsets_for_lemma(self, lemma: str, pos: str | None = None) -> list[SynsetId]:
        ids = self._lemma_index.get(lemma, ())
        if pos is None:
            return list(ids)
        return [sid for sid in ids if sid.pos == pos]

    def senses_of(self, lemma: str, pos: str | None = None) -> list[Sense]:
        """One sense per synset containing ``lemma``, ordered by (pos, offset)."""
        return [Sense(lemma, sid) for sid in self.synsets_for_lemma(lemma, pos)]

    def contains_sense(self, sense: Sense) -> bool:
        synset = self._synsets.get(sense.synset)
        return synset is not None and sense.lemma in synset.lemmas

    def relation_count(self) -> int:
        return sum(len(s.relations) for s in self._synsets.values())

    def undirected_adjacency(
        self, relation_set: frozenset[RelationType]
    ) -> Mapping[SynsetId, tuple[SynsetId, ...]]:
        """Neighbor table for BFS: an edge is walkable from either end when
        its type or the inverse is admitted. Cached per relation set (the
        graph is immutable, so a lazily filled cache stays consistent)."""
        key = frozenset(relation_set)
        cached = self._adjacency_cache.get(key)
        if cached is None:
            cached = {
                sid: tuple(
                    target
                    for relation, target in synset.relations
                    if relation in key or relation.inverse in key
                )
                for sid, synset in self._synsets.items()
            }
            self._adjacency_cache[key] = cached
        return cached


RawSynset = tuple[Sequence[str], str, Sequence[tuple[RelationType, SynsetId]]]


def build_graph(
    raw_synsets: Mapping[SynsetId, RawSynset],
    exception_forms: Mapping[str, Sequence[str]] | None = None,
) -> OntologyGraph:
    """Resolve raw parsed synsets into a validated, inverse-closed graph.

    Every relation target must exist (DanglingPointer otherwise, raised after
    the whole input was consumed); the inverse of every edge is added when
    missing; self-loops are discarded.
    """
    dangling: list[tuple[SynsetId, SynsetId]] = []
    edges: dict[SynsetId, set[tuple[RelationType, SynsetId]]] = {
        sid: set() for sid in raw_synsets
    }
    for sid, (_, _, relations) in raw_synsets.items():
        for rel, target in relations:
            if target not in raw_synsets:
                dangling.append((sid, target))
                continue
            if target == sid:
                continue
            edges[sid].add((rel, target))
            edges[target].add((rel.inverse, sid))
    if dangling:
        source, target = sorted(dangling)[0]
        raise DanglingPointer(source, target)

    synsets: dict[SynsetId, Synset] = {}
    lemma_index: dict[str, list[SynsetId]] = {}
    for sid in sorted(raw_synsets):
        lemmas, gloss, _ = raw_synsets[sid]
        synsets[sid] = Synset(sid, tuple(lemmas), gloss, tuple(sorted(edges[sid], key=_edge_key)))
        for lemma in lemmas:
            targets = lemma_index.setdefault(lemma, [])
            if sid not in targets:
                targets.append(sid)

    index = {lemma: tuple(sorted(ids)) for lemma, ids in lemma_index.items()}
    exceptions = {
        form: tuple(bases) for form, bases in (exception_forms or {}).items()
    }
    return OntologyGraph(synsets, index, exceptions)


def _edge_key(edge: tuple[RelationType, SynsetId]):
    rel, target = edge
    return (rel.value, target)


def merge_exception_forms(
    maps: Iterable[Mapping[str, Sequence[str]]],
) -> dict[str, tuple[str, ...]]:
    """Union several per-POS exception maps, preserving first-seen base order."""
    merged: dict[str, list[str]] = {}
    for table in maps:
        for form, bases in table.items():
            out = merged.setdefault(form, [])
            for base in bases:
                if base not in out:
                    out.append(base)
    return {form: tuple(bases) for form, bases in merged.items()}
