"""Free-text query parsing and exhaustive ranked scoring.

Queries are tokenized, scanned left-to-right for the longest multiword
lexicon entry (up to 4 tokens, underscore-joined, stemmed), and every
sense of every matched lemma becomes a query sense. Each committed image
is scored with the sum of mean-tag-weight x similarity over the full
query-sense x tag-sense cross product; relevance normalizes that raw sum
by |query senses| x the image's total weight mass so it lands in [0, 1].
"""

from __future__ import annotations

import math
import random
import re
from dataclasses import dataclass, field

from .errors import EmptyQuery, InvalidRange, UncommittedImage
from .ontology import (
    DEFAULT_MAX_DISTANCE,
    POS_TAGS,
    TAXONOMY_RELATIONS,
    NeighborhoodConfig,
    OntologyGraph,
    Sense,
    SimilarityTable,
    SynsetId,
    distances_within,
    normalize_lemma,
)
from .repository import ImageRecord, Repository, clone_with_annotations

MAX_COLLOCATION_TOKENS = 4

_TOKEN_RE = re.compile(r"[\w']+")


@dataclass
class Query:
    raw_text: str
    collocations: list[str] = field(default_factory=list)
    query_senses: list[Sense] = field(default_factory=list)
    unresolved_tokens: list[str] = field(default_factory=list)


@dataclass(frozen=True)
class MatchDetail:
    query_sense: Sense
    image_sense: Sense
    mean_weight: float
    similarity: float

    @property
    def contribution(self) -> float:
        return self.mean_weight * self.similarity


@dataclass
class RankedResult:
    image_id: str
    raw_score: float
    relevance: float
    matches: list[MatchDetail]


@dataclass(frozen=True)
class AffectFilter:
    """Closed [lo, hi] ranges on the emotion axes; None leaves an axis open."""

    valence: tuple[float, float] | None = None
    arousal: tuple[float, float] | None = None
    dominance: tuple[float, float] | None = None

    def __post_init__(self):
        for name, bounds in (
            ("valence", self.valence),
            ("arousal", self.arousal),
            ("dominance", self.dominance),
        ):
            if bounds is None:
                continue
            lo, hi = bounds
            if not (math.isfinite(lo) and math.isfinite(hi)):
                raise InvalidRange(f"{name} bounds must be finite numbers")
            if lo > hi or lo < 1.0 or hi > 9.0:
                raise InvalidRange(f"{name} range [{lo}, {hi}] invalid")

    def is_empty(self) -> bool:
        return self.valence is None and self.arousal is None and self.dominance is None

    def admits(self, record: ImageRecord) -> bool:
        if self.is_empty():
            return True
        if record.emotion is None:
            return False
        for bounds, value in (
            (self.valence, record.emotion.valence),
            (self.arousal, record.emotion.arousal),
            (self.dominance, record.emotion.dominance),
        ):
            if bounds is not None and not bounds[0] <= value <= bounds[1]:
                return False
        return True


@dataclass(frozen=True)
class SearchOptions:
    max_distance: int = DEFAULT_MAX_DISTANCE
    min_relevance: float = 0.0
    limit: int | None = None
    rank_by_raw_score: bool = False


def parse_query(raw_text: str, graph: OntologyGraph) -> Query:
    """Collocation-aware parse; raises EmptyQuery when nothing resolves."""
    query = Query(raw_text)
    tokens = _TOKEN_RE.findall(raw_text.lower())
    seen_senses: set[Sense] = set()

    i = 0
    while i < len(tokens):
        matched = 0
        for n in range(min(MAX_COLLOCATION_TOKENS, len(tokens) - i), 0, -1):
            span = "_".join(tokens[i : i + n])
            candidates: list[str] = []
            for pos in POS_TAGS:
                for lemma in normalize_lemma(span, pos, graph):
                    if lemma not in candidates:
                        candidates.append(lemma)
            if not candidates:
                continue
            for lemma in candidates:
                if lemma not in query.collocations:
                    query.collocations.append(lemma)
                for sense in graph.senses_of(lemma):
                    if sense not in seen_senses:
                        seen_senses.add(sense)
                        query.query_senses.append(sense)
            matched = n
            break
        if matched:
            i += matched
        else:
            query.unresolved_tokens.append(tokens[i])
            i += 1

    if not query.query_senses:
        raise EmptyQuery(f"no token of {raw_text!r} resolves to any sense")
    return query


class _PairScorer:
    """Per-query similarity with memoized BFS distance maps per query synset."""

    def __init__(
        self,
        graph: OntologyGraph,
        table: SimilarityTable | None,
        max_distance: int,
    ):
        self.graph = graph
        self.table = table
        self.cfg = NeighborhoodConfig(max_distance, TAXONOMY_RELATIONS)
        self._maps: dict[SynsetId, dict[SynsetId, int]] = {}

    def score(self, query_sense: Sense, image_sense: Sense) -> float:
        if self.table is not None:
            stored = self.table.get(query_sense, image_sense)
            if stored is not None:
                return stored
        distances = self._maps.get(query_sense.synset)
        if distances is None:
            distances = distances_within(query_sense.synset, self.cfg, self.graph)
            self._maps[query_sense.synset] = distances
        distance = distances.get(image_sense.synset)
        if distance is None:
            return 0.0
        return 1.0 / (1.0 + distance)


def score_image(
    query: Query,
    image: ImageRecord,
    graph: OntologyGraph,
    table: SimilarityTable | None = None,
    max_distance: int = DEFAULT_MAX_DISTANCE,
    _scorer: _PairScorer | None = None,
) -> RankedResult:
    """Exhaustive cross-product score of one committed image against a query."""
    if not image.committed:
        raise UncommittedImage(f"image {image.image_id} is not committed")
    scorer = _scorer or _PairScorer(graph, table, max_distance)

    raw_score = 0.0
    matches: list[MatchDetail] = []
    weight_mass = 0.0
    for annotated in image.annotations:
        tag_weight = annotated.mean_weight()
        weight_mass += tag_weight
        for query_sense in query.query_senses:
            sim = scorer.score(query_sense, annotated.sense)
            if sim > 0.0:
                raw_score += tag_weight * sim
                matches.append(MatchDetail(query_sense, annotated.sense, tag_weight, sim))

    denominator = len(query.query_senses) * weight_mass
    relevance = raw_score / denominator if denominator > 0.0 else 0.0
    return RankedResult(image.image_id, raw_score, relevance, matches)


def _ranked(
    query: Query,
    images: list[ImageRecord],
    graph: OntologyGraph,
    table: SimilarityTable | None,
    options: SearchOptions,
) -> list[RankedResult]:
    scorer = _PairScorer(graph, table, options.max_distance)
    results = [
        score_image(query, image, graph, table, options.max_distance, _scorer=scorer)
        for image in images
    ]
    kept = [
        r for r in results if r.raw_score > 0.0 and r.relevance > options.min_relevance
    ]
    if options.rank_by_raw_score:
        kept.sort(key=lambda r: (-r.raw_score, r.image_id))
    else:
        kept.sort(key=lambda r: (-r.relevance, r.image_id))
    if options.limit is not None:
        kept = kept[: options.limit]
    return kept


def search(
    raw_text: str,
    repository: Repository,
    graph: OntologyGraph,
    table: SimilarityTable | None = None,
    options: SearchOptions | None = None,
) -> list[RankedResult]:
    """Score every committed image; relevance-descending, image id tiebreak."""
    options = options or SearchOptions()
    query = parse_query(raw_text, graph)
    return _ranked(query, repository.committed_images(), graph, table, options)


def search_with_filters(
    raw_text: str,
    repository: Repository,
    graph: OntologyGraph,
    table: SimilarityTable | None = None,
    options: SearchOptions | None = None,
    affect: AffectFilter | None = None,
    keyword: str | None = None,
) -> list[RankedResult]:
    """search() with pre-filters on the emotion tuple and legacy keyword."""
    options = options or SearchOptions()
    query = parse_query(raw_text, graph)
    images = repository.committed_images()
    if affect is not None:
        images = [image for image in images if affect.admits(image)]
    if keyword is not None:
        wanted = keyword.lower()
        images = [
            image
            for image in images
            if image.keyword is not None and image.keyword.lower() == wanted
        ]
    return _ranked(query, images, graph, table, options)


def subsample_tags(image: ImageRecord, fraction: float, seed: int) -> ImageRecord:
    """Seeded tag-subset view: ceil(fraction * tags) tags, original order kept."""
    if not image.committed:
        raise UncommittedImage(f"image {image.image_id} is not committed")
    if not 0.0 < fraction <= 1.0:
        raise ValueError(f"fraction {fraction} outside (0, 1]")
    if fraction == 1.0:
        return clone_with_annotations(image, image.annotations)

    count = math.ceil(fraction * len(image.annotations))
    rng = random.Random(seed)
    # Sample positions against a deterministic ordering of the tag list so
    # the draw does not depend on annotation insertion history.
    order = sorted(
        range(len(image.annotations)),
        key=lambda i: (
            image.annotations[i].sense.synset.pos,
            image.annotations[i].sense.synset.offset,
            image.annotations[i].sense.lemma,
        ),
    )
    chosen = {order[i] for i in rng.sample(range(len(order)), count)}
    kept = [annotated for i, annotated in enumerate(image.annotations) if i in chosen]
    return clone_with_annotations(image, kept)
