"""Benchmark harness: judged queries, per-rank precision/recall, curves.

recall is reported two ways because the two readings differ: result_count
(how many images a query returned) and normalized recall (fraction of the
judged-relevant set found in the top k). Per-rank curve points average
across the queries that still have results at that rank; queries with zero
results contribute precision 0 at rank 1 only.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from statistics import mean
from typing import Sequence, TextIO

from .errors import (
    DomainError,
    EmptyJudgment,
    InvalidK,
    InvalidSpec,
    MalformedLine,
    UnknownImage,
)
from .ontology import (
    MAX_DISTANCE_CAP,
    TAXONOMY_RELATIONS,
    NeighborhoodConfig,
    OntologyGraph,
    RelationType,
    Sense,
    SynsetId,
    build_graph,
    distances_within,
)
from .repository import EmotionTuple, Repository
from .retrieval import SearchOptions, search, subsample_tags


@dataclass(frozen=True)
class JudgedQuery:
    query_text: str
    relevant_image_ids: frozenset[str]

    def __post_init__(self):
        if not self.relevant_image_ids:
            raise EmptyJudgment(f"query {self.query_text!r} has no relevant images")


@dataclass
class QueryOutcome:
    query_text: str
    result_count: int
    precision_at_k: list[float]
    recall_at_k: list[float]
    average_precision: float
    error: str | None = None


@dataclass(frozen=True)
class CurvePoint:
    rank: int
    mean_precision: float
    mean_recall: float


@dataclass
class EvaluationReport:
    per_query: list[QueryOutcome]
    mean_precision: float
    mean_result_count: float
    curve: list[CurvePoint]


def precision_at_k(ranked: Sequence[str], relevant: set[str] | frozenset[str], k: int) -> float:
    """Relevant fraction of the top k (denominator capped by list length)."""
    if k < 1:
        raise InvalidK(f"k must be >= 1, got {k}")
    if not ranked:
        return 0.0
    hits = sum(1 for image_id in ranked[:k] if image_id in relevant)
    return hits / min(k, len(ranked))


@dataclass(frozen=True)
class RecallProfile:
    result_count: int
    normalized_recall_at_k: tuple[float, ...]


def recall_profile(ranked: Sequence[str], relevant: set[str] | frozenset[str]) -> RecallProfile:
    if not relevant:
        raise EmptyJudgment("judgment set is empty")
    hits = 0
    profile = []
    for image_id in ranked:
        if image_id in relevant:
            hits += 1
        profile.append(hits / len(relevant))
    return RecallProfile(len(ranked), tuple(profile))


def _query_outcome(
    judged: JudgedQuery,
    repository: Repository,
    graph: OntologyGraph,
    table,
    options: SearchOptions,
) -> QueryOutcome:
    try:
        results = search(judged.query_text, repository, graph, table, options)
    except DomainError as exc:
        return QueryOutcome(judged.query_text, 0, [], [], 0.0, error=str(exc))
    ranked_ids = [r.image_id for r in results]
    precisions = [
        precision_at_k(ranked_ids, judged.relevant_image_ids, k)
        for k in range(1, len(ranked_ids) + 1)
    ]
    recalls = list(recall_profile(ranked_ids, judged.relevant_image_ids).normalized_recall_at_k)
    return QueryOutcome(
        judged.query_text,
        len(ranked_ids),
        precisions,
        recalls,
        mean(precisions) if precisions else 0.0,
    )


def run_benchmark(
    queries: Sequence[JudgedQuery],
    repository: Repository,
    graph: OntologyGraph,
    table=None,
    options: SearchOptions | None = None,
    workers: int = 1,
) -> EvaluationReport:
    """Search every judged query and aggregate per-rank means across queries.

    With workers > 1 the (pure, snapshot-reading) queries run on a thread
    pool; outcomes keep query order, so the report is identical either way.
    """
    if not queries:
        raise ValueError("benchmark needs at least one judged query")
    known = set(repository.images)
    for judged in queries:
        missing = judged.relevant_image_ids - known
        if missing:
            raise UnknownImage(
                f"judgments for {judged.query_text!r} reference unknown images: "
                + ", ".join(sorted(missing))
            )

    options = options or SearchOptions()
    if workers > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=workers) as pool:
            outcomes = list(
                pool.map(
                    lambda judged: _query_outcome(judged, repository, graph, table, options),
                    queries,
                )
            )
    else:
        outcomes = [
            _query_outcome(judged, repository, graph, table, options) for judged in queries
        ]

    max_rank = max((o.result_count for o in outcomes), default=0)
    curve: list[CurvePoint] = []
    for k in range(1, max_rank + 1):
        precisions = [o.precision_at_k[k - 1] for o in outcomes if o.result_count >= k]
        recalls = [o.recall_at_k[k - 1] for o in outcomes if o.result_count >= k]
        if k == 1:
            # Zero-result queries count as a miss at the first rank.
            zeros = [0.0 for o in outcomes if o.result_count == 0]
            precisions += zeros
            recalls += zeros
        curve.append(CurvePoint(k, mean(precisions), mean(recalls)))

    return EvaluationReport(
        per_query=outcomes,
        mean_precision=mean(o.average_precision for o in outcomes),
        mean_result_count=mean(o.result_count for o in outcomes),
        curve=curve,
    )


def emit_curve_csv(report: EvaluationReport, stream: TextIO) -> None:
    """Write the per-rank curve: header plus one 6-decimal row per rank."""
    stream.write("rank,mean_precision,mean_recall\n")
    for point in report.curve:
        stream.write(f"{point.rank},{point.mean_precision:.6f},{point.mean_recall:.6f}\n")


# -- judged-query file format ---------------------------------------------


def load_judged_queries(stream: TextIO) -> list[JudgedQuery]:
    """Lines of ``<query text> TAB <comma-separated relevant ids>``."""
    queries = []
    for line_no, line in enumerate(stream, start=1):
        stripped = line.rstrip("\n")
        if not stripped.strip() or stripped.lstrip().startswith("#"):
            continue
        parts = stripped.split("\t")
        if len(parts) != 2:
            raise MalformedLine(line_no, f"expected 2 tab fields, got {len(parts)}")
        ids = frozenset(part.strip() for part in parts[1].split(",") if part.strip())
        if not ids:
            raise MalformedLine(line_no, "no relevant image ids")
        queries.append(JudgedQuery(parts[0].strip(), ids))
    return queries


def save_judged_queries(queries: Sequence[JudgedQuery], stream: TextIO) -> None:
    for judged in queries:
        stream.write(f"{judged.query_text}\t{','.join(sorted(judged.relevant_image_ids))}\n")


# -- synthetic corpora -----------------------------------------------------


@dataclass(frozen=True)
class ConstantTagCount:
    count: int

    def sample(self, rng: random.Random) -> int:
        return self.count


@dataclass(frozen=True)
class TruncatedNormalTagCount:
    mean: float
    sd: float
    minimum: int
    maximum: int

    def sample(self, rng: random.Random) -> int:
        while True:
            value = round(rng.gauss(self.mean, self.sd))
            if self.minimum <= value <= self.maximum:
                return value


# Default tag-count target: median-20 annotation density with observed spread.
DEFAULT_TAG_COUNTS = TruncatedNormalTagCount(20.56436, 2.76917, 13, 28)

_KEYWORDS = ("animal", "vehicle", "people", "nature", "indoor", "object", "scene", "abstract")
_ANNOTATORS = ("ann-a", "ann-b", "ann-c", "ann-d", "ann-e")
_SYLLABLES = (
    "ba", "ce", "di", "fo", "gu", "ha", "ki", "lo", "mu", "na",
    "pe", "qi", "ro", "su", "ta", "vu", "wa", "xe", "yo", "zi",
)


@dataclass(frozen=True)
class SynthSpec:
    image_count: int
    tag_counts: ConstantTagCount | TruncatedNormalTagCount = DEFAULT_TAG_COUNTS
    graph_size: int = 500
    seed: int = 0
    query_count: int = 10
    judgment_distance: int = 10

    def __post_init__(self):
        if self.image_count < 0:
            raise InvalidSpec(f"image_count {self.image_count} is negative")
        if self.graph_size < 1:
            raise InvalidSpec(f"graph_size {self.graph_size} must be >= 1")
        if self.query_count < 0:
            raise InvalidSpec(f"query_count {self.query_count} is negative")
        if not 0 <= self.judgment_distance <= MAX_DISTANCE_CAP:
            raise InvalidSpec(f"judgment_distance {self.judgment_distance} outside [0, 30]")


def _pseudo_word(rng: random.Random, used: set[str]) -> str:
    # 3-5 syllables over a 20-syllable alphabet: ~3.4M forms, enough to stay
    # collision-tolerant for six-figure graphs.
    while True:
        word = "".join(rng.choice(_SYLLABLES) for _ in range(rng.randint(3, 5)))
        if word not in used:
            used.add(word)
            return word


def build_random_graph(size: int, rng: random.Random) -> OntologyGraph:
    """Random noun taxonomy: a hypernym tree plus sparse meronym cross-links.

    Roughly one lemma in ten is reused in a second synset so polysemy and
    multi-sense queries occur; some synsets carry synonym co-lemmas.
    """
    used: set[str] = set()
    all_words: list[str] = []
    raw: dict[SynsetId, tuple] = {}
    for i in range(size):
        lemmas = [_pseudo_word(rng, used)]
        all_words.append(lemmas[0])
        if rng.random() < 0.25:
            lemmas.append(_pseudo_word(rng, used))
        if i > 0 and rng.random() < 0.1:
            reuse = rng.choice(all_words)
            if reuse not in lemmas:
                lemmas.append(reuse)
        relations = []
        if i > 0:
            relations.append((RelationType.HYPERNYM, SynsetId("n", rng.randrange(i))))
        raw[SynsetId("n", i)] = (tuple(lemmas), f"synthetic concept {i}", tuple(relations))

    for _ in range(size // 10):
        a = rng.randrange(size)
        b = rng.randrange(size)
        if a == b:
            continue
        lemmas, gloss, relations = raw[SynsetId("n", a)]
        raw[SynsetId("n", a)] = (
            lemmas,
            gloss,
            relations + ((RelationType.MERONYM, SynsetId("n", b)),),
        )
    return build_graph(raw)


def generate_synthetic_corpus(
    spec: SynthSpec, ontology: OntologyGraph | None = None
) -> tuple[Repository, list[JudgedQuery]]:
    """Deterministic seeded corpus plus planted-tag relevance judgments.

    Ground truth for a query lemma is every committed image carrying a tag
    within judgment_distance of one of the lemma's synsets (hypernym/
    hyponym edges, matching the path similarity's relation set).
    """
    rng = random.Random(spec.seed)
    graph = ontology if ontology is not None else build_random_graph(spec.graph_size, rng)

    all_senses = [
        Sense(lemma, synset.id) for synset in graph for lemma in synset.lemmas
    ]
    if not all_senses:
        raise InvalidSpec("ontology has no senses to tag with")

    repository = Repository(graph)
    clock = 1_700_000_000.0
    for _ in range(spec.image_count):
        record = repository.add_image(
            uri=f"synthetic://{len(repository.images) + 1:05d}.jpg",
            keyword=rng.choice(_KEYWORDS),
            emotion=EmotionTuple(
                round(rng.uniform(1.0, 9.0), 3),
                round(rng.uniform(1.0, 9.0), 3),
                round(rng.uniform(1.0, 9.0), 3),
            ),
        )
        count = min(spec.tag_counts.sample(rng), len(all_senses))
        for sense in rng.sample(all_senses, count):
            for annotator in rng.sample(_ANNOTATORS, rng.randint(1, 3)):
                clock += 1.0
                repository.annotate(
                    record.image_id, sense, rng.uniform(0.0, 1.0), annotator, recorded_at=clock
                )
        if count >= 3:
            repository.commit_image(record.image_id)

    planted: list[str] = []
    seen = set()
    for record in repository.committed_images():
        for annotated in record.annotations:
            if annotated.sense.lemma not in seen:
                seen.add(annotated.sense.lemma)
                planted.append(annotated.sense.lemma)

    queries: list[JudgedQuery] = []
    if planted and spec.query_count:
        cfg = NeighborhoodConfig(spec.judgment_distance, TAXONOMY_RELATIONS)
        for lemma in rng.sample(planted, min(spec.query_count, len(planted))):
            reachable: set[SynsetId] = set()
            for synset_id in graph.synsets_for_lemma(lemma):
                reachable.update(distances_within(synset_id, cfg, graph))
            relevant = frozenset(
                record.image_id
                for record in repository.committed_images()
                if any(a.sense.synset in reachable for a in record.annotations)
            )
            queries.append(JudgedQuery(lemma, relevant))
    return repository, queries


def subsample_repository(repository: Repository, fraction: float, seed: int) -> Repository:
    """Per-image seeded tag subsets; uncommitted records pass through as-is."""
    view = Repository(repository.ontology)
    for image_id, record in repository.images.items():
        if record.committed and fraction < 1.0:
            image_rng_seed = f"{seed}:{image_id}"
            view.images[image_id] = subsample_tags(
                record, fraction, random.Random(image_rng_seed).randrange(2**31)
            )
        else:
            view.images[image_id] = record
    view._next_id = repository._next_id
    return view
