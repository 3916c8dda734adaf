"""Image records with weighted multi-annotator sense tags and affect tuples.

A record aggregates: weighted senses (one rating per annotator per sense,
re-rating replaces), an optional circumplex emotion tuple (valence /
arousal / dominance, each in [1, 9]), and an optional legacy free-text
keyword. A record becomes searchable only once committed, which requires
at least three distinct senses.

Persistence is a line-delimited JSON log, one record per line with a fixed
field order so golden files diff cleanly. Pixels are never stored; records
reference image assets by URI only.

Concurrency contract: one writer at a time (callers serialize mutations),
any number of concurrent readers.
"""

from __future__ import annotations

import json
import re
import time
from dataclasses import dataclass, field, replace
from statistics import mean, median, stdev
from typing import Iterable, Sequence, TextIO

from .agreement import DEFAULT_BINS, INADEQUATE_THRESHOLD, AgreementResult, weight_agreement
from .errors import (
    EmotionOutOfRange,
    EmptyRatings,
    MalformedRecord,
    TooFewSenses,
    UncommittedImage,
    UnknownImage,
    UnknownSense,
    WeightOutOfRange,
)
from .ontology import NeighborhoodConfig, OntologyGraph, Sense, SynsetId, neighborhood

MIN_COMMIT_SENSES = 3

_ID_PATTERN = re.compile(r"^img-(\d+)$")


@dataclass(frozen=True)
class EmotionTuple:
    valence: float
    arousal: float
    dominance: float

    def __post_init__(self):
        for name, value in (
            ("valence", self.valence),
            ("arousal", self.arousal),
            ("dominance", self.dominance),
        ):
            if not 1.0 <= value <= 9.0:
                raise EmotionOutOfRange(name, value)


@dataclass(frozen=True)
class WeightRating:
    annotator: str
    weight: float
    recorded_at: float

    def __post_init__(self):
        if not 0.0 <= self.weight <= 1.0:
            raise WeightOutOfRange(self.weight)


def mean_weight(ratings: Sequence[WeightRating]) -> float:
    """Arithmetic mean of the rating weights; the aggregated tag importance."""
    if not ratings:
        raise EmptyRatings("cannot average an empty rating list")
    return sum(r.weight for r in ratings) / len(ratings)


@dataclass
class AnnotatedSense:
    sense: Sense
    ratings: list[WeightRating]

    def mean_weight(self) -> float:
        return mean_weight(self.ratings)

    def rate(self, rating: WeightRating) -> None:
        # One rating per annotator: a repeat replaces in place.
        for i, existing in enumerate(self.ratings):
            if existing.annotator == rating.annotator:
                self.ratings[i] = rating
                return
        self.ratings.append(rating)


@dataclass
class ImageRecord:
    image_id: str
    uri: str
    keyword: str | None = None
    emotion: EmotionTuple | None = None
    annotations: list[AnnotatedSense] = field(default_factory=list)
    committed: bool = False

    def annotation_for(self, sense: Sense) -> AnnotatedSense | None:
        for annotated in self.annotations:
            if annotated.sense == sense:
                return annotated
        return None

    def sense_count(self) -> int:
        return len(self.annotations)

    def weight_mass(self) -> float:
        return sum(a.mean_weight() for a in self.annotations)


@dataclass(frozen=True)
class CorpusStats:
    empty: bool
    image_count: int
    tag_count_median: float
    tag_count_mean: float
    tag_count_sd: float
    tag_count_min: int
    tag_count_max: int
    distinct_synset_count: int


class Repository:
    """In-memory image store validated against one loaded ontology."""

    def __init__(self, ontology: OntologyGraph):
        self.ontology = ontology
        self.images: dict[str, ImageRecord] = {}
        self._next_id = 1

    # -- mutations (single-writer) --------------------------------------

    def _fresh_id(self) -> str:
        while True:
            candidate = f"img-{self._next_id:06d}"
            self._next_id += 1
            if candidate not in self.images:
                return candidate

    def add_image(
        self,
        uri: str,
        keyword: str | None = None,
        emotion: EmotionTuple | None = None,
    ) -> ImageRecord:
        if not uri or not uri.strip():
            raise ValueError("image uri must be non-empty")
        record = ImageRecord(self._fresh_id(), uri, keyword, emotion)
        self.images[record.image_id] = record
        return record

    def annotate(
        self,
        image_id: str,
        sense: Sense,
        weight: float,
        annotator: str,
        recorded_at: float | None = None,
    ) -> ImageRecord:
        record = self.get(image_id)
        if not self.ontology.contains_sense(sense):
            raise UnknownSense(f"sense {sense} not in the loaded ontology")
        rating = WeightRating(annotator, weight, time.time() if recorded_at is None else recorded_at)
        annotated = record.annotation_for(sense)
        if annotated is None:
            record.annotations.append(AnnotatedSense(sense, [rating]))
        else:
            annotated.rate(rating)
        return record

    def commit_image(self, image_id: str) -> ImageRecord:
        record = self.get(image_id)
        if record.sense_count() < MIN_COMMIT_SENSES:
            raise TooFewSenses(record.sense_count())
        record.committed = True
        return record

    # -- reads ------------------------------------------------------------

    def get(self, image_id: str) -> ImageRecord:
        try:
            return self.images[image_id]
        except KeyError:
            raise UnknownImage(f"no image {image_id!r}") from None

    def committed_images(self) -> list[ImageRecord]:
        return [record for record in self.images.values() if record.committed]

    def keyword_vocabulary(self) -> set[str]:
        return {r.keyword for r in self.images.values() if r.keyword is not None}

    def expanded_semantics(self, image_id: str, cfg: NeighborhoodConfig) -> set[Sense]:
        """Tag senses united with each tag synset's neighborhood (unweighted)."""
        record = self.get(image_id)
        if not record.committed:
            raise UncommittedImage(f"image {image_id} is not committed")
        expanded: set[Sense] = set()
        for annotated in record.annotations:
            expanded.add(annotated.sense)
            expanded |= neighborhood(annotated.sense.synset, cfg, self.ontology)
        return expanded

    def tag_agreement(
        self,
        image_id: str,
        sense: Sense,
        bins: int = DEFAULT_BINS,
        threshold: float = INADEQUATE_THRESHOLD,
    ) -> AgreementResult:
        record = self.get(image_id)
        annotated = record.annotation_for(sense)
        weights = [r.weight for r in annotated.ratings] if annotated else []
        return weight_agreement(weights, bins=bins, threshold=threshold)

    def corpus_stats(self) -> CorpusStats:
        return corpus_stats(self)


def corpus_stats(repository: Repository) -> CorpusStats:
    """Distinct-sense-count statistics over the committed corpus."""
    committed = repository.committed_images()
    if not committed:
        return CorpusStats(True, 0, 0.0, 0.0, 0.0, 0, 0, 0)
    counts = [record.sense_count() for record in committed]
    synsets: set[SynsetId] = {
        annotated.sense.synset for record in committed for annotated in record.annotations
    }
    return CorpusStats(
        empty=False,
        image_count=len(committed),
        tag_count_median=float(median(counts)),
        tag_count_mean=mean(counts),
        tag_count_sd=stdev(counts) if len(counts) > 1 else 0.0,
        tag_count_min=min(counts),
        tag_count_max=max(counts),
        distinct_synset_count=len(synsets),
    )


# -- persistence ---------------------------------------------------------


def _record_to_json(record: ImageRecord) -> dict:
    emotion = None
    if record.emotion is not None:
        emotion = {
            "val": record.emotion.valence,
            "ar": record.emotion.arousal,
            "dom": record.emotion.dominance,
        }
    return {
        "id": record.image_id,
        "uri": record.uri,
        "keyword": record.keyword,
        "emotion": emotion,
        "tags": [
            {
                "lemma": annotated.sense.lemma,
                "pos": annotated.sense.synset.pos,
                "offset": annotated.sense.synset.offset,
                "ratings": [
                    {"annotator": r.annotator, "weight": r.weight, "at": r.recorded_at}
                    for r in annotated.ratings
                ],
            }
            for annotated in record.annotations
        ],
        "committed": record.committed,
    }


def save(repository: Repository, stream: TextIO) -> None:
    """One JSON object per line, fields in fixed order, full float precision."""
    for record in repository.images.values():
        stream.write(json.dumps(_record_to_json(record), ensure_ascii=False))
        stream.write("\n")


def _parse_record(payload: dict, line_no: int, ontology: OntologyGraph) -> ImageRecord:
    try:
        image_id = payload["id"]
        uri = payload["uri"]
        keyword = payload.get("keyword")
        emotion_raw = payload.get("emotion")
        emotion = (
            EmotionTuple(emotion_raw["val"], emotion_raw["ar"], emotion_raw["dom"])
            if emotion_raw is not None
            else None
        )
        annotations = []
        for tag in payload["tags"]:
            sense = Sense(tag["lemma"], SynsetId(tag["pos"], tag["offset"]))
            ratings = [
                WeightRating(r["annotator"], r["weight"], r["at"])
                for r in tag["ratings"]
            ]
            if not ratings:
                raise MalformedRecord(line_no, f"tag {sense} has no ratings")
            annotations.append(AnnotatedSense(sense, ratings))
        committed = bool(payload["committed"])
    except MalformedRecord:
        raise
    except (KeyError, TypeError, ValueError, EmotionOutOfRange, WeightOutOfRange) as exc:
        raise MalformedRecord(line_no, str(exc)) from exc

    for annotated in annotations:
        if not ontology.contains_sense(annotated.sense):
            raise UnknownSense(
                f"line {line_no}: stored sense {annotated.sense} not in the loaded ontology"
            )
    return ImageRecord(image_id, uri, keyword, emotion, annotations, committed)


def load(stream: TextIO, ontology: OntologyGraph) -> Repository:
    repository = Repository(ontology)
    highest = 0
    for line_no, line in enumerate(stream, start=1):
        if not line.strip():
            continue
        try:
            payload = json.loads(line)
        except json.JSONDecodeError as exc:
            raise MalformedRecord(line_no, f"invalid JSON: {exc}") from exc
        if not isinstance(payload, dict):
            raise MalformedRecord(line_no, "record is not an object")
        record = _parse_record(payload, line_no, ontology)
        if record.image_id in repository.images:
            raise MalformedRecord(line_no, f"duplicate image id {record.image_id!r}")
        repository.images[record.image_id] = record
        match = _ID_PATTERN.match(record.image_id)
        if match:
            highest = max(highest, int(match.group(1)))
    repository._next_id = highest + 1
    return repository


def records_equal(a: Repository, b: Repository) -> bool:
    """Structural equality over all records (order-sensitive, full precision)."""
    if list(a.images) != list(b.images):
        return False
    return all(a.images[key] == b.images[key] for key in a.images)


def clone_with_annotations(record: ImageRecord, annotations: Iterable[AnnotatedSense]) -> ImageRecord:
    return replace(record, annotations=list(annotations))
