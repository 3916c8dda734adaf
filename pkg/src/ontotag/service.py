"""HTTP/JSON API over the repository, retrieval, ontology and stats.

Every domain error surfaces as ``{"code": ..., "message": ...}`` with a
status from the code map below; GET endpoints never mutate state; writes
serialize through one lock (single-writer contract).
"""

from __future__ import annotations

import threading
from contextlib import asynccontextmanager
from dataclasses import dataclass, field
from pathlib import Path

from fastapi import FastAPI, Request, Response
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from . import repository as repo_mod
from .agreement import DEFAULT_BINS
from .errors import EmptyQuery, InvalidRange, OntotagError, UnknownSense
from .ontology import (
    POS_TAGS,
    OntologyGraph,
    Sense,
    SimilarityTable,
    SynsetId,
    normalize_lemma,
    normalize_surface,
)
from .repository import EmotionTuple, ImageRecord, Repository
from .retrieval import AffectFilter, RankedResult, SearchOptions, search_with_filters

STATUS_BY_CODE = {
    "unknown_image": 404,
    "unknown_synset": 404,
    "unknown_sense": 422,
    "weight_out_of_range": 422,
    "emotion_out_of_range": 422,
    "score_out_of_range": 422,
    "invalid_range": 422,
    "invalid_k": 422,
    "invalid_spec": 422,
    "insufficient_raters": 422,
    "empty_ratings": 422,
    "empty_judgment": 422,
    "too_few_senses": 409,
    "uncommitted_image": 409,
    "empty_query": 400,
    "malformed_line": 400,
    "malformed_record": 400,
    "dangling_pointer": 400,
    "duplicate_offset": 400,
    "parse_error": 400,
    "invalid_body": 422,
    "unsupported_media_type": 415,
    "internal": 500,
}


@dataclass
class ServiceState:
    ontology: OntologyGraph
    repository: Repository
    table: SimilarityTable | None = None
    max_distance: int = 10
    repo_path: Path | None = None
    lock: threading.Lock = field(default_factory=threading.Lock)

    def flush(self) -> None:
        if self.repo_path is not None:
            with self.repo_path.open("w", encoding="utf-8") as stream:
                repo_mod.save(self.repository, stream)


class EmotionBody(BaseModel):
    val: float
    ar: float
    dom: float


class ImageCreate(BaseModel):
    uri: str
    keyword: str | None = None
    emotion: EmotionBody | None = None


class AnnotationBody(BaseModel):
    lemma: str
    pos: str
    offset: int
    weight: float
    annotator: str


def _emotion_json(emotion: EmotionTuple | None):
    if emotion is None:
        return None
    return {"val": emotion.valence, "ar": emotion.arousal, "dom": emotion.dominance}


def _tag_json(annotated, include_ratings: bool):
    tag = {
        "lemma": annotated.sense.lemma,
        "pos": annotated.sense.synset.pos,
        "offset": annotated.sense.synset.offset,
        "mean_weight": annotated.mean_weight(),
        "rater_count": len(annotated.ratings),
    }
    if include_ratings:
        tag["ratings"] = [
            {"annotator": r.annotator, "weight": r.weight, "at": r.recorded_at}
            for r in annotated.ratings
        ]
    return tag


def _record_json(record: ImageRecord, include_ratings: bool = False):
    return {
        "id": record.image_id,
        "uri": record.uri,
        "keyword": record.keyword,
        "emotion": _emotion_json(record.emotion),
        "tags": [_tag_json(a, include_ratings) for a in record.annotations],
        "committed": record.committed,
    }


def _sense_json(sense: Sense):
    return {"lemma": sense.lemma, "pos": sense.synset.pos, "offset": sense.synset.offset}


def _result_json(result: RankedResult):
    return {
        "image_id": result.image_id,
        "raw_score": result.raw_score,
        "relevance": result.relevance,
        "matches": [
            {
                "query_sense": _sense_json(m.query_sense),
                "image_sense": _sense_json(m.image_sense),
                "mean_weight": m.mean_weight,
                "similarity": m.similarity,
                "contribution": m.contribution,
            }
            for m in result.matches
        ],
    }


def _parse_range(raw: str | None, name: str) -> tuple[float, float] | None:
    if raw is None or raw == "":
        return None
    lo, sep, hi = raw.partition("..")
    if not sep:
        raise InvalidRange(f"{name} must look like 'a..b', got {raw!r}")
    try:
        return (float(lo), float(hi))
    except ValueError:
        raise InvalidRange(f"{name} bounds must be numeric, got {raw!r}") from None


def create_app(state: ServiceState, ui_dir: str | Path | None = None) -> FastAPI:
    @asynccontextmanager
    async def lifespan(app: FastAPI):
        yield
        state.flush()

    app = FastAPI(title="ontotag", lifespan=lifespan)
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )

    @app.middleware("http")
    async def require_json_posts(request: Request, call_next):
        if request.method == "POST" and request.url.path.startswith("/api/"):
            has_body = request.headers.get("content-length", "0") != "0" or (
                "transfer-encoding" in request.headers
            )
            content_type = request.headers.get("content-type", "")
            if has_body and content_type.split(";")[0].strip() != "application/json":
                return JSONResponse(
                    {"code": "unsupported_media_type", "message": "POST bodies must be application/json"},
                    status_code=415,
                )
        return await call_next(request)

    @app.exception_handler(OntotagError)
    async def domain_error_handler(_request: Request, exc: OntotagError):
        body = {"code": exc.code, "message": str(exc)}
        found = getattr(exc, "found", None)
        if found is not None:
            body["found"] = found
        return JSONResponse(body, status_code=STATUS_BY_CODE.get(exc.code, 500))

    @app.exception_handler(RequestValidationError)
    async def validation_error_handler(_request: Request, exc: RequestValidationError):
        return JSONResponse(
            {"code": "invalid_body", "message": str(exc.errors()[:3])}, status_code=422
        )

    @app.get("/api/images")
    def list_images(
        response: Response, committed: bool | None = None, offset: int = 0, limit: int = 50
    ):
        records = list(state.repository.images.values())
        if committed is not None:
            records = [r for r in records if r.committed == committed]
        offset = max(0, offset)
        limit = max(0, limit)
        page = records[offset : offset + limit]
        response.headers["X-Total-Count"] = str(len(records))
        return [_record_json(r) for r in page]

    @app.post("/api/images", status_code=201)
    def create_image(body: ImageCreate):
        emotion = None
        if body.emotion is not None:
            emotion = EmotionTuple(body.emotion.val, body.emotion.ar, body.emotion.dom)
        if not body.uri.strip():
            raise RequestValidationError([{"loc": ("body", "uri"), "msg": "uri must be non-empty"}])
        with state.lock:
            record = state.repository.add_image(body.uri, body.keyword, emotion)
        return _record_json(record, include_ratings=True)

    @app.post("/api/images/{image_id}/annotations")
    def annotate_image(image_id: str, body: AnnotationBody):
        if body.pos not in POS_TAGS:
            raise UnknownSense(f"unknown part-of-speech tag {body.pos!r}")
        sense = Sense(body.lemma, SynsetId(body.pos, body.offset))
        with state.lock:
            record = state.repository.annotate(image_id, sense, body.weight, body.annotator)
        return _record_json(record, include_ratings=True)

    @app.post("/api/images/{image_id}/commit")
    def commit_image(image_id: str):
        with state.lock:
            record = state.repository.commit_image(image_id)
        return _record_json(record, include_ratings=True)

    @app.get("/api/images/{image_id}")
    def get_image(image_id: str):
        return _record_json(state.repository.get(image_id), include_ratings=True)

    @app.get("/api/search")
    def run_search(
        q: str = "",
        maxd: int | None = None,
        minrel: float = 0.0,
        val: str | None = None,
        ar: str | None = None,
        dom: str | None = None,
        keyword: str | None = None,
        limit: int | None = None,
    ):
        if not q.strip():
            raise EmptyQuery("query text is empty")
        affect = AffectFilter(
            _parse_range(val, "val"), _parse_range(ar, "ar"), _parse_range(dom, "dom")
        )
        options = SearchOptions(
            max_distance=state.max_distance if maxd is None else maxd,
            min_relevance=minrel,
            limit=limit,
        )
        results = search_with_filters(
            q,
            state.repository,
            state.ontology,
            state.table,
            options,
            affect=None if affect.is_empty() else affect,
            keyword=keyword,
        )
        return [_result_json(r) for r in results]

    @app.get("/api/ontology/senses")
    def ontology_senses(lemma: str = "", pos: str | None = None):
        if pos is not None and pos not in POS_TAGS:
            raise UnknownSense(f"unknown part-of-speech tag {pos!r}")
        surface = lemma.strip()
        if not surface:
            return []
        graph = state.ontology
        items = []

        def emit(base: str, stemmed: bool):
            for sense in graph.senses_of(base, pos):
                synset = graph.get(sense.synset)
                items.append(
                    {
                        **_sense_json(sense),
                        "gloss": synset.gloss,
                        "synonyms": list(synset.lemmas),
                        "stemmed": stemmed,
                    }
                )

        direct = normalize_surface(surface)
        if graph.has_lemma(direct):
            emit(direct, stemmed=False)
        else:
            seen: set[str] = set()
            for candidate_pos in POS_TAGS if pos is None else (pos,):
                for base in normalize_lemma(surface, candidate_pos, graph):
                    if base not in seen:
                        seen.add(base)
                        emit(base, stemmed=True)
        return items

    @app.get("/api/stats")
    def stats():
        s = state.repository.corpus_stats()
        return {
            "empty": s.empty,
            "image_count": s.image_count,
            "tag_count_median": s.tag_count_median,
            "tag_count_mean": s.tag_count_mean,
            "tag_count_sd": s.tag_count_sd,
            "tag_count_min": s.tag_count_min,
            "tag_count_max": s.tag_count_max,
            "distinct_synset_count": s.distinct_synset_count,
        }

    @app.get("/api/stats/agreement")
    def agreement(bins: int = DEFAULT_BINS):
        items = []
        for record in state.repository.images.values():
            for annotated in record.annotations:
                if len(annotated.ratings) < 2:
                    continue
                result = state.repository.tag_agreement(record.image_id, annotated.sense, bins=bins)
                items.append(
                    {
                        "image_id": record.image_id,
                        **_sense_json(annotated.sense),
                        "rater_count": result.rater_count,
                        "kappa": result.kappa,
                        "inadequate": result.inadequate,
                    }
                )
        return items

    if ui_dir is not None and Path(ui_dir).is_dir():
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=str(ui_dir), html=True), name="ui")

    return app
