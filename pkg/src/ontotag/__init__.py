"""Ontology-backed image annotation and ranked retrieval engine."""

from .agreement import AgreementResult, fleiss_kappa, weight_agreement
from .errors import DomainError, OntotagError, ParseError
from .evaluation import (
    ConstantTagCount,
    EvaluationReport,
    JudgedQuery,
    SynthSpec,
    TruncatedNormalTagCount,
    build_random_graph,
    emit_curve_csv,
    generate_synthetic_corpus,
    load_judged_queries,
    precision_at_k,
    recall_profile,
    run_benchmark,
    save_judged_queries,
    subsample_repository,
)
from .ontology import (
    NeighborhoodConfig,
    OntologyGraph,
    RelationType,
    Sense,
    SimilarityTable,
    Synset,
    SynsetId,
    load_similarity_pairs,
    load_wordnet_dir,
    neighborhood,
    node_distance,
    normalize_lemma,
    parse_ontology,
    parse_simple_graph,
    similarity,
)
from .repository import (
    AnnotatedSense,
    CorpusStats,
    EmotionTuple,
    ImageRecord,
    Repository,
    WeightRating,
    corpus_stats,
    load,
    mean_weight,
    save,
)
from .retrieval import (
    AffectFilter,
    MatchDetail,
    Query,
    RankedResult,
    SearchOptions,
    parse_query,
    score_image,
    search,
    search_with_filters,
    subsample_tags,
)

__version__ = "0.1.0"
