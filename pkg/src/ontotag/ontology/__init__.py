from .model import (
    ALL_RELATIONS,
    MAX_DISTANCE_CAP,
    POS_TAGS,
    TAXONOMY_RELATIONS,
    NeighborhoodConfig,
    OntologyGraph,
    RelationType,
    Sense,
    Synset,
    SynsetId,
    build_graph,
    normalize_surface,
)
from .graph_ops import distances_within, neighborhood, node_distance
from .morphy import normalize_lemma, suffix_candidates
from .simple import parse_simple_graph
from .similarity import (
    DEFAULT_MAX_DISTANCE,
    SimilarityTable,
    load_similarity_pairs,
    parse_sense_ref,
    similarity,
)
from .wordnet import load_wordnet_dir, parse_exception_file, parse_ontology

__all__ = [
    "ALL_RELATIONS",
    "DEFAULT_MAX_DISTANCE",
    "MAX_DISTANCE_CAP",
    "POS_TAGS",
    "TAXONOMY_RELATIONS",
    "NeighborhoodConfig",
    "OntologyGraph",
    "RelationType",
    "Sense",
    "SimilarityTable",
    "Synset",
    "SynsetId",
    "build_graph",
    "distances_within",
    "load_similarity_pairs",
    "load_wordnet_dir",
    "neighborhood",
    "node_distance",
    "normalize_lemma",
    "normalize_surface",
    "parse_exception_file",
    "parse_ontology",
    "parse_sense_ref",
    "parse_simple_graph",
    "similarity",
    "suffix_candidates",
]
