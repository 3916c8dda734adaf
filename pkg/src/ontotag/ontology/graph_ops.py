"""Node distance and neighborhood expansion over the synset graph.

Edges are undirected: an edge stored as (A, hypernym, B) is walkable from
either end whenever the relation or its inverse is in the configured
relation set, so {hypernym}, {hyponym} and {hypernym, hyponym} all induce
the same traversal graph.
"""

from __future__ import annotations

from collections import deque

from ..errors import UnknownSynset
from .model import NeighborhoodConfig, OntologyGraph, Sense, SynsetId


def distances_within(
    seed: SynsetId, cfg: NeighborhoodConfig, graph: OntologyGraph
) -> dict[SynsetId, int]:
    """BFS distance map from ``seed`` out to cfg.max_distance (seed included at 0)."""
    if seed not in graph:
        raise UnknownSynset(f"synset {seed} not in graph")
    adjacency = graph.undirected_adjacency(cfg.relation_set)
    distances = {seed: 0}
    queue = deque([(seed, 0)])
    cap = cfg.max_distance
    while queue:
        node, depth = queue.popleft()
        if depth == cap:
            continue
        for neighbor in adjacency[node]:
            if neighbor not in distances:
                distances[neighbor] = depth + 1
                queue.append((neighbor, depth + 1))
    return distances


def node_distance(
    a: SynsetId, b: SynsetId, cfg: NeighborhoodConfig, graph: OntologyGraph
) -> int | None:
    """Shortest undirected path length between two synsets, None beyond the cap."""
    if a not in graph:
        raise UnknownSynset(f"synset {a} not in graph")
    if b not in graph:
        raise UnknownSynset(f"synset {b} not in graph")
    if a == b:
        return 0
    adjacency = graph.undirected_adjacency(cfg.relation_set)
    # Capped BFS with an early exit on the target.
    seen = {a}
    queue = deque([(a, 0)])
    cap = cfg.max_distance
    while queue:
        node, depth = queue.popleft()
        if depth == cap:
            continue
        for neighbor in adjacency[node]:
            if neighbor in seen:
                continue
            if neighbor == b:
                return depth + 1
            seen.add(neighbor)
            queue.append((neighbor, depth + 1))
    return None


def neighborhood(
    seed: SynsetId, cfg: NeighborhoodConfig, graph: OntologyGraph
) -> set[Sense]:
    """All senses of all synsets within cfg.max_distance of the seed.

    With include_synonyms (the default) the seed synset's own senses are
    part of the result; without it only synsets at distance >= 1 contribute.
    """
    result: set[Sense] = set()
    for synset_id, distance in distances_within(seed, cfg, graph).items():
        if distance == 0 and not cfg.include_synonyms:
            continue
        synset = graph.get(synset_id)
        result.update(Sense(lemma, synset_id) for lemma in synset.lemmas)
    return result
