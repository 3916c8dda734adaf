import random
from collections import deque
from pathlib import Path

import pytest

from ontotag.ontology import (
    OntologyGraph,
    RelationType,
    Sense,
    SynsetId,
    build_graph,
    parse_simple_graph,
)
from ontotag.repository import EmotionTuple, Repository, load

FIXTURES = Path(__file__).parent / "fixtures"


# --- independent breadth-first-search oracle --------------------------------
# Works on a plain adjacency dict so it shares nothing with the graph
# implementation under test.


def bfs_distance(adjacency: dict, a, b, cap: int):
    if a == b:
        return 0
    seen = {a}
    queue = deque([(a, 0)])
    while queue:
        node, depth = queue.popleft()
        if depth >= cap:
            continue
        for neighbor in adjacency.get(node, ()):
            if neighbor in seen:
                continue
            if neighbor == b:
                return depth + 1
            seen.add(neighbor)
            queue.append((neighbor, depth + 1))
    return None


def bfs_frontier(adjacency: dict, seed, cap: int) -> set:
    reached = {seed}
    queue = deque([(seed, 0)])
    while queue:
        node, depth = queue.popleft()
        if depth >= cap:
            continue
        for neighbor in adjacency.get(node, ()):
            if neighbor not in reached:
                reached.add(neighbor)
                queue.append((neighbor, depth + 1))
    return reached


def make_random_graph(seed: int, size: int):
    """Random connected noun graph plus its plain-dict adjacency (for oracles)."""
    rng = random.Random(seed)
    ids = [SynsetId("n", i) for i in range(size)]
    edges = []
    for i in range(1, size):
        edges.append((ids[i], RelationType.HYPERNYM, ids[rng.randrange(i)]))
    for _ in range(max(1, size // 4)):
        a, b = rng.randrange(size), rng.randrange(size)
        if a != b:
            edges.append((ids[a], RelationType.MERONYM, ids[b]))

    raw = {}
    for i, sid in enumerate(ids):
        relations = tuple((rel, dst) for src, rel, dst in edges if src == sid)
        raw[sid] = ((f"word{i}",), f"node {i}", relations)
    graph = build_graph(raw)

    adjacency = {sid: set() for sid in ids}
    for src, _, dst in edges:
        adjacency[src].add(dst)
        adjacency[dst].add(src)
    return graph, adjacency


# --- shared fixtures ---------------------------------------------------------


@pytest.fixture(scope="session")
def chain_graph() -> OntologyGraph:
    """puppy -> dog -> animal hypernym chain."""
    lines = (
        "n1\tanimal\ta living organism\t\n"
        "n2\tdog,domestic_dog\ta domesticated canid\thypernym:n1\n"
        "n3\tpuppy\ta young dog\thypernym:n2\n"
    )
    import io

    return parse_simple_graph(io.StringIO(lines))


@pytest.fixture(scope="session")
def basic_graph() -> OntologyGraph:
    from ontotag.ontology import parse_exception_file

    with (FIXTURES / "exceptions.exc").open() as exc_stream:
        exceptions = parse_exception_file(exc_stream)
    with (FIXTURES / "simple_basic.tsv").open() as stream:
        return parse_simple_graph(stream, exception_forms=exceptions)


@pytest.fixture(scope="session")
def benchmark_graph() -> OntologyGraph:
    with (FIXTURES / "benchmark_graph.tsv").open() as stream:
        return parse_simple_graph(stream)


@pytest.fixture()
def benchmark_repo(benchmark_graph) -> Repository:
    with (FIXTURES / "benchmark_repo.jsonl").open() as stream:
        return load(stream, benchmark_graph)


def sense(graph: OntologyGraph, lemma: str, pos: str | None = None) -> Sense:
    senses = graph.senses_of(lemma, pos)
    assert senses, f"fixture lemma {lemma!r} missing"
    return senses[0]


def add_committed_image(
    repo: Repository,
    tags: list[tuple[Sense, float]],
    uri: str = "file:test.jpg",
    keyword: str | None = None,
    emotion: EmotionTuple | None = None,
    annotator: str = "u1",
):
    record = repo.add_image(uri, keyword, emotion)
    at = 1_700_000_000.0
    for tagged_sense, weight in tags:
        at += 1.0
        repo.annotate(record.image_id, tagged_sense, weight, annotator, recorded_at=at)
    repo.commit_image(record.image_id)
    return record
