"""Operator command line: import ontologies, annotate, search, evaluate, serve.

Exit codes: 0 success, 2 malformed input / IO problems, 3 domain errors
(unknown image, weight out of range, empty query, ...).
"""

from __future__ import annotations

import argparse
import os
import socket
import sys
from pathlib import Path

from . import evaluation as eval_mod
from . import repository as repo_mod
from .errors import DomainError, ParseError
from .ontology import (
    OntologyGraph,
    load_similarity_pairs,
    load_wordnet_dir,
    parse_sense_ref,
    parse_simple_graph,
)
from .ontology.simple import save_simple_graph
from .retrieval import AffectFilter, SearchOptions, search_with_filters

REPO_ENV_VAR = "WNTAGS_REPO"


def _maxd(value: str) -> int:
    distance = int(value)
    if not 0 <= distance <= 30:
        raise argparse.ArgumentTypeError(f"maxd {distance} outside [0, 30]")
    return distance


def _fraction(value: str) -> float:
    fraction = float(value)
    if not 0.0 < fraction <= 1.0:
        raise argparse.ArgumentTypeError(f"fraction {fraction} outside (0, 1]")
    return fraction


def _range_arg(value: str) -> tuple[float, float]:
    lo, sep, hi = value.partition("..")
    if not sep:
        raise argparse.ArgumentTypeError(f"range must look like 'a..b', got {value!r}")
    try:
        return (float(lo), float(hi))
    except ValueError:
        raise argparse.ArgumentTypeError(f"range bounds must be numeric: {value!r}") from None


def _ontology_parent() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--wordnet-dir", help="directory with data.noun/data.verb/... files")
    parent.add_argument("--simple", help="tab-separated fixture graph file")
    parent.add_argument("--simpairs", help="precomputed sense-pair similarity file")
    return parent


def _repo_parent() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument(
        "--repo",
        default=os.environ.get(REPO_ENV_VAR),
        help=f"repository file (default: ${REPO_ENV_VAR})",
    )
    return parent


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ontotag")
    sub = parser.add_subparsers(dest="command", required=True)
    ontology = _ontology_parent()
    repo = _repo_parent()

    p = sub.add_parser("import-wordnet", parents=[ontology], help="load an ontology and report counts")
    p.add_argument("--dir", help="alias for --wordnet-dir")

    p = sub.add_parser("annotate", parents=[ontology, repo], help="attach a weighted sense to an image")
    p.add_argument("--image", required=True)
    p.add_argument("--sense", required=True, help="lemma#pos#senseNo")
    p.add_argument("--weight", required=True, type=float)
    p.add_argument("--by", required=True, dest="annotator")

    p = sub.add_parser("search", parents=[ontology, repo], help="ranked query over committed images")
    p.add_argument("--q", required=True)
    p.add_argument("--maxd", type=_maxd, default=10)
    p.add_argument("--minrel", type=float, default=0.0)
    p.add_argument("--val", type=_range_arg)
    p.add_argument("--ar", type=_range_arg)
    p.add_argument("--dom", type=_range_arg)
    p.add_argument("--keyword")
    p.add_argument("--limit", type=int)
    p.add_argument("--csv", action="store_true", help="machine output: rank,image_id,relevance")

    p = sub.add_parser("evaluate", parents=[ontology, repo], help="run a judged-query benchmark")
    p.add_argument("--queries", required=True)
    p.add_argument("--maxd", type=_maxd, default=10)
    p.add_argument("--subsample", type=_fraction, help="tag fraction used in retrieval")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="write the per-rank curve CSV here")

    p = sub.add_parser("serve", parents=[ontology, repo], help="run the HTTP service")
    p.add_argument("--bind", default="127.0.0.1:8000", help="host:port")
    p.add_argument("--maxd", type=_maxd, default=10)
    p.add_argument("--ui-dir", help="serve a static UI build from this directory")

    p = sub.add_parser("synth", help="write a deterministic synthetic corpus")
    p.add_argument("--images", required=True, type=int)
    p.add_argument("--seed", required=True, type=int)
    p.add_argument("--out", required=True, help="repository file to write")
    p.add_argument("--graph-size", type=int, default=500)
    p.add_argument("--query-count", type=int, default=10)
    p.add_argument("--graph-out", help="also write the synthetic ontology (fixture format)")
    p.add_argument("--queries-out", help="also write the planted judged queries")

    return parser


def _load_ontology(args) -> OntologyGraph:
    simple = getattr(args, "simple", None)
    wordnet_dir = getattr(args, "dir", None) or getattr(args, "wordnet_dir", None)
    if simple:
        with open(simple, "r", encoding="utf-8") as stream:
            return parse_simple_graph(stream, source=simple)
    if wordnet_dir:
        return load_wordnet_dir(wordnet_dir)
    raise FileNotFoundError("no ontology given: pass --wordnet-dir or --simple")


def _load_table(args, graph):
    path = getattr(args, "simpairs", None)
    if not path:
        return None
    with open(path, "r", encoding="utf-8") as stream:
        return load_similarity_pairs(stream, graph)


def _load_repository(args, graph) -> tuple[repo_mod.Repository, Path]:
    if not args.repo:
        raise FileNotFoundError(f"no repository file: pass --repo or set ${REPO_ENV_VAR}")
    path = Path(args.repo)
    if path.exists():
        with path.open("r", encoding="utf-8") as stream:
            return repo_mod.load(stream, graph), path
    return repo_mod.Repository(graph), path


def _save_repository(repository, path: Path) -> None:
    with path.open("w", encoding="utf-8") as stream:
        repo_mod.save(repository, stream)


def cmd_import_wordnet(args) -> int:
    graph = _load_ontology(args)
    print(f"synsets: {len(graph)}")
    print(f"relations: {graph.relation_count()}")
    print(f"lemmas: {len(graph.lemma_index)}")
    return 0


def cmd_annotate(args) -> int:
    graph = _load_ontology(args)
    repository, path = _load_repository(args, graph)
    sense = parse_sense_ref(args.sense, graph)
    record = repository.annotate(args.image, sense, args.weight, args.annotator)
    _save_repository(repository, path)
    annotated = record.annotation_for(sense)
    print(
        f"annotated {record.image_id} with {sense} weight={args.weight} "
        f"by={args.annotator} (mean {annotated.mean_weight():.4f}, raters {len(annotated.ratings)})"
    )
    return 0


def _affect_from_args(args) -> AffectFilter | None:
    if args.val is None and args.ar is None and args.dom is None:
        return None
    return AffectFilter(args.val, args.ar, args.dom)


def cmd_search(args) -> int:
    graph = _load_ontology(args)
    repository, _ = _load_repository(args, graph)
    table = _load_table(args, graph)
    options = SearchOptions(max_distance=args.maxd, min_relevance=args.minrel, limit=args.limit)
    results = search_with_filters(
        args.q, repository, graph, table, options,
        affect=_affect_from_args(args), keyword=args.keyword,
    )
    if args.csv:
        print("rank,image_id,relevance")
        for rank, result in enumerate(results, start=1):
            print(f"{rank},{result.image_id},{result.relevance:.6f}")
        return 0
    if not results:
        print("no results")
        return 0
    for rank, result in enumerate(results, start=1):
        top = sorted(result.matches, key=lambda m: -m.contribution)[:3]
        detail = ", ".join(
            f"{m.image_sense}({m.mean_weight:.2f}x{m.similarity:.2f})" for m in top
        )
        print(f"{rank:>3}  {result.image_id}  {result.relevance:.4f}  {detail}")
    return 0


def cmd_evaluate(args) -> int:
    graph = _load_ontology(args)
    repository, _ = _load_repository(args, graph)
    table = _load_table(args, graph)
    with open(args.queries, "r", encoding="utf-8") as stream:
        queries = eval_mod.load_judged_queries(stream)
    if args.subsample is not None:
        repository = eval_mod.subsample_repository(repository, args.subsample, args.seed)
    report = eval_mod.run_benchmark(
        queries, repository, graph, table, SearchOptions(max_distance=args.maxd)
    )
    print(f"queries: {len(report.per_query)}")
    print(f"mean precision: {report.mean_precision:.6f}")
    print(f"mean result count: {report.mean_result_count:.6f}")
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as stream:
            eval_mod.emit_curve_csv(report, stream)
        print(f"curve written: {args.out}")
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service import ServiceState, create_app

    host, sep, port_text = args.bind.partition(":")
    if not sep:
        raise FileNotFoundError(f"--bind must be host:port, got {args.bind!r}")
    port = int(port_text)

    # Fail fast (exit 2) when the port is taken instead of letting the
    # server loop log-and-die.
    probe = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    try:
        probe.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
        probe.bind((host, port))
    finally:
        probe.close()

    graph = _load_ontology(args)
    repository, path = _load_repository(args, graph)
    table = _load_table(args, graph)
    state = ServiceState(graph, repository, table, max_distance=args.maxd, repo_path=path)
    app = create_app(state, ui_dir=args.ui_dir)
    uvicorn.run(app, host=host, port=port, log_level="warning")
    return 0


def cmd_synth(args) -> int:
    spec = eval_mod.SynthSpec(
        image_count=args.images,
        graph_size=args.graph_size,
        seed=args.seed,
        query_count=args.query_count,
    )
    repository, queries = eval_mod.generate_synthetic_corpus(spec)
    _save_repository(repository, Path(args.out))
    print(f"repository written: {args.out} ({len(repository.images)} images)")
    if args.graph_out:
        with open(args.graph_out, "w", encoding="utf-8") as stream:
            save_simple_graph(repository.ontology, stream)
        print(f"ontology written: {args.graph_out} ({len(repository.ontology)} synsets)")
    if args.queries_out:
        with open(args.queries_out, "w", encoding="utf-8") as stream:
            eval_mod.save_judged_queries(queries, stream)
        print(f"queries written: {args.queries_out} ({len(queries)} queries)")
    return 0


_COMMANDS = {
    "import-wordnet": cmd_import_wordnet,
    "annotate": cmd_annotate,
    "search": cmd_search,
    "evaluate": cmd_evaluate,
    "serve": cmd_serve,
    "synth": cmd_synth,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (ParseError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
