"""Princeton WordNet 3.x database file parser.

Reads ``data.{noun,verb,adj,adv}`` files into an :class:`OntologyGraph`.
Each data line is::

    offset lex_filenum ss_type w_cnt word lex_id [word lex_id ...]
    p_cnt [ptr_symbol offset pos source/target ...] [frames] | gloss

with ``w_cnt`` in hex and ``p_cnt`` decimal. Only hypernym, hyponym,
holonym and meronym pointers are kept (instance and member/substance/part
flavors folded in); everything else is dropped. The lemma index is rebuilt
from the data files directly, so ``index.*`` files are not required.
License header lines (leading two spaces) are skipped.
"""

from __future__ import annotations

import re
from pathlib import Path
from typing import Mapping, Sequence, TextIO

from ..errors import DuplicateOffset, MalformedLine
from .model import (
    OntologyGraph,
    RelationType,
    SynsetId,
    build_graph,
    merge_exception_forms,
    normalize_surface,
)

POINTER_RELATIONS = {
    "@": RelationType.HYPERNYM,
    "@i": RelationType.HYPERNYM,
    "~": RelationType.HYPONYM,
    "~i": RelationType.HYPONYM,
    "#m": RelationType.HOLONYM,
    "#s": RelationType.HOLONYM,
    "#p": RelationType.HOLONYM,
    "%m": RelationType.MERONYM,
    "%s": RelationType.MERONYM,
    "%p": RelationType.MERONYM,
}

# Satellite adjectives live in data.adj; their special semantics are ignored.
_SS_TYPE_TO_POS = {"n": "n", "v": "v", "a": "a", "s": "a", "r": "r"}

_DATA_FILES = {"n": "data.noun", "v": "data.verb", "a": "data.adj", "r": "data.adv"}
_EXC_FILES = {"n": "noun.exc", "v": "verb.exc", "a": "adj.exc", "r": "adv.exc"}

_MARKER_RE = re.compile(r"\([a-z]+\)$")


def _clean_word(word: str) -> str:
    # Adjective entries may carry a syntactic marker suffix like "(p)".
    return normalize_surface(_MARKER_RE.sub("", word))


def _parse_data_line(line: str, line_no: int, source: str):
    head, _, gloss = line.partition("|")
    fields = head.split()
    try:
        offset = int(fields[0])
        ss_type = fields[2]
        pos = _SS_TYPE_TO_POS[ss_type]
        w_cnt = int(fields[3], 16)
    except (IndexError, ValueError, KeyError):
        raise MalformedLine(line_no, "bad synset header", source) from None
    if w_cnt < 1:
        raise MalformedLine(line_no, "synset has no words", source)

    cursor = 4
    words: list[str] = []
    try:
        for _ in range(w_cnt):
            words.append(_clean_word(fields[cursor]))
            int(fields[cursor + 1], 16)  # lex_id, unused
            cursor += 2
        p_cnt = int(fields[cursor])
        cursor += 1
    except (IndexError, ValueError):
        raise MalformedLine(line_no, "truncated word list", source) from None

    relations: list[tuple[RelationType, SynsetId]] = []
    try:
        for _ in range(p_cnt):
            symbol = fields[cursor]
            target_offset = int(fields[cursor + 1])
            target_pos = _SS_TYPE_TO_POS[fields[cursor + 2]]
            int(fields[cursor + 3], 16)  # source/target word numbers, unused
            cursor += 4
            relation = POINTER_RELATIONS.get(symbol)
            if relation is not None:
                relations.append((relation, SynsetId(target_pos, target_offset)))
    except (IndexError, ValueError, KeyError):
        raise MalformedLine(line_no, "truncated pointer list", source) from None

    # Verb frames (if any) sit between the pointers and the gloss bar; the
    # split on "|" above already put them out of reach.
    synset_id = SynsetId(pos, offset)
    return synset_id, (tuple(words), gloss.strip(), tuple(relations))


def parse_data_file(stream: TextIO, source: str = "") -> dict:
    """Parse one data.{pos} stream into raw synsets (unresolved relations)."""
    raw: dict[SynsetId, tuple] = {}
    for line_no, line in enumerate(stream, start=1):
        if line.startswith("  ") or not line.strip():
            continue
        synset_id, payload = _parse_data_line(line.rstrip("\n"), line_no, source)
        if synset_id in raw:
            raise DuplicateOffset(synset_id)
        raw[synset_id] = payload
    return raw


def parse_exception_file(stream: TextIO, source: str = "") -> dict[str, tuple[str, ...]]:
    """Parse a .exc morphology file: ``inflected base [base ...]`` per line."""
    table: dict[str, tuple[str, ...]] = {}
    for line_no, line in enumerate(stream, start=1):
        if not line.strip() or line.startswith("#"):
            continue
        parts = [normalize_surface(p) for p in line.split()]
        if len(parts) < 2:
            raise MalformedLine(line_no, "exception entry needs a base lemma", source)
        table[parts[0]] = tuple(parts[1:])
    return table


def parse_ontology(
    data_files: Mapping[str, TextIO],
    exception_files: Mapping[str, TextIO] | None = None,
) -> OntologyGraph:
    """Build the graph from per-POS data streams (keys: n, v, a, r).

    All supported pointers must resolve once every stream is consumed;
    the first dangling one (in (pos, offset) order) is reported.
    """
    raw: dict[SynsetId, tuple] = {}
    for pos, stream in data_files.items():
        parsed = parse_data_file(stream, source=_DATA_FILES.get(pos, pos))
        for synset_id, payload in parsed.items():
            if synset_id in raw:
                raise DuplicateOffset(synset_id)
            raw[synset_id] = payload

    exceptions: Sequence[Mapping[str, Sequence[str]]] = []
    if exception_files:
        exceptions = [
            parse_exception_file(stream, source=_EXC_FILES.get(pos, pos))
            for pos, stream in exception_files.items()
        ]
    return build_graph(raw, merge_exception_forms(exceptions))


def load_wordnet_dir(path: str | Path) -> OntologyGraph:
    """Load a WordNet database directory (data.* plus optional *.exc files)."""
    root = Path(path)
    data_streams = {}
    exc_streams = {}
    try:
        for pos, name in _DATA_FILES.items():
            candidate = root / name
            if candidate.exists():
                data_streams[pos] = candidate.open("r", encoding="utf-8")
        if not data_streams:
            raise FileNotFoundError(f"no data.* files found under {root}")
        for pos, name in _EXC_FILES.items():
            candidate = root / name
            if candidate.exists():
                exc_streams[pos] = candidate.open("r", encoding="utf-8")
        return parse_ontology(data_streams, exc_streams)
    finally:
        for stream in (*data_streams.values(), *exc_streams.values()):
            stream.close()
