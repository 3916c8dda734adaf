"""Tab-separated fixture graph format.

One synset per line::

    <id> TAB <comma-separated lemmas> TAB <gloss> TAB <relation:targetId;...>

Ids are a POS letter followed by an integer (``n1``, ``v12``). Relation
names are the lowercase RelationType values. ``#`` starts a comment line.
The resulting graph is built through the same resolution step as the
WordNet parser, so inverse edges and dangling-pointer checks behave
identically.
"""

from __future__ import annotations

import re
from typing import Mapping, Sequence, TextIO

from ..errors import DuplicateOffset, MalformedLine
from .model import OntologyGraph, RelationType, SynsetId, build_graph, normalize_surface

_ID_RE = re.compile(r"^([nvar])(\d+)$")
_RELATION_NAMES = {rel.value: rel for rel in RelationType}

# Writing only hypernym/holonym entries keeps one representative per
# inverse pair; the build step restores the other direction on reload.
_FORWARD_RELATIONS = (RelationType.HYPERNYM, RelationType.HOLONYM)


def _parse_id(token: str, line_no: int, source: str) -> SynsetId:
    match = _ID_RE.match(token.strip())
    if not match:
        raise MalformedLine(line_no, f"bad synset id {token!r}", source)
    return SynsetId(match.group(1), int(match.group(2)))


def parse_simple_graph(
    stream: TextIO,
    exception_forms: Mapping[str, Sequence[str]] | None = None,
    source: str = "",
) -> OntologyGraph:
    raw: dict[SynsetId, tuple] = {}
    for line_no, line in enumerate(stream, start=1):
        stripped = line.rstrip("\n")
        if not stripped.strip() or stripped.lstrip().startswith("#"):
            continue
        parts = stripped.split("\t")
        if not 3 <= len(parts) <= 4:
            raise MalformedLine(line_no, f"expected 3-4 tab fields, got {len(parts)}", source)

        synset_id = _parse_id(parts[0], line_no, source)
        lemmas = tuple(
            normalize_surface(lemma) for lemma in parts[1].split(",") if lemma.strip()
        )
        if not lemmas:
            raise MalformedLine(line_no, "synset has no lemmas", source)
        gloss = parts[2].strip()

        relations = []
        relation_field = parts[3] if len(parts) == 4 else ""
        for chunk in relation_field.split(";"):
            chunk = chunk.strip()
            if not chunk:
                continue
            name, sep, target = chunk.partition(":")
            if not sep:
                raise MalformedLine(line_no, f"relation {chunk!r} missing ':'", source)
            relation = _RELATION_NAMES.get(name.strip())
            if relation is None:
                raise MalformedLine(line_no, f"unknown relation {name.strip()!r}", source)
            relations.append((relation, _parse_id(target, line_no, source)))

        if synset_id in raw:
            raise DuplicateOffset(synset_id)
        raw[synset_id] = (lemmas, gloss, tuple(relations))

    return build_graph(raw, exception_forms)


def save_simple_graph(graph: OntologyGraph, stream: TextIO) -> None:
    """Serialize a graph to the fixture format (round-trips structurally)."""
    for synset in sorted(graph, key=lambda s: s.id):
        edges = ";".join(
            f"{relation.value}:{target}"
            for relation, target in synset.relations
            if relation in _FORWARD_RELATIONS
        )
        stream.write(f"{synset.id}\t{','.join(synset.lemmas)}\t{synset.gloss}\t{edges}\n")
