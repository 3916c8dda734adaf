"""Rule-based lemma normalization against a loaded graph.

Resolution cascade: the surface form itself if it is a known lemma, else
exception-list matches, else suffix-rule candidates — each stage filtered
to lemmas actually present in the index, so every returned candidate is
guaranteed resolvable.
"""

from __future__ import annotations

from .model import OntologyGraph, normalize_surface

# (suffix, replacement) pairs, tried longest-suffix-first. The paired
# "es"->"e" / "es"->"" (etc.) entries attempt e-restoration for verbs.
SUFFIX_RULES: dict[str, tuple[tuple[str, str], ...]] = {
    "n": (
        ("ses", "s"),
        ("xes", "x"),
        ("zes", "z"),
        ("ches", "ch"),
        ("shes", "sh"),
        ("ies", "y"),
        ("s", ""),
    ),
    "v": (
        ("ies", "y"),
        ("es", "e"),
        ("es", ""),
        ("ed", "e"),
        ("ed", ""),
        ("ing", "e"),
        ("ing", ""),
        ("s", ""),
    ),
    "a": (),
    "r": (),
}


def suffix_candidates(form: str, pos: str) -> list[str]:
    """All distinct stems produced by the POS rule set, in rule order."""
    candidates = []
    for suffix, replacement in SUFFIX_RULES.get(pos, ()):
        if form.endswith(suffix) and len(form) > len(suffix):
            stem = form[: -len(suffix)] + replacement
            if stem and stem != form and stem not in candidates:
                candidates.append(stem)
    return candidates


def normalize_lemma(surface_form: str, pos: str, graph: OntologyGraph) -> list[str]:
    """Candidate base lemmas for a surface form, empty list when nothing matches."""
    form = normalize_surface(surface_form)
    if not form:
        return []

    if graph.has_lemma(form):
        return [form]

    exception_bases = [
        base
        for base in graph.exception_forms.get(form, ())
        if graph.has_lemma(base)
    ]
    if exception_bases:
        return list(dict.fromkeys(exception_bases))

    return [stem for stem in suffix_candidates(form, pos) if graph.has_lemma(stem)]
