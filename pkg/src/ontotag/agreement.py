"""Chance-corrected inter-annotator agreement for weighted tags.

Continuous weights are discretized into equal-width bins over [0, 1]
(1.0 lands in the top bin) and agreement is the Fleiss statistic over the
resulting per-subject category counts. kappa = 1 means every rater of
every subject picked the same bin; 0 is chance level; negative values are
worse than chance.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import InsufficientRaters

DEFAULT_BINS = 5
# Conventional floor for "moderate" agreement; tags below it get flagged.
INADEQUATE_THRESHOLD = 0.4


def discretize_weight(weight: float, bins: int) -> int:
    """Equal-width bin index over [0, 1]; weight 1.0 falls in the top bin."""
    if bins < 1:
        raise ValueError(f"bins must be >= 1, got {bins}")
    return min(int(weight * bins), bins - 1)


def weight_bin_counts(weights: Sequence[float], bins: int) -> list[int]:
    counts = [0] * bins
    for weight in weights:
        counts[discretize_weight(weight, bins)] += 1
    return counts


def fleiss_kappa(counts: Sequence[Sequence[int]]) -> float:
    """Fleiss kappa over an N-subjects x M-categories rating count matrix.

    Rows may have different rater totals (each needs at least 2). When the
    expected agreement is already perfect (all mass in one category) the
    statistic is pinned to 1.0 rather than dividing 0 by 0.
    """
    if not counts:
        raise ValueError("empty count matrix")

    per_subject = []
    category_totals = [0] * len(counts[0])
    grand_total = 0
    for row in counts:
        n = sum(row)
        if n < 2:
            raise InsufficientRaters(n)
        agreeing_pairs = sum(c * (c - 1) for c in row)
        per_subject.append(agreeing_pairs / (n * (n - 1)))
        for j, c in enumerate(row):
            category_totals[j] += c
        grand_total += n

    observed = sum(per_subject) / len(per_subject)
    expected = sum((total / grand_total) ** 2 for total in category_totals)
    if 1.0 - expected < 1e-12:
        return 1.0
    return (observed - expected) / (1.0 - expected)


@dataclass(frozen=True)
class AgreementResult:
    kappa: float
    rater_count: int
    bins: int
    threshold: float

    @property
    def inadequate(self) -> bool:
        return self.kappa < self.threshold


def weight_agreement(
    weights: Sequence[float],
    bins: int = DEFAULT_BINS,
    threshold: float = INADEQUATE_THRESHOLD,
) -> AgreementResult:
    """Single-tag agreement across its raters' weights."""
    if len(weights) < 2:
        raise InsufficientRaters(len(weights))
    kappa = fleiss_kappa([weight_bin_counts(weights, bins)])
    return AgreementResult(kappa, len(weights), bins, threshold)
