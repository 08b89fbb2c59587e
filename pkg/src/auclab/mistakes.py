"""Incorrectly ranked adjacent pairs and their exact metric deltas.

A *mistake* is a pair of samples adjacent in the ascending-score ordering
whose labels are (1, 0): a positive scored directly below a negative with no
other score in between. Swapping the two scores corrects the pair. Each such
correction raises AUROC by exactly ``1 / (n_pos * n_neg)`` no matter which
pair is corrected. The AUPRC gain equals ``P / (n_pos * A * (A - 1))`` where
``A`` counts samples scored at or above the pair's positive and ``P`` counts
the positives among them, so corrections high in the ordering tend to pay
more, though the growth is not strictly monotone in position (a lower pair
with many positives above it can out-pay a higher one). All operations
require pairwise-distinct scores.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import MetricUndefinedError, StaleMistakeError
from .metrics import auprc, auroc
from .scoreset import ScoreSet


@dataclass(frozen=True)
class MistakeRecord:
    """One incorrectly ranked adjacent pair.

    ``low_index`` is the 0-based position of the pair's positive sample in
    the ascending-score ordering; the negative sits at ``low_index + 1``.
    Deltas are the metric changes from correcting this pair alone.
    """

    low_index: int
    low_score: float
    high_score: float
    low_group: int | None
    high_group: int | None
    delta_auroc: float
    delta_auprc: float

    @property
    def within_group(self) -> bool:
        return self.low_group is not None and self.low_group == self.high_group


def _ascending_order(s: ScoreSet) -> np.ndarray:
    s.require_strict()
    return np.argsort(s.scores)


def _swap_scores(s: ScoreSet, i: int, j: int) -> ScoreSet:
    new_scores = s.scores.copy()
    new_scores[i], new_scores[j] = new_scores[j], new_scores[i]
    return s.with_scores(new_scores)


def _mistake_positions(labels_sorted: np.ndarray) -> np.ndarray:
    return np.where((labels_sorted[:-1] == 1) & (labels_sorted[1:] == 0))[0]


def enumerate_mistakes(s: ScoreSet) -> list[MistakeRecord]:
    """All mistakes of ``s``, ascending by position.

    Deltas are computed by actually correcting each pair and recomputing
    both metrics; no closed-form shortcuts.
    """
    order = _ascending_order(s)
    if s.n_pos == 0 or s.n_neg == 0:
        raise MetricUndefinedError("mistake deltas need both classes present")
    labels_sorted = s.labels[order]
    base_auroc = auroc(s)
    base_auprc = auprc(s)
    records = []
    for k in _mistake_positions(labels_sorted):
        i, j = int(order[k]), int(order[k + 1])
        fixed = _swap_scores(s, i, j)
        records.append(
            MistakeRecord(
                low_index=int(k),
                low_score=float(s.scores[i]),
                high_score=float(s.scores[j]),
                low_group=int(s.groups[i]) if s.groups is not None else None,
                high_group=int(s.groups[j]) if s.groups is not None else None,
                delta_auroc=auroc(fixed) - base_auroc,
                delta_auprc=auprc(fixed) - base_auprc,
            )
        )
    return records


def _locate(s: ScoreSet, m: MistakeRecord) -> tuple[int, int]:
    """Sample indices of the pair, verifying ``m`` still describes ``s``."""
    order = _ascending_order(s)
    k = m.low_index
    if k < 0 or k + 1 >= s.n:
        raise StaleMistakeError(f"mistake position {k} out of range")
    i, j = int(order[k]), int(order[k + 1])
    if (
        s.scores[i] != m.low_score
        or s.scores[j] != m.high_score
        or s.labels[i] != 1
        or s.labels[j] != 0
    ):
        raise StaleMistakeError(
            f"pair at ascending position {k} no longer matches the record"
        )
    return i, j


def fix_mistake(s: ScoreSet, m: MistakeRecord) -> ScoreSet:
    """Exchange the pair's two scores between their samples.

    Labels and group tags stay with their samples; only the scores move.
    Raises :class:`StaleMistakeError` if ``m`` is not a current mistake of
    ``s``.
    """
    i, j = _locate(s, m)
    return _swap_scores(s, i, j)


def mistake_deltas(s: ScoreSet, m: MistakeRecord) -> tuple[float, float]:
    """(delta_auroc, delta_auprc) from correcting ``m``, by recomputation."""
    fixed = fix_mistake(s, m)
    return auroc(fixed) - auroc(s), auprc(fixed) - auprc(s)


def select_mistake(
    records: list[MistakeRecord], objective: str, rng: np.random.Generator
) -> MistakeRecord:
    """Pick the mistake a greedy step should correct from an enumeration."""
    if objective not in ("auroc", "auprc"):
        raise ValueError(f"unknown objective {objective!r}")
    if not records:
        raise MetricUndefinedError("no mistakes: the ranking is already perfect")
    if objective == "auprc":
        # argmax AUPRC improvement; exact deltas equal
        # (positives at or above the pair) / (n_pos * A * (A - 1)) with
        # A = samples at or above the pair, so the gain usually, but not
        # always, grows with position. Delta ties break toward the higher
        # pair for determinism.
        return max(records, key=lambda m: (m.delta_auprc, m.low_index))
    return records[int(rng.integers(len(records)))]


def best_mistake(
    s: ScoreSet, objective: str, rng: np.random.Generator
) -> MistakeRecord:
    """The mistake a greedy step should correct for the given objective.

    ``objective="auprc"``: the mistake whose correction maximally improves
    AUPRC (ties broken toward the higher pair). ``objective="auroc"``: all
    corrections improve AUROC identically, so a uniformly random mistake
    drawn from ``rng``.
    """
    return select_mistake(enumerate_mistakes(s), objective, rng)
