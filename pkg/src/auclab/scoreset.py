"""Immutable container for scored binary-classification samples.

A :class:`ScoreSet` pairs continuous scores in the open interval (0, 1) with
binary labels, plus optional subgroup tags. It is the empirical distribution
every metric in this package consumes. Instances are frozen; operations that
"modify" scores return new sets.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import TiedScoresError


def _tied_groups(scores: np.ndarray) -> tuple[tuple[int, ...], ...]:
    """Return one tuple of sample indices per duplicated score value."""
    order = np.argsort(scores, kind="stable")
    s = scores[order]
    if len(s) < 2 or not (s[1:] == s[:-1]).any():
        return ()
    groups: list[tuple[int, ...]] = []
    i = 0
    while i < len(s):
        j = i + 1
        while j < len(s) and s[j] == s[i]:
            j += 1
        if j - i > 1:
            groups.append(tuple(int(k) for k in sorted(order[i:j])))
        i = j
    return tuple(groups)


@dataclass(frozen=True)
class ScoreSet:
    """Paired scores, labels and optional group tags.

    Invariants enforced at construction: equal lengths, N >= 1, every score
    strictly inside (0, 1), labels in {0, 1}, group ids non-negative
    integers. Ties between scores are allowed here; operations that need
    pairwise-distinct scores call :meth:`require_strict`.
    """

    scores: np.ndarray
    labels: np.ndarray
    groups: np.ndarray | None = None
    _tied: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        scores = np.asarray(self.scores, dtype=np.float64).copy()
        labels = np.asarray(self.labels).copy()
        if scores.ndim != 1 or labels.ndim != 1:
            raise ValueError("scores and labels must be one-dimensional")
        if len(scores) == 0:
            raise ValueError("a ScoreSet needs at least one sample")
        if len(scores) != len(labels):
            raise ValueError(
                f"length mismatch: {len(scores)} scores vs {len(labels)} labels"
            )
        if not np.all(np.isfinite(scores)):
            raise ValueError("scores must be finite")
        if np.any(scores <= 0.0) or np.any(scores >= 1.0):
            bad = np.where((scores <= 0.0) | (scores >= 1.0))[0]
            raise ValueError(
                f"scores must lie strictly inside (0, 1); offending indices {bad.tolist()}"
            )
        if not np.all(np.isin(labels, (0, 1))):
            raise ValueError("labels must be 0 or 1")
        labels = labels.astype(np.int64)
        groups = self.groups
        if groups is not None:
            groups = np.asarray(groups).copy()
            if groups.ndim != 1 or len(groups) != len(scores):
                raise ValueError("groups must match the sample count")
            if not np.issubdtype(groups.dtype, np.integer):
                as_int = groups.astype(np.int64)
                if np.any(as_int != groups):
                    raise ValueError("group ids must be integers")
                groups = as_int
            else:
                groups = groups.astype(np.int64)
            if np.any(groups < 0):
                raise ValueError("group ids must be non-negative")
            groups.setflags(write=False)
        scores.setflags(write=False)
        labels.setflags(write=False)
        object.__setattr__(self, "scores", scores)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "groups", groups)
        object.__setattr__(self, "_tied", _tied_groups(scores))

    @property
    def n(self) -> int:
        return len(self.scores)

    @property
    def n_pos(self) -> int:
        return int(np.count_nonzero(self.labels == 1))

    @property
    def n_neg(self) -> int:
        return self.n - self.n_pos

    @property
    def prevalence(self) -> float:
        return self.n_pos / self.n

    @property
    def is_strict(self) -> bool:
        """True when all scores are pairwise distinct."""
        return not self._tied

    def require_strict(self) -> None:
        """Raise :class:`TiedScoresError` unless all scores are distinct."""
        if self._tied:
            flat = ", ".join(str(list(g)) for g in self._tied)
            raise TiedScoresError(
                f"tied scores at sample indices {flat}", tied_indices=self._tied
            )

    def with_scores(self, new_scores: np.ndarray) -> "ScoreSet":
        """Same samples (labels, groups) with a replacement score vector."""
        return ScoreSet(new_scores, self.labels, self.groups)

    def group_ids(self) -> tuple[int, ...]:
        if self.groups is None:
            return ()
        return tuple(int(g) for g in np.unique(self.groups))

    def restrict(self, group: int) -> "ScoreSet":
        """The sub-sample belonging to one group (group tags retained)."""
        if self.groups is None:
            raise ValueError("ScoreSet has no group tags")
        mask = self.groups == group
        if not np.any(mask):
            raise ValueError(f"no samples in group {group}")
        return ScoreSet(self.scores[mask], self.labels[mask], self.groups[mask])
