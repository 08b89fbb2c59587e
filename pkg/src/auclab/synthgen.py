"""Synthetic score generation with a target AUROC.

The core sampler places positives uniformly on (0, 1), then drops each
negative into one of the ``n_pos + 1`` windows between consecutive sorted
positive scores (sentinels 0 and 1 included). The window holding ``i``
positives below it is chosen with the Binomial(n_pos, 1 - target) probability
of ``i``, which makes the expected fraction of positives above a random
negative -- and therefore the expected empirical AUROC -- exactly the target.

Two rank-preserving "squeeze" maps move a sample's mean score onto its
prevalence without touching AUROC or AUPRC: a power map ``s -> s**g`` with a
numerically solved exponent, and a plain multiplicative map
``s -> s * (prevalence / mean)``. Multi-group construction concatenates
per-group draws, by default applying the multiplicative squeeze per group so
that a lower-prevalence group occupies a proportionally lower score range.

A separate generator draws perfectly calibrated sets: scores from a supplied
distribution, labels Bernoulli(score).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.optimize import brentq
from scipy.stats import binom

from .errors import DataError
from .scoreset import ScoreSet

_MAX_REDRAWS = 100

SQUEEZE_MODES = ("none", "power", "linear")


def _check_rate(name: str, value: float) -> None:
    if not 0.0 < value < 1.0:
        raise ValueError(f"{name} must lie strictly inside (0, 1); got {value}")


@dataclass(frozen=True)
class SynthConfig:
    """Parameters for one target-AUROC draw."""

    n_total: int
    prevalence: float
    target_auroc: float
    rescale_to_prevalence: bool = False
    seed: int = 0

    def __post_init__(self):
        if self.n_total < 2:
            raise ValueError("n_total must be at least 2")
        _check_rate("prevalence", self.prevalence)
        if not 0.5 <= self.target_auroc <= 1.0:
            raise ValueError(
                f"target_auroc must lie in [0.5, 1]; got {self.target_auroc}"
            )
        if self.n_total * self.prevalence < 1.0:
            raise ValueError("expected positive count n_total * prevalence is below 1")
        if self.seed < 0:
            raise ValueError("seed must be non-negative")

    @property
    def n_pos(self) -> int:
        return int(round(self.n_total * self.prevalence))

    @property
    def n_neg(self) -> int:
        return self.n_total - self.n_pos


@dataclass(frozen=True)
class GroupConfig:
    group_id: int
    n: int
    prevalence: float
    target_auroc: float

    def __post_init__(self):
        if self.group_id < 0:
            raise ValueError("group ids must be non-negative")
        if self.n < 2:
            raise ValueError("each group needs at least 2 samples")
        _check_rate("prevalence", self.prevalence)
        if not 0.5 <= self.target_auroc <= 1.0:
            raise ValueError(
                f"target_auroc must lie in [0.5, 1]; got {self.target_auroc}"
            )
        if self.n * self.prevalence < 1.0:
            raise ValueError("expected positive count n * prevalence is below 1")


@dataclass(frozen=True)
class GroupSpec:
    groups: tuple[GroupConfig, ...]

    def __post_init__(self):
        object.__setattr__(self, "groups", tuple(self.groups))
        if not self.groups:
            raise ValueError("GroupSpec needs at least one group")
        ids = [g.group_id for g in self.groups]
        if len(set(ids)) != len(ids):
            raise ValueError(f"group ids must be distinct; got {ids}")


def _draw_positive_scores(n_pos: int, rng: np.random.Generator) -> np.ndarray:
    for _ in range(_MAX_REDRAWS):
        pos = rng.uniform(0.0, 1.0, n_pos)
        if np.all(pos > 0.0) and len(np.unique(pos)) == n_pos:
            return pos
    raise RuntimeError("could not draw distinct positive scores")


def _draw_scores(
    n_pos: int, n_neg: int, target_auroc: float, rng: np.random.Generator
) -> tuple[np.ndarray, np.ndarray]:
    """Positive and negative score vectors, tie-free, via window sampling."""
    if n_pos == 0 or n_neg == 0:
        raise DataError(
            f"degenerate class counts: {n_pos} positives, {n_neg} negatives"
        )
    pos = _draw_positive_scores(n_pos, rng)
    edges = np.concatenate([[0.0], np.sort(pos), [1.0]])
    window_probs = binom.pmf(np.arange(n_pos + 1), n_pos, 1.0 - target_auroc)
    window_probs = window_probs / window_probs.sum()
    for _ in range(_MAX_REDRAWS):
        windows = rng.choice(n_pos + 1, size=n_neg, p=window_probs)
        neg = rng.uniform(edges[windows], edges[windows + 1])
        if np.any(neg <= 0.0) or np.any(neg >= 1.0):
            continue
        combined = np.concatenate([pos, neg])
        if len(np.unique(combined)) == len(combined):
            return pos, neg
    raise RuntimeError("could not draw tie-free negative scores")


def sample_target_auroc(
    cfg: SynthConfig, rng: np.random.Generator | None = None
) -> ScoreSet:
    """Draw a tie-free ScoreSet whose expected empirical AUROC equals
    ``cfg.target_auroc``.

    The positive count is ``round(n_total * prevalence)``, fixed per draw.
    Ties (probability zero) are re-drawn. With
    ``cfg.rescale_to_prevalence`` the power-map rescale is applied
    afterwards.
    """
    if rng is None:
        rng = np.random.default_rng(cfg.seed)
    pos, neg = _draw_scores(cfg.n_pos, cfg.n_neg, cfg.target_auroc, rng)
    scores = np.concatenate([pos, neg])
    labels = np.concatenate(
        [np.ones(cfg.n_pos, dtype=np.int64), np.zeros(cfg.n_neg, dtype=np.int64)]
    )
    out = ScoreSet(scores, labels)
    if cfg.rescale_to_prevalence:
        out = rescale_mean_to_prevalence(out)
    return out


def rescale_mean_to_prevalence(s: ScoreSet) -> ScoreSet:
    """Monotone power map ``score -> score**g`` with ``g`` solved so the mean
    score equals the sample's prevalence.

    Rank-preserving, so AUROC and AUPRC are unchanged. Solved to
    ``|mean - prevalence| < 1e-9``.
    """
    prev = s.prevalence
    if not 0.0 < prev < 1.0:
        raise DataError(
            f"target mean {prev} is not attainable: it must lie inside (0, 1)"
        )
    if abs(float(np.mean(s.scores)) - prev) < 1e-9:
        return s

    def gap(g: float) -> float:
        return float(np.mean(s.scores**g)) - prev

    lo, hi = 1e-9, 1.0
    while gap(hi) > 0.0:
        hi *= 2.0
        if hi > 1e9:
            raise DataError("power-map exponent search failed to bracket")
    gamma = float(brentq(gap, lo, hi, xtol=1e-15, rtol=1e-15))
    mapped = s.scores**gamma
    if abs(float(np.mean(mapped)) - prev) >= 1e-9:
        raise ArithmeticError("power-map solve did not reach tolerance")
    if np.any(mapped <= 0.0) or np.any(mapped >= 1.0):
        raise DataError("power map left the open interval (0, 1)")
    return s.with_scores(mapped)


def scale_mean_to_prevalence(s: ScoreSet) -> ScoreSet:
    """Multiplicative map ``score -> score * (prevalence / mean)``.

    Rank-preserving like the power map, but squeezes the whole score range
    proportionally, so a low-prevalence sample ends up occupying a
    proportionally low score band. Fails if the factor would push any score
    to 1 or beyond.
    """
    prev = s.prevalence
    if not 0.0 < prev < 1.0:
        raise DataError(
            f"target mean {prev} is not attainable: it must lie inside (0, 1)"
        )
    factor = prev / float(np.mean(s.scores))
    mapped = s.scores * factor
    if np.any(mapped >= 1.0) or np.any(mapped <= 0.0):
        raise DataError(
            f"multiplicative factor {factor:.6g} would leave the interval (0, 1)"
        )
    return s.with_scores(mapped)


def _squeeze(s: ScoreSet, mode: str) -> ScoreSet:
    if mode == "none":
        return s
    if mode == "power":
        return rescale_mean_to_prevalence(s)
    if mode == "linear":
        return scale_mean_to_prevalence(s)
    raise ValueError(f"unknown squeeze mode {mode!r}; expected one of {SQUEEZE_MODES}")


@dataclass(frozen=True)
class ScoreDistribution:
    """Named score distribution over (0, 1) for the calibrated generator."""

    name: str
    draw: Callable[[np.random.Generator, int], np.ndarray]


def uniform_scores() -> ScoreDistribution:
    return ScoreDistribution("uniform", lambda rng, n: rng.uniform(0.0, 1.0, n))


def beta_scores(a: float, b: float) -> ScoreDistribution:
    if a <= 0 or b <= 0:
        raise ValueError("beta shape parameters must be positive")
    return ScoreDistribution(f"beta({a:g},{b:g})", lambda rng, n: rng.beta(a, b, n))


def constant_scores(value: float) -> ScoreDistribution:
    _check_rate("constant score", value)
    return ScoreDistribution(
        f"constant({value:g})", lambda rng, n: np.full(n, float(value))
    )


def sample_calibrated(
    n: int, score_distribution: ScoreDistribution, rng: np.random.Generator
) -> ScoreSet:
    """Perfectly calibrated sample: scores from ``score_distribution``,
    labels Bernoulli(score).

    By construction the conditional positive rate at score t equals t, so
    the mean score matches the expected prevalence. Boundary draws (exactly
    0 or 1, probability zero for continuous distributions) are re-drawn.
    """
    if n < 1:
        raise ValueError("n must be positive")
    scores = np.asarray(score_distribution.draw(rng, n), dtype=np.float64)
    if scores.shape != (n,):
        raise DataError(
            f"distribution {score_distribution.name!r} returned shape {scores.shape}"
        )
    for _ in range(_MAX_REDRAWS):
        bad = ~np.isfinite(scores) | (scores <= 0.0) | (scores >= 1.0)
        if not np.any(bad):
            break
        scores = scores.copy()
        scores[bad] = np.asarray(
            score_distribution.draw(rng, int(bad.sum())), dtype=np.float64
        )
    else:
        raise DataError(
            f"distribution {score_distribution.name!r} keeps producing values outside (0, 1)"
        )
    labels = (rng.random(n) < scores).astype(np.int64)
    return ScoreSet(scores, labels)


def build_two_group_dataset(
    spec: GroupSpec, rng: np.random.Generator, squeeze: str = "linear"
) -> ScoreSet:
    """Concatenated multi-group draw with group tags.

    Each group is sampled independently at its own target AUROC, then
    squeezed per ``squeeze`` ("linear" by default, "power", or "none").
    Squeezing never changes a group's internal AUROC/AUPRC. The joint AUROC
    is not controlled and is surfaced by callers for information only.
    """
    if len(spec.groups) < 2:
        raise ValueError("build_two_group_dataset needs at least two groups")
    if squeeze not in SQUEEZE_MODES:
        raise ValueError(f"unknown squeeze mode {squeeze!r}; expected one of {SQUEEZE_MODES}")
    for _ in range(_MAX_REDRAWS):
        parts = []
        for g in spec.groups:
            n_pos = int(round(g.n * g.prevalence))
            pos, neg = _draw_scores(n_pos, g.n - n_pos, g.target_auroc, rng)
            part = ScoreSet(
                np.concatenate([pos, neg]),
                np.concatenate(
                    [np.ones(n_pos, dtype=np.int64), np.zeros(g.n - n_pos, dtype=np.int64)]
                ),
                np.full(g.n, g.group_id, dtype=np.int64),
            )
            parts.append(_squeeze(part, squeeze))
        scores = np.concatenate([p.scores for p in parts])
        if len(np.unique(scores)) == len(scores):
            return ScoreSet(
                scores,
                np.concatenate([p.labels for p in parts]),
                np.concatenate([p.groups for p in parts]),
            )
    raise RuntimeError("could not build a tie-free multi-group dataset")
