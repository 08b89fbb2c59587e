"""Metric-greedy score optimization procedures.

Three ways to "optimize" a score vector against AUROC or AUPRC without any
model in the loop:

* ``m1`` -- add elementwise uniform noise in [-delta, delta], generate a
  batch of candidates, keep the best scorer;
* ``m2`` -- correct one misranked adjacent pair per step (uniform-random
  pair for AUROC, where every pair is worth the same; the highest-scoring
  pair for AUPRC, which is the argmax improvement);
* ``m3`` -- permute the sorted scores under a maximum-displacement bound
  ``gamma``, sampling a batch of candidate permutations and keeping the
  best scorer.

For m1 and m3 the unmodified incumbent always competes as candidate 0, so
the objective never decreases along a run. Per-group metrics can still
regress; recording that is the point of the per-step trajectory.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .analysis import per_group_metrics
from .metrics import auprc, auroc
from .mistakes import MistakeRecord, enumerate_mistakes, fix_mistake, select_mistake
from .scoreset import ScoreSet

PROCEDURES = ("m1", "m2", "m3")
OBJECTIVES = ("auroc", "auprc")

#: score clamp bounds for m1 noise, keeping scores inside (0, 1)
_CLAMP_LO = 1e-9
_CLAMP_HI = 1.0 - 1e-9

_DEFAULT_CANDIDATES = {"m1": 100, "m3": 20}

#: attempts at drawing one displacement-bounded permutation before giving up
_MAX_PERMUTATION_TRIES = 10_000


@dataclass(frozen=True)
class OptimizerConfig:
    procedure: str
    objective: str
    steps: int
    seed: int = 0
    candidates_per_step: int | None = None
    delta_max: float | None = None
    gamma: int = 3

    def __post_init__(self):
        if self.procedure not in PROCEDURES:
            raise ValueError(f"procedure must be one of {PROCEDURES}; got {self.procedure!r}")
        if self.objective not in OBJECTIVES:
            raise ValueError(f"objective must be one of {OBJECTIVES}; got {self.objective!r}")
        if self.steps < 0:
            raise ValueError("steps must be non-negative")
        if self.seed < 0:
            raise ValueError("seed must be non-negative")
        if self.procedure == "m1":
            if self.delta_max is None or self.delta_max < 0:
                raise ValueError("m1 needs delta_max >= 0")
        if self.procedure == "m3" and self.gamma < 1:
            raise ValueError("m3 needs gamma >= 1")
        if self.candidates_per_step is None:
            default = _DEFAULT_CANDIDATES.get(self.procedure)
            object.__setattr__(self, "candidates_per_step", default)
        elif self.candidates_per_step < 1:
            raise ValueError("candidates_per_step must be positive")


@dataclass(frozen=True)
class TrajectoryPoint:
    """Metrics after one step. ``change`` identifies what was applied:
    ``mistake:<position>``, ``perm:<candidate>``, ``noise:<candidate>``
    (candidate 0 is the unmodified incumbent), or ``None`` at step 0."""

    step: int
    auroc: float
    auprc: float
    group_auroc: Mapping[int, float | None]
    group_auprc: Mapping[int, float | None]
    change: str | None


@dataclass(frozen=True)
class TrajectoryRecord:
    """Per-step metric trajectory of one optimization run.

    ``points[0]`` always describes the unmodified dataset. For m2,
    ``converged_at`` is the step count at which no mistakes remained (the
    trajectory then ends early)."""

    config: OptimizerConfig
    points: tuple[TrajectoryPoint, ...]
    final: ScoreSet
    converged_at: int | None = None

    @property
    def steps_recorded(self) -> int:
        return len(self.points) - 1


def _objective_fn(objective: str):
    return auroc if objective == "auroc" else auprc


def step_m1(
    s: ScoreSet, cfg: OptimizerConfig, rng: np.random.Generator
) -> tuple[ScoreSet, str]:
    """One noise step: best of the incumbent plus ``candidates_per_step``
    uniformly perturbed candidates, clamped into (0, 1)."""
    metric = _objective_fn(cfg.objective)
    best, best_value, best_id = s, metric(s), 0
    for k in range(1, cfg.candidates_per_step + 1):
        noise = rng.uniform(-cfg.delta_max, cfg.delta_max, s.n)
        candidate = s.with_scores(np.clip(s.scores + noise, _CLAMP_LO, _CLAMP_HI))
        value = metric(candidate)
        if value > best_value:
            best, best_value, best_id = candidate, value, k
    return best, f"noise:{best_id}"


def step_m2(
    s: ScoreSet, cfg: OptimizerConfig, rng: np.random.Generator
) -> tuple[ScoreSet, MistakeRecord | None]:
    """One mistake-fixing step. Returns ``(s, None)`` when no mistakes
    remain (converged)."""
    records = enumerate_mistakes(s)
    if not records:
        return s, None
    chosen = select_mistake(records, cfg.objective, rng)
    return fix_mistake(s, chosen), chosen


def _bounded_permutation(n: int, gamma: int, rng: np.random.Generator) -> np.ndarray:
    """Random permutation with max displacement ``gamma``: random-key sort
    with rejection of out-of-bound draws."""
    base = np.arange(n)
    for _ in range(_MAX_PERMUTATION_TRIES):
        keys = base + rng.uniform(-gamma, gamma, n)
        perm = np.argsort(keys)
        if np.abs(perm - base).max() <= gamma:
            return perm
    raise RuntimeError(
        f"no displacement-{gamma} permutation found in {_MAX_PERMUTATION_TRIES} tries"
    )


def step_m3(
    s: ScoreSet, cfg: OptimizerConfig, rng: np.random.Generator
) -> tuple[ScoreSet, str]:
    """One bounded-permutation step.

    Scores are sorted ascending; each candidate re-indexes the sorted score
    vector by a permutation that moves no score more than ``gamma``
    positions. Samples keep their labels and groups and exchange scores
    only. The incumbent (identity permutation) always competes.
    """
    metric = _objective_fn(cfg.objective)
    order = np.argsort(s.scores)
    sorted_scores = s.scores[order]
    best, best_value, best_id = s, metric(s), 0
    for k in range(1, cfg.candidates_per_step + 1):
        perm = _bounded_permutation(s.n, cfg.gamma, rng)
        new_scores = np.empty_like(s.scores)
        new_scores[order] = sorted_scores[perm]
        candidate = s.with_scores(new_scores)
        value = metric(candidate)
        if value > best_value:
            best, best_value, best_id = candidate, value, k
    return best, f"perm:{best_id}"


def _point(s: ScoreSet, step: int, change: str | None) -> TrajectoryPoint:
    if s.groups is not None:
        by_group = per_group_metrics(s)
        group_auroc = {g: m.auroc for g, m in by_group.items()}
        group_auprc = {g: m.auprc for g, m in by_group.items()}
    else:
        group_auroc = {}
        group_auprc = {}
    return TrajectoryPoint(
        step=step,
        auroc=auroc(s),
        auprc=auprc(s),
        group_auroc=group_auroc,
        group_auprc=group_auprc,
        change=change,
    )


def run(
    s: ScoreSet, cfg: OptimizerConfig, rng: np.random.Generator | None = None
) -> TrajectoryRecord:
    """Apply the configured step operation ``cfg.steps`` times (m2: or until
    convergence), recording overall and per-group metrics after every step."""
    if rng is None:
        rng = np.random.default_rng(cfg.seed)
    points = [_point(s, 0, None)]
    converged_at = None
    current = s
    for step in range(1, cfg.steps + 1):
        if cfg.procedure == "m1":
            current, change = step_m1(current, cfg, rng)
        elif cfg.procedure == "m3":
            current, change = step_m3(current, cfg, rng)
        else:
            current, chosen = step_m2(current, cfg, rng)
            if chosen is None:
                converged_at = step - 1
                break
            change = f"mistake:{chosen.low_index}"
        points.append(_point(current, step, change))
    return TrajectoryRecord(
        config=cfg, points=tuple(points), final=current, converged_at=converged_at
    )
