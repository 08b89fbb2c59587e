"""Statistical post-processing: per-group metrics, signed gaps, Spearman
correlation, percentile bands, and sweep-level correlation summaries.

The sweep analysis consumes run records (one per trained-model run, with
validation overall metrics and test per-group metrics) and asks, per data
split, whether the signed between-group AUROC gap tracks the overall AUPRC
more closely than it tracks the overall AUROC. Gaps are signed as
higher-prevalence group minus lower-prevalence group, with the
higher-prevalence group identified once per dataset so the sign convention
stays stable across splits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import permutations
from typing import Iterable, Mapping, Sequence

import numpy as np
from scipy.stats import rankdata
from scipy.stats import t as t_dist

from .errors import DataError, MetricUndefinedError
from .metrics import auprc, auroc
from .scoreset import ScoreSet

#: largest n for which the Spearman p-value is computed by exact permutation
_EXACT_PERM_MAX_N = 8


@dataclass(frozen=True)
class GroupMetrics:
    """Metrics of one group's restriction. ``auroc`` is None (flagged, not
    an error) when the group is missing a class; ``auprc`` is None when it
    has no positives."""

    group: int
    n: int
    n_pos: int
    prevalence: float
    auroc: float | None
    auprc: float | None


def per_group_metrics(s: ScoreSet) -> dict[int, GroupMetrics]:
    """AUROC/AUPRC of each group's restriction, computed independently."""
    if s.groups is None:
        raise ValueError("ScoreSet has no group tags")
    out: dict[int, GroupMetrics] = {}
    for g in s.group_ids():
        sub = s.restrict(g)
        try:
            g_auroc = auroc(sub)
        except MetricUndefinedError:
            g_auroc = None
        try:
            g_auprc = auprc(sub)
        except MetricUndefinedError:
            g_auprc = None
        out[g] = GroupMetrics(
            group=g,
            n=sub.n,
            n_pos=sub.n_pos,
            prevalence=sub.prevalence,
            auroc=g_auroc,
            auprc=g_auprc,
        )
    return out


def signed_gap(metrics_by_group: Mapping[int, GroupMetrics], metric: str = "auroc") -> float:
    """Higher-prevalence group's metric minus the lower-prevalence group's.

    Needs exactly two groups with the chosen metric defined and distinct
    prevalences.
    """
    if metric not in ("auroc", "auprc"):
        raise ValueError(f"metric must be 'auroc' or 'auprc'; got {metric!r}")
    if len(metrics_by_group) != 2:
        raise DataError(f"signed gap needs exactly two groups; got {len(metrics_by_group)}")
    (ga, gb) = sorted(metrics_by_group.values(), key=lambda m: m.prevalence)
    if ga.prevalence == gb.prevalence:
        raise DataError("groups have identical prevalence; the gap sign is undefined")
    lo_value = getattr(ga, metric)
    hi_value = getattr(gb, metric)
    if lo_value is None or hi_value is None:
        raise DataError(f"{metric} is undefined for one of the groups")
    return hi_value - lo_value


@dataclass(frozen=True)
class SpearmanResult:
    rho: float
    p_value: float


def _exact_permutation_p(rx: np.ndarray, ry: np.ndarray, observed: float) -> float:
    n = len(rx)
    count = 0
    total = 0
    for perm in permutations(range(n)):
        rho = _pearson(rx, ry[list(perm)])
        if abs(rho) >= abs(observed) - 1e-12:
            count += 1
        total += 1
    return count / total


def _pearson(x: np.ndarray, y: np.ndarray) -> float:
    xc = x - x.mean()
    yc = y - y.mean()
    return float((xc @ yc) / math.sqrt((xc @ xc) * (yc @ yc)))


def spearman(x: Sequence[float], y: Sequence[float]) -> SpearmanResult:
    """Spearman's rho (Pearson correlation of average ranks) with a
    two-sided p-value.

    The p-value is exact by permutation for n <= 8 and uses the
    t-approximation with n - 2 degrees of freedom otherwise. Constant
    inputs have no defined rank correlation and raise.
    """
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.shape != y.shape or x.ndim != 1:
        raise ValueError("x and y must be equal-length one-dimensional vectors")
    n = len(x)
    if n < 3:
        raise DataError(f"spearman needs at least 3 points; got {n}")
    if np.all(x == x[0]):
        raise MetricUndefinedError("x is constant; rank correlation is undefined")
    if np.all(y == y[0]):
        raise MetricUndefinedError("y is constant; rank correlation is undefined")
    rx = rankdata(x)
    ry = rankdata(y)
    rho = _pearson(rx, ry)
    if n <= _EXACT_PERM_MAX_N:
        p = _exact_permutation_p(rx, ry, rho)
    else:
        if abs(rho) >= 1.0:
            p = 0.0
        else:
            stat = rho * math.sqrt((n - 2) / (1.0 - rho * rho))
            p = 2.0 * float(t_dist.sf(abs(stat), n - 2))
    return SpearmanResult(rho=rho, p_value=p)


@dataclass(frozen=True)
class Band:
    """Per-step percentile envelope and mean across seeds."""

    lo: np.ndarray
    mean: np.ndarray
    hi: np.ndarray


def percentile_band(values: np.ndarray, lo: float = 5.0, hi: float = 95.0) -> Band:
    """Empirical per-step percentiles (linear interpolation between order
    statistics) and mean over the seed axis.

    ``values`` has shape (n_seeds, n_steps); at least two seeds required.
    """
    values = np.asarray(values, dtype=np.float64)
    if values.ndim != 2:
        raise ValueError("values must be 2-d: (n_seeds, n_steps)")
    if values.shape[0] < 2:
        raise DataError("percentile band needs at least 2 seeds")
    return Band(
        lo=np.percentile(values, lo, axis=0),
        mean=values.mean(axis=0),
        hi=np.percentile(values, hi, axis=0),
    )


@dataclass(frozen=True)
class RunRecord:
    """One model run in a hyperparameter sweep.

    Validation metrics are overall; test metrics are per group (two
    groups). ``hyperparams`` is an opaque descriptor carried through
    unchanged.
    """

    run_id: str
    split_id: str
    seed: int
    val_auroc: float
    val_auprc: float
    test_group_auroc: Mapping[int, float]
    test_group_auprc: Mapping[int, float]
    group_prevalence: Mapping[int, float]
    group_weight: float = 1.0
    hyperparams: str = ""
    dataset: str = "default"

    def __post_init__(self):
        keys = set(self.test_group_auroc)
        if (
            len(keys) != 2
            or set(self.test_group_auprc) != keys
            or set(self.group_prevalence) != keys
        ):
            raise DataError(
                f"run {self.run_id!r} needs matching per-group metrics for exactly two groups"
            )


@dataclass(frozen=True)
class SplitCorrelation:
    split_id: str
    n_runs: int
    rho_gap_vs_auprc: float
    rho_gap_vs_auroc: float

    @property
    def difference(self) -> float:
        return self.rho_gap_vs_auprc - self.rho_gap_vs_auroc


@dataclass(frozen=True)
class SweepSummary:
    """Per-split Spearman pairs plus the across-split aggregate for one
    dataset."""

    dataset: str
    higher_group: int
    lower_group: int
    prevalence_ratio: float
    splits: tuple[SplitCorrelation, ...]
    mean_difference: float
    ci_low: float
    ci_high: float


def _identify_groups(records: Sequence[RunRecord]) -> tuple[int, int]:
    """(higher-prevalence group, lower-prevalence group), fixed from the
    dataset-level mean of the stated prevalences."""
    keys = sorted(records[0].group_prevalence)
    means = {
        g: float(np.mean([r.group_prevalence[g] for r in records])) for g in keys
    }
    a, b = keys
    if means[a] == means[b]:
        raise DataError("groups have identical prevalence; the gap sign is undefined")
    return (a, b) if means[a] > means[b] else (b, a)


def _mean_ci95(values: np.ndarray) -> tuple[float, float, float]:
    mean = float(values.mean())
    k = len(values)
    if k < 2:
        return mean, mean, mean
    sd = float(values.std(ddof=1))
    half = float(t_dist.ppf(0.975, k - 1)) * sd / math.sqrt(k)
    return mean, mean - half, mean + half


def sweep_correlations(records: Sequence[RunRecord]) -> SweepSummary:
    """Per split: Spearman's rho of (test AUROC gap vs validation overall
    AUPRC) and (test AUROC gap vs validation overall AUROC). Across splits:
    mean of the per-split differences with a 95% t-interval.

    All records must belong to one dataset; each split needs at least 3
    runs.
    """
    records = list(records)
    if not records:
        raise DataError("no run records supplied")
    datasets = sorted({r.dataset for r in records})
    if len(datasets) != 1:
        raise DataError(
            f"sweep_correlations expects a single dataset; got {datasets}"
        )
    higher, lower = _identify_groups(records)
    by_split: dict[str, list[RunRecord]] = {}
    for r in records:
        by_split.setdefault(r.split_id, []).append(r)
    splits = []
    for split_id in sorted(by_split):
        runs = by_split[split_id]
        if len(runs) < 3:
            raise DataError(f"split {split_id!r} has {len(runs)} runs; need at least 3")
        gaps = [r.test_group_auroc[higher] - r.test_group_auroc[lower] for r in runs]
        rho_prc = spearman(gaps, [r.val_auprc for r in runs]).rho
        rho_roc = spearman(gaps, [r.val_auroc for r in runs]).rho
        splits.append(
            SplitCorrelation(
                split_id=split_id,
                n_runs=len(runs),
                rho_gap_vs_auprc=rho_prc,
                rho_gap_vs_auroc=rho_roc,
            )
        )
    diffs = np.array([s.difference for s in splits])
    mean, lo, hi = _mean_ci95(diffs)
    prev_higher = float(np.mean([r.group_prevalence[higher] for r in records]))
    prev_lower = float(np.mean([r.group_prevalence[lower] for r in records]))
    return SweepSummary(
        dataset=records[0].dataset,
        higher_group=higher,
        lower_group=lower,
        prevalence_ratio=prev_higher / prev_lower,
        splits=tuple(splits),
        mean_difference=mean,
        ci_low=lo,
        ci_high=hi,
    )


def meta_correlation(
    points: Iterable[tuple[float, float]]
) -> SpearmanResult:
    """Spearman correlation of (prevalence ratio, Spearman difference)
    pairs across datasets; needs at least 3 datasets."""
    pts = list(points)
    if len(pts) < 3:
        raise DataError(f"meta correlation needs at least 3 datasets; got {len(pts)}")
    x = [p[0] for p in pts]
    y = [p[1] for p in pts]
    return spearman(x, y)
