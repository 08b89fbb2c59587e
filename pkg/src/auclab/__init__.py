"""auclab: exact AUROC/AUPRC metrics, ranking-mistake analysis, target-AUROC
score synthesis, metric-greedy optimization, and subgroup gap statistics."""

from .analysis import (
    Band,
    GroupMetrics,
    RunRecord,
    SpearmanResult,
    SplitCorrelation,
    SweepSummary,
    meta_correlation,
    per_group_metrics,
    percentile_band,
    signed_gap,
    spearman,
    sweep_correlations,
)
from .errors import (
    ConfigError,
    DataError,
    MetricUndefinedError,
    StaleMistakeError,
    TiedScoresError,
)
from .metrics import (
    AuprcForms,
    Curve,
    CurvePoint,
    ThresholdStats,
    auprc,
    auprc_reparam,
    auroc,
    auroc_reparam,
    pr_curve,
    roc_curve,
    threshold_stats,
)
from .mistakes import (
    MistakeRecord,
    best_mistake,
    enumerate_mistakes,
    fix_mistake,
    mistake_deltas,
    select_mistake,
)
from .optimizer import (
    OptimizerConfig,
    TrajectoryPoint,
    TrajectoryRecord,
    run,
    step_m1,
    step_m2,
    step_m3,
)
from .scoreset import ScoreSet
from .synthgen import (
    GroupConfig,
    GroupSpec,
    ScoreDistribution,
    SynthConfig,
    beta_scores,
    build_two_group_dataset,
    constant_scores,
    rescale_mean_to_prevalence,
    sample_calibrated,
    sample_target_auroc,
    scale_mean_to_prevalence,
    uniform_scores,
)

__version__ = "0.1.0"

__all__ = [
    "AuprcForms",
    "Band",
    "ConfigError",
    "Curve",
    "CurvePoint",
    "DataError",
    "GroupConfig",
    "GroupMetrics",
    "GroupSpec",
    "MetricUndefinedError",
    "MistakeRecord",
    "OptimizerConfig",
    "RunRecord",
    "ScoreDistribution",
    "ScoreSet",
    "SpearmanResult",
    "SplitCorrelation",
    "StaleMistakeError",
    "SweepSummary",
    "SynthConfig",
    "ThresholdStats",
    "TiedScoresError",
    "TrajectoryPoint",
    "TrajectoryRecord",
    "auprc",
    "auprc_reparam",
    "auroc",
    "auroc_reparam",
    "best_mistake",
    "beta_scores",
    "build_two_group_dataset",
    "constant_scores",
    "enumerate_mistakes",
    "fix_mistake",
    "meta_correlation",
    "mistake_deltas",
    "per_group_metrics",
    "percentile_band",
    "pr_curve",
    "rescale_mean_to_prevalence",
    "roc_curve",
    "run",
    "sample_calibrated",
    "sample_target_auroc",
    "scale_mean_to_prevalence",
    "select_mistake",
    "signed_gap",
    "spearman",
    "step_m1",
    "step_m2",
    "step_m3",
    "sweep_correlations",
    "threshold_stats",
    "uniform_scores",
]
