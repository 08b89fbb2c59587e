"""Exact empirical ranking metrics for binary classification.

AUROC is computed as the Mann-Whitney probability that a uniformly random
positive outranks a uniformly random negative (ties credited 0.5). AUPRC is
average precision: the mean, over positive samples, of the precision at each
positive sample's score under the inclusive decision rule ``score >= t``.
These estimator choices make the alternative forms below
(:func:`auroc_reparam`, :func:`auprc_reparam`) exact identities on finite
samples rather than approximations:

* ``auroc == 1 - mean over positives of FPR(t)`` with the strict rule
  ``score > t`` evaluated at each positive score ``t``;
* ``auprc == 1 - P(y=0) * mean over positives of FPR(t) / FiringRate(t)``
  with the inclusive rule ``score >= t``.

All functions are pure and treat their inputs as immutable.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.stats import rankdata

from .errors import MetricUndefinedError
from .scoreset import ScoreSet

#: agreement tolerance between a metric and its reparametrized form
IDENTITY_ATOL = 1e-12


@dataclass(frozen=True)
class ThresholdStats:
    """Confusion counts and rates at one decision threshold.

    Rates that would divide by zero are ``None``: ``tpr`` needs a positive
    sample, ``fpr`` a negative one, ``precision`` a nonzero firing count.
    """

    threshold: float
    inclusive: bool
    tp: int
    fp: int
    tn: int
    fn: int
    tpr: float | None
    fpr: float | None
    precision: float | None
    firing_rate: float


@dataclass(frozen=True)
class CurvePoint:
    threshold: float
    tpr: float
    fpr: float
    precision: float | None


@dataclass(frozen=True)
class Curve:
    """Threshold sweep: one point per distinct score plus two boundary
    points ("fire on everything" first, "fire on nothing" last), ordered by
    increasing threshold. ``tpr`` and ``fpr`` are non-increasing along the
    sweep."""

    points: tuple[CurvePoint, ...]

    def __iter__(self):
        return iter(self.points)

    def __len__(self):
        return len(self.points)


def threshold_stats(s: ScoreSet, tau: float, inclusive: bool = False) -> ThresholdStats:
    """Confusion counts at threshold ``tau``.

    The decision rule is ``score > tau`` when ``inclusive`` is False and
    ``score >= tau`` when True. Both conventions are exposed because the
    AUROC identity needs the strict rule at positive-sample thresholds while
    the precision/firing-rate identity needs the inclusive one.
    """
    fired = s.scores >= tau if inclusive else s.scores > tau
    pos = s.labels == 1
    tp = int(np.count_nonzero(fired & pos))
    fp = int(np.count_nonzero(fired & ~pos))
    fn = s.n_pos - tp
    tn = s.n_neg - fp
    tpr = tp / s.n_pos if s.n_pos > 0 else None
    fpr = fp / s.n_neg if s.n_neg > 0 else None
    precision = tp / (tp + fp) if tp + fp > 0 else None
    return ThresholdStats(
        threshold=float(tau),
        inclusive=inclusive,
        tp=tp,
        fp=fp,
        tn=tn,
        fn=fn,
        tpr=tpr,
        fpr=fpr,
        precision=precision,
        firing_rate=(tp + fp) / s.n,
    )


def _require_both_classes(s: ScoreSet) -> None:
    if s.n_pos == 0 or s.n_neg == 0:
        raise MetricUndefinedError(
            f"AUROC needs both classes; got {s.n_pos} positives and {s.n_neg} negatives"
        )


def auroc(s: ScoreSet) -> float:
    """Probability a random positive outranks a random negative.

    Computed from the rank sum of positives (average ranks on ties, i.e.
    tied pairs count 0.5). Exact integer/rank arithmetic, no curve
    integration.
    """
    _require_both_classes(s)
    ranks = rankdata(s.scores)
    rank_sum = float(ranks[s.labels == 1].sum())
    u = rank_sum - s.n_pos * (s.n_pos + 1) / 2.0
    return u / (s.n_pos * s.n_neg)


def auprc(s: ScoreSet) -> float:
    """Average precision: mean over positives of inclusive precision at
    each positive sample's score.

    On tie-free data this equals rank-by-rank average precision on the
    descending sort. Trapezoidal PR interpolation is deliberately not used;
    it would break the exact identities checked by :func:`auprc_reparam`.
    """
    if s.n_pos == 0:
        raise MetricUndefinedError("AUPRC needs at least one positive sample")
    pos_scores = s.scores[s.labels == 1]
    all_sorted = np.sort(s.scores)
    pos_sorted = np.sort(pos_scores)
    n_ge = s.n - np.searchsorted(all_sorted, pos_scores, side="left")
    npos_ge = s.n_pos - np.searchsorted(pos_sorted, pos_scores, side="left")
    return float(np.mean(npos_ge / n_ge))


def auroc_reparam(s: ScoreSet) -> float:
    """AUROC via its false-positive-rate form: one minus the mean, over
    positive samples, of the strict-rule FPR at each positive score.

    Requires pairwise-distinct scores; agrees with :func:`auroc` to
    ``IDENTITY_ATOL`` there.
    """
    s.require_strict()
    _require_both_classes(s)
    neg_sorted = np.sort(s.scores[s.labels == 0])
    pos_scores = s.scores[s.labels == 1]
    n_neg_above = s.n_neg - np.searchsorted(neg_sorted, pos_scores, side="right")
    return 1.0 - float(np.mean(n_neg_above / s.n_neg))


@dataclass(frozen=True)
class AuprcForms:
    """The two equivalent average-precision forms.

    ``mean_precision``: mean inclusive precision at positive scores.
    ``firing_rate_form``: one minus the negative-class rate times the mean
    of inclusive FPR divided by inclusive firing rate at positive scores.
    """

    mean_precision: float
    firing_rate_form: float


def auprc_reparam(s: ScoreSet) -> AuprcForms:
    """Both reparametrized average-precision forms.

    Requires pairwise-distinct scores. Raises ``ArithmeticError`` if either
    form disagrees with :func:`auprc` beyond ``IDENTITY_ATOL``; on valid
    inputs that cannot happen.
    """
    s.require_strict()
    if s.n_pos == 0:
        raise MetricUndefinedError("AUPRC needs at least one positive sample")
    pos_scores = s.scores[s.labels == 1]
    neg_sorted = np.sort(s.scores[s.labels == 0])
    all_sorted = np.sort(s.scores)
    pos_sorted = np.sort(pos_scores)

    n_ge = s.n - np.searchsorted(all_sorted, pos_scores, side="left")
    npos_ge = s.n_pos - np.searchsorted(pos_sorted, pos_scores, side="left")
    mean_precision = float(np.mean(npos_ge / n_ge))

    if s.n_neg > 0:
        nneg_ge = s.n_neg - np.searchsorted(neg_sorted, pos_scores, side="left")
        fpr_incl = nneg_ge / s.n_neg
        fr_incl = n_ge / s.n
        firing_rate_form = 1.0 - (s.n_neg / s.n) * float(np.mean(fpr_incl / fr_incl))
    else:
        firing_rate_form = 1.0

    reference = auprc(s)
    if (
        abs(mean_precision - reference) > IDENTITY_ATOL
        or abs(firing_rate_form - reference) > IDENTITY_ATOL
    ):
        raise ArithmeticError(
            "average-precision forms disagree beyond tolerance: "
            f"{mean_precision!r}, {firing_rate_form!r}, {reference!r}"
        )
    return AuprcForms(mean_precision=mean_precision, firing_rate_form=firing_rate_form)


def _sweep(s: ScoreSet, inclusive: bool) -> list[CurvePoint]:
    points = []
    for tau in np.unique(s.scores):
        st = threshold_stats(s, float(tau), inclusive=inclusive)
        points.append(
            CurvePoint(
                threshold=float(tau),
                tpr=st.tpr if st.tpr is not None else 0.0,
                fpr=st.fpr if st.fpr is not None else 0.0,
                precision=st.precision,
            )
        )
    return points


def roc_curve(s: ScoreSet) -> Curve:
    """ROC sweep under the strict rule ``score > threshold``.

    Boundary conventions: threshold 0.0 fires on everything (tpr = fpr = 1),
    threshold 1.0 fires on nothing.
    """
    _require_both_classes(s)
    first = CurvePoint(0.0, 1.0, 1.0, s.prevalence)
    last = CurvePoint(1.0, 0.0, 0.0, None)
    return Curve(tuple([first] + _sweep(s, inclusive=False) + [last]))


def pr_curve(s: ScoreSet) -> Curve:
    """Precision-recall sweep under the inclusive rule ``score >= threshold``.

    ``tpr`` is recall. Precision is ``None`` at the fire-on-nothing
    boundary.
    """
    if s.n_pos == 0:
        raise MetricUndefinedError("PR curve needs at least one positive sample")
    first = CurvePoint(0.0, 1.0, 1.0 if s.n_neg > 0 else 0.0, s.prevalence)
    last = CurvePoint(1.0, 0.0, 0.0, None)
    return Curve(tuple([first] + _sweep(s, inclusive=True) + [last]))
