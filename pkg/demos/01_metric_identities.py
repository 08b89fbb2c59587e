"""Exact AUROC/AUPRC computation and their reparametrized forms.

AUROC equals one minus the average strict false-positive rate taken at each
positive sample's score. Average precision equals one minus the negative
class rate times the average of (inclusive FPR / inclusive firing rate) at
positive scores. Both identities hold to machine precision on tie-free
data; this script shows them on a tiny example and on random data, then
draws the ROC and PR sweeps.
"""

import numpy as np

from auclab import (
    ScoreSet,
    auprc,
    auprc_reparam,
    auroc,
    auroc_reparam,
    pr_curve,
    roc_curve,
    threshold_stats,
)

s = ScoreSet([0.1, 0.4, 0.35, 0.8], [0, 0, 1, 1])
print("four-sample example:")
print(f"  auroc          = {auroc(s)}")
print(f"  auprc          = {auprc(s)}  (= 5/6)")
print(f"  auroc via FPR  = {auroc_reparam(s)}")
forms = auprc_reparam(s)
print(f"  auprc forms    = {forms.mean_precision}, {forms.firing_rate_form}")

print("\nthreshold anatomy at tau = 0.35:")
for inclusive in (False, True):
    st = threshold_stats(s, 0.35, inclusive=inclusive)
    rule = ">=" if inclusive else ">"
    print(
        f"  score {rule} tau: tp={st.tp} fp={st.fp} tpr={st.tpr} fpr={st.fpr} "
        f"precision={st.precision}"
    )

print("\nidentity residuals on 2000 random tie-free sets:")
rng = np.random.default_rng(1)
worst = 0.0
for _ in range(2000):
    n = int(rng.integers(2, 150))
    scores = rng.uniform(1e-6, 1 - 1e-6, n)
    if len(np.unique(scores)) < n:
        continue
    labels = np.zeros(n, dtype=int)
    labels[rng.permutation(n)[: max(1, n // 5)]] = 1
    if labels.sum() == n:
        continue
    t = ScoreSet(scores, labels)
    worst = max(
        worst,
        abs(auroc(t) - auroc_reparam(t)),
        abs(auprc(t) - auprc_reparam(t).firing_rate_form),
    )
print(f"  worst residual: {worst:.3e}")

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    print("\nmatplotlib not installed; skipping the figure")
else:
    rng = np.random.default_rng(7)
    scores = rng.uniform(0.01, 0.99, 300)
    labels = (rng.random(300) < scores**2).astype(int)
    big = ScoreSet(scores, labels)
    roc = roc_curve(big)
    pr = pr_curve(big)
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9, 4))
    ax1.plot([p.fpr for p in roc], [p.tpr for p in roc])
    ax1.plot([0, 1], [0, 1], ls=":", c="gray")
    ax1.set(xlabel="FPR", ylabel="TPR", title=f"ROC, area {auroc(big):.3f}")
    interior = [p for p in pr if p.precision is not None]
    ax2.plot([p.tpr for p in interior], [p.precision for p in interior])
    ax2.set(xlabel="recall", ylabel="precision", title=f"PR, AP {auprc(big):.3f}")
    fig.tight_layout()
    out = "demos/output/01_curves.png"
    import pathlib

    pathlib.Path("demos/output").mkdir(parents=True, exist_ok=True)
    fig.savefig(out, dpi=120)
    print(f"\nwrote {out}")
