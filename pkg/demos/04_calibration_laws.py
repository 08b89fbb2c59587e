"""Two structural facts about perfectly calibrated scores.

When labels are Bernoulli(score): (1) the positive/negative score-density
ratio at score t equals t/(1-t) times the class-odds ratio, and (2) the
firing rate at any threshold tau is bounded by prevalence/tau. The second
fact is what starves a low-prevalence group of high scores and hands the
top of a shared ranking to the higher-prevalence group.
"""

import numpy as np

from auclab import beta_scores, sample_calibrated, threshold_stats, uniform_scores

rng = np.random.default_rng(42)

print("density-ratio law, uniform scores, n=200k:")
s = sample_calibrated(200_000, uniform_scores(), rng)
edges = np.linspace(0, 1, 11)
pos = s.scores[s.labels == 1]
neg = s.scores[s.labels == 0]
pos_hist, _ = np.histogram(pos, edges)
neg_hist, _ = np.histogram(neg, edges)
print("  bin center   observed ratio   t/(1-t) * odds")
for k in range(10):
    t = 0.5 * (edges[k] + edges[k + 1])
    ratio = (pos_hist[k] / s.n_pos) / (neg_hist[k] / s.n_neg)
    expected = t / (1 - t) * (s.n_neg / s.n_pos)
    print(f"  {t:10.2f}   {ratio:14.3f}   {expected:14.3f}")

print("\nfiring-rate bound FR(tau) <= prevalence/tau:")
for dist in (uniform_scores(), beta_scores(2, 5), beta_scores(0.5, 0.5)):
    s = sample_calibrated(10_000, dist, rng)
    rows = []
    for tau in (0.1, 0.3, 0.5, 0.7, 0.9):
        fr = threshold_stats(s, tau).firing_rate
        rows.append(f"tau={tau}: {fr:.3f} <= {s.prevalence / tau:.3f}")
    print(f"  {dist.name} (prevalence {s.prevalence:.3f}):")
    for row in rows:
        print(f"    {row}")
