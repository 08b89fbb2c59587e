"""Misranked adjacent pairs: what fixing each one is worth.

Every correction of a positive scored directly below a negative raises
AUROC by exactly 1/(n_pos * n_neg), no matter where the pair sits. The
average-precision gain instead follows P / (n_pos * A * (A-1)), where A
counts samples at or above the pair and P the positives among them:
corrections near the top usually pay more, but a lower pair with many
positives above it can out-pay a higher one.
"""

import numpy as np

from auclab import ScoreSet, auprc, auroc, best_mistake, enumerate_mistakes, fix_mistake

s = ScoreSet(np.linspace(0.1, 0.4, 4), [1, 0, 1, 0])
print("alternating labels 1,0,1,0 (ascending):")
print(f"  start: auroc={auroc(s)}  auprc={auprc(s)}")
for m in enumerate_mistakes(s):
    print(
        f"  pair at position {m.low_index}: dAUROC={m.delta_auroc:+.4f} "
        f"dAUPRC={m.delta_auprc:+.4f}"
    )

print("\ngreedy correction under the AUPRC objective:")
rng = np.random.default_rng(0)
state = s
while True:
    records = enumerate_mistakes(state)
    if not records:
        break
    chosen = best_mistake(state, "auprc", rng)
    state = fix_mistake(state, chosen)
    print(
        f"  fixed position {chosen.low_index}: auroc -> {auroc(state):.4f}, "
        f"auprc -> {auprc(state):.4f}"
    )
print(f"  converged: auroc={auroc(state)}")

print("\na lower pair can out-pay a higher one:")
labels = [0, 0, 1, 1, 1, 0, 1, 0, 1, 1, 1] + [0] * 9 + [1]
t = ScoreSet(np.linspace(0.05, 0.95, len(labels)), labels)
for m in enumerate_mistakes(t):
    marker = "  <- argmax" if m == best_mistake(t, "auprc", rng) else ""
    print(f"  position {m.low_index:2d}: dAUPRC={m.delta_auprc:.6f}{marker}")
