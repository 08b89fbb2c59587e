import sys
from pathlib import Path

import numpy as np
import pytest

from auclab import ScoreSet

sys.path.insert(0, str(Path(__file__).parent))


def random_strict_scoreset(
    rng: np.random.Generator,
    n: int | None = None,
    prevalence: float | None = None,
    with_groups: bool = False,
) -> ScoreSet:
    """Random tie-free ScoreSet with both classes present."""
    if n is None:
        n = int(rng.integers(2, 201))
    if prevalence is None:
        prevalence = float(rng.uniform(0.01, 0.5))
    n_pos = min(max(1, int(round(n * prevalence))), n - 1)
    while True:
        scores = rng.uniform(1e-6, 1.0 - 1e-6, n)
        if len(np.unique(scores)) == n:
            break
    labels = np.zeros(n, dtype=np.int64)
    labels[rng.permutation(n)[:n_pos]] = 1
    groups = rng.integers(0, 2, n) if with_groups else None
    return ScoreSet(scores, labels, groups)


@pytest.fixture
def rng():
    return np.random.default_rng(20240901)
