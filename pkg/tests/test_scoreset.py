import numpy as np
import pytest

from auclab import ScoreSet, TiedScoresError


def test_basic_properties():
    s = ScoreSet([0.1, 0.4, 0.35, 0.8], [0, 0, 1, 1])
    assert s.n == 4
    assert s.n_pos == 2
    assert s.n_neg == 2
    assert s.prevalence == 0.5
    assert s.is_strict
    assert s.groups is None


def test_rejects_out_of_interval_scores():
    with pytest.raises(ValueError, match="strictly inside"):
        ScoreSet([0.0, 0.5], [0, 1])
    with pytest.raises(ValueError, match="strictly inside"):
        ScoreSet([0.5, 1.0], [0, 1])
    with pytest.raises(ValueError, match="strictly inside"):
        ScoreSet([0.5, 1.5], [0, 1])


def test_rejects_bad_labels_and_lengths():
    with pytest.raises(ValueError, match="labels"):
        ScoreSet([0.1, 0.2], [0, 2])
    with pytest.raises(ValueError, match="length mismatch"):
        ScoreSet([0.1, 0.2], [0])
    with pytest.raises(ValueError, match="at least one sample"):
        ScoreSet([], [])


def test_group_validation():
    s = ScoreSet([0.1, 0.2], [0, 1], [3, 7])
    assert s.group_ids() == (3, 7)
    with pytest.raises(ValueError, match="non-negative"):
        ScoreSet([0.1, 0.2], [0, 1], [-1, 0])
    with pytest.raises(ValueError, match="match the sample count"):
        ScoreSet([0.1, 0.2], [0, 1], [0])


def test_tie_detection_and_require_strict():
    s = ScoreSet([0.3, 0.5, 0.3], [0, 1, 1])
    assert not s.is_strict
    with pytest.raises(TiedScoresError) as err:
        s.require_strict()
    assert err.value.tied_indices == ((0, 2),)


def test_immutability():
    s = ScoreSet([0.1, 0.2], [0, 1])
    with pytest.raises(ValueError):
        s.scores[0] = 0.9
    original = np.array([0.1, 0.2])
    t = ScoreSet(original, [0, 1])
    original[0] = 0.7  # caller mutation must not leak in
    assert t.scores[0] == 0.1


def test_with_scores_and_restrict():
    s = ScoreSet([0.1, 0.2, 0.3], [0, 1, 1], [0, 0, 1])
    t = s.with_scores([0.2, 0.1, 0.3])
    assert list(t.labels) == [0, 1, 1]
    assert list(t.scores) == [0.2, 0.1, 0.3]
    sub = s.restrict(0)
    assert sub.n == 2
    assert list(sub.scores) == [0.1, 0.2]
    with pytest.raises(ValueError, match="no samples"):
        s.restrict(9)
