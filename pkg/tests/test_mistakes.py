import numpy as np
import pytest

from auclab import (
    MetricUndefinedError,
    ScoreSet,
    StaleMistakeError,
    TiedScoresError,
    auprc,
    auroc,
    best_mistake,
    enumerate_mistakes,
    fix_mistake,
    mistake_deltas,
)
from conftest import random_strict_scoreset
from oracles import adjacent_discordant_positions

# ascending labels [1,0,1,0]
ALTERNATING = ScoreSet([0.1, 0.2, 0.3, 0.4], [1, 0, 1, 0])


def ascending_labels(s):
    return list(s.labels[np.argsort(s.scores)])


class TestEnumerate:
    def test_alternating_has_two(self):
        records = enumerate_mistakes(ALTERNATING)
        assert [m.low_index for m in records] == [0, 2]

    def test_perfectly_ranked_is_empty(self):
        s = ScoreSet([0.1, 0.2, 0.3, 0.4], [0, 0, 1, 1])
        assert enumerate_mistakes(s) == []

    def test_single_interior_mistake(self):
        s = ScoreSet([0.1, 0.2, 0.3, 0.4], [0, 1, 0, 1])
        records = enumerate_mistakes(s)
        assert [m.low_index for m in records] == [1]

    def test_rejects_ties(self):
        with pytest.raises(TiedScoresError):
            enumerate_mistakes(ScoreSet([0.2, 0.2, 0.5], [1, 0, 1]))

    def test_matches_brute_force_scan(self, rng):
        for _ in range(200):
            s = random_strict_scoreset(rng, n=int(rng.integers(2, 80)))
            expected = adjacent_discordant_positions(s.scores, s.labels)
            assert [m.low_index for m in enumerate_mistakes(s)] == expected


class TestFix:
    def test_swap_reorders_labels(self):
        records = enumerate_mistakes(ALTERNATING)
        fixed = fix_mistake(ALTERNATING, records[0])
        assert ascending_labels(fixed) == [0, 1, 1, 0]

    def test_fixed_pair_never_reappears(self, rng):
        for _ in range(50):
            s = random_strict_scoreset(rng, n=20)
            records = enumerate_mistakes(s)
            if not records:
                continue
            m = records[int(rng.integers(len(records)))]
            fixed = fix_mistake(s, m)
            # the same two scores, now in corrected order, are not a mistake
            for m2 in enumerate_mistakes(fixed):
                assert not (
                    m2.low_score == m.low_score and m2.high_score == m.high_score
                )

    def test_groups_travel_with_samples(self):
        s = ScoreSet([0.1, 0.2], [1, 0], [5, 9])
        m = enumerate_mistakes(s)[0]
        fixed = fix_mistake(s, m)
        # sample 0 keeps group 5 but now holds the higher score
        assert list(fixed.groups) == [5, 9]
        assert list(fixed.scores) == [0.2, 0.1]

    def test_stale_record_rejected(self):
        records = enumerate_mistakes(ALTERNATING)
        fixed = fix_mistake(ALTERNATING, records[0])
        with pytest.raises(StaleMistakeError):
            fix_mistake(fixed, records[0])


class TestDeltas:
    def test_alternating_first_mistake(self):
        m = enumerate_mistakes(ALTERNATING)[0]
        d_roc, d_prc = mistake_deltas(ALTERNATING, m)
        assert d_roc == pytest.approx(0.25, abs=1e-15)
        assert d_prc == pytest.approx(7 / 12 - 1 / 2, abs=1e-12)

    def test_alternating_second_mistake(self):
        m = enumerate_mistakes(ALTERNATING)[1]
        d_roc, d_prc = mistake_deltas(ALTERNATING, m)
        assert d_roc == pytest.approx(0.25, abs=1e-15)
        assert d_prc == pytest.approx(3 / 4 - 1 / 2, abs=1e-12)

    def test_constant_auroc_delta_and_exact_auprc_delta(self, rng):
        # AUROC delta is the same for every mistake; the AUPRC delta obeys
        # the exact law P / (n_pos * A * (A-1)) with A = samples at or above
        # the pair's positive and P = positives among them.
        for _ in range(200):
            s = random_strict_scoreset(rng, n=int(rng.integers(4, 80)))
            records = enumerate_mistakes(s)
            labels_sorted = s.labels[np.argsort(s.scores)]
            expected_roc = 1.0 / (s.n_pos * s.n_neg)
            for m in records:
                assert abs(m.delta_auroc - expected_roc) < 1e-12
                assert m.delta_auprc > 0
                a_cnt = s.n - m.low_index
                p_cnt = int(labels_sorted[m.low_index :].sum())
                expected_prc = p_cnt / (s.n_pos * a_cnt * (a_cnt - 1))
                assert abs(m.delta_auprc - expected_prc) < 1e-12

    def test_auprc_delta_ordering_can_invert(self):
        # A lower mistake with many positives above it can pay more than a
        # higher mistake: deltas are 5/1680, and 2/880 at the top pair.
        labels = [0, 0, 1, 1, 1, 0, 1, 0, 1, 1, 1] + [0] * 9 + [1]
        scores = np.linspace(0.05, 0.95, len(labels))
        records = enumerate_mistakes(ScoreSet(scores, labels))
        by_index = {m.low_index: m for m in records}
        assert by_index[6].delta_auprc > by_index[10].delta_auprc

    def test_fixing_everything_reaches_perfect_auroc(self, rng):
        for _ in range(10):
            s = random_strict_scoreset(rng, n=int(rng.integers(4, 25)))
            guard = 0
            while True:
                records = enumerate_mistakes(s)
                if not records:
                    break
                before_roc, before_prc = auroc(s), auprc(s)
                s = fix_mistake(s, records[int(rng.integers(len(records)))])
                assert auroc(s) > before_roc
                assert auprc(s) > before_prc
                guard += 1
                assert guard < 10_000
            assert auroc(s) == 1.0


class TestBestMistake:
    def test_auprc_objective_prefers_top(self):
        rng = np.random.default_rng(0)
        m = best_mistake(ALTERNATING, "auprc", rng)
        assert m.low_index == 2

    def test_auprc_objective_maximizes_delta(self, rng):
        for _ in range(100):
            s = random_strict_scoreset(rng, n=30)
            records = enumerate_mistakes(s)
            if not records:
                continue
            chosen = best_mistake(s, "auprc", rng)
            assert chosen.delta_auprc == max(m.delta_auprc for m in records)

    def test_auroc_objective_is_uniform(self):
        rng = np.random.default_rng(7)
        counts = {0: 0, 2: 0}
        for _ in range(10_000):
            counts[best_mistake(ALTERNATING, "auroc", rng).low_index] += 1
        assert abs(counts[0] / 10_000 - 0.5) < 0.05
        assert abs(counts[2] / 10_000 - 0.5) < 0.05

    def test_single_mistake_under_either_objective(self):
        s = ScoreSet([0.1, 0.2, 0.3, 0.4], [0, 1, 0, 1])
        rng = np.random.default_rng(1)
        assert best_mistake(s, "auroc", rng).low_index == 1
        assert best_mistake(s, "auprc", rng).low_index == 1

    def test_empty_set_errors(self):
        s = ScoreSet([0.1, 0.9], [0, 1])
        with pytest.raises(MetricUndefinedError):
            best_mistake(s, "auroc", np.random.default_rng(0))

    def test_unknown_objective(self):
        with pytest.raises(ValueError, match="objective"):
            best_mistake(ALTERNATING, "f1", np.random.default_rng(0))
