"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see every line. Two
clauses fail by mathematical necessity and are left failing deliberately
rather than weakened:

* criterion 2's "AUPRC delta strictly increasing with position" clause is
  false for exact average precision: the exact delta is
  P / (n_pos * A * (A-1)) with A the number of samples at or above the
  corrected pair and P the positives among them, and that quantity is not
  monotone in position (about 60% of random sets contain an inversion);
* criterion 6a's "mean final gap >= 0.03" exceeds a hard ceiling: each
  within-group correction moves that group's AUROC by exactly
  1/(n_pos * n_neg) = 1/1900, so 50 steps bound the mean gap by ~0.0263
  even if every correction lands in the high-prevalence group and the
  low-prevalence group never gains.

See README "Acceptance status" for the discussion.
"""

import time
from pathlib import Path

import numpy as np
import pytest

from auclab import (
    GroupConfig,
    GroupSpec,
    OptimizerConfig,
    SynthConfig,
    auprc,
    auprc_reparam,
    auroc,
    auroc_reparam,
    beta_scores,
    build_two_group_dataset,
    enumerate_mistakes,
    meta_correlation,
    run,
    sample_calibrated,
    sample_target_auroc,
    spearman,
    sweep_correlations,
    threshold_stats,
    uniform_scores,
)
from auclab.cli import main as cli_main
from conftest import random_strict_scoreset
from oracles import pairwise_auroc, rank_by_rank_ap, spearman_rho_no_ties
from test_analysis import make_records

M2_GROUPS = GroupSpec(
    (GroupConfig(1, 200, 0.05, 0.85), GroupConfig(2, 200, 0.01, 0.85))
)
M3_GROUPS = GroupSpec(
    (GroupConfig(1, 100, 0.05, 0.85), GroupConfig(2, 100, 0.01, 0.85))
)
SEEDS = range(20)

_elapsed_fig2: dict[str, float] = {}


def _report(name: str, ok: bool, detail: str) -> None:
    print(f"\n[ACCEPTANCE] {name}: {'PASS' if ok else 'FAIL'} - {detail}")
    assert ok, f"{name}: {detail}"


def test_criterion_1_reparametrization_identities():
    rng = np.random.default_rng(101)
    t0 = time.perf_counter()
    worst = 0.0
    for _ in range(1000):
        s = random_strict_scoreset(rng)
        worst = max(
            worst,
            abs(auroc(s) - auroc_reparam(s)),
            abs(auprc(s) - auprc_reparam(s).mean_precision),
            abs(auprc(s) - auprc_reparam(s).firing_rate_form),
        )
    elapsed = time.perf_counter() - t0
    ok = worst < 1e-12 and elapsed < 10.0
    _report(
        "criterion 1 (identity suite)",
        ok,
        f"worst residual {worst:.2e} over 1000 sets, {elapsed:.1f}s",
    )


def test_criterion_2_mistake_deltas():
    rng = np.random.default_rng(202)
    t0 = time.perf_counter()
    roc_violations = 0
    monotone_violations = 0
    comparable = 0
    example = ""
    for _ in range(1000):
        s = random_strict_scoreset(rng)
        records = enumerate_mistakes(s)
        expected = 1.0 / (s.n_pos * s.n_neg)
        for m in records:
            if abs(m.delta_auroc - expected) >= 1e-12:
                roc_violations += 1
        if len(records) >= 2:
            comparable += 1
            if any(a.delta_auprc >= b.delta_auprc for a, b in zip(records, records[1:])):
                monotone_violations += 1
                if not example:
                    pair = next(
                        (a, b)
                        for a, b in zip(records, records[1:])
                        if a.delta_auprc >= b.delta_auprc
                    )
                    example = (
                        f" e.g. position {pair[0].low_index} pays {pair[0].delta_auprc:.3e}"
                        f" >= position {pair[1].low_index} at {pair[1].delta_auprc:.3e}"
                    )
    elapsed = time.perf_counter() - t0
    ok = roc_violations == 0 and monotone_violations == 0 and elapsed < 30.0
    _report(
        "criterion 2 (mistake-delta suite)",
        ok,
        f"constant-AUROC-delta violations {roc_violations}; strict-AUPRC-ordering "
        f"violations {monotone_violations}/{comparable} comparable sets{example}; "
        f"{elapsed:.1f}s (the ordering clause is counterfactual for exact average "
        "precision: the exact delta P/(n_pos*A*(A-1)) is not monotone in position)",
    )


def test_criterion_3_oracle_equivalence():
    rng = np.random.default_rng(303)
    exact_roc = True
    worst_ap = 0.0
    for _ in range(500):
        n = int(rng.integers(2, 51))
        s = random_strict_scoreset(rng, n=n)
        frac_roc = pairwise_auroc(list(s.scores), list(s.labels))
        if auroc(s) != float(frac_roc):
            exact_roc = False
        frac_ap = rank_by_rank_ap(list(s.scores), list(s.labels))
        worst_ap = max(worst_ap, abs(auprc(s) - float(frac_ap)))
    ok = exact_roc and worst_ap < 1e-12
    _report(
        "criterion 3 (oracle equivalence)",
        ok,
        f"pairwise AUROC exact: {exact_roc}; worst AP deviation {worst_ap:.2e} "
        "over 500 sets",
    )


def test_criterion_4_sampler_calibration():
    t0 = time.perf_counter()
    details = []
    ok = True
    for target in (0.6, 0.75, 0.85, 0.95):
        values = []
        for seed in range(200):
            cfg = SynthConfig(
                n_total=200, prevalence=0.05, target_auroc=target, seed=seed
            )
            values.append(auroc(sample_target_auroc(cfg)))
        mean = float(np.mean(values))
        details.append(f"A={target}: mean {mean:.4f}")
        ok = ok and abs(mean - target) <= 0.02
    elapsed = time.perf_counter() - t0
    ok = ok and elapsed < 60.0
    _report(
        "criterion 4 (sampler calibration)",
        ok,
        "; ".join(details) + f"; {elapsed:.1f}s",
    )


def test_criterion_5_firing_rate_bound():
    rng = np.random.default_rng(505)
    ok = True
    worst = -1.0
    for dist in (uniform_scores(), beta_scores(2, 5), beta_scores(0.5, 0.5)):
        s = sample_calibrated(10_000, dist, rng)
        for tau in np.arange(0.1, 0.91, 0.1):
            margin = threshold_stats(s, float(tau)).firing_rate - (
                s.prevalence / tau + 0.02
            )
            worst = max(worst, margin)
            ok = ok and margin <= 0
    _report(
        "criterion 5 (firing-rate bound)",
        ok,
        f"worst bound margin {worst:+.4f} over 3 distributions x 9 thresholds",
    )


def _fig2_m2_experiment(objective: str):
    gaps0, gaps = [], []
    for seed in SEEDS:
        rng = np.random.default_rng(seed)
        ds = build_two_group_dataset(M2_GROUPS, rng, squeeze="linear")
        cfg = OptimizerConfig(procedure="m2", objective=objective, steps=50, seed=seed)
        rec = run(ds, cfg, rng)
        gaps0.append(rec.points[0].group_auroc[1] - rec.points[0].group_auroc[2])
        gaps.append(rec.points[-1].group_auroc[1] - rec.points[-1].group_auroc[2])
    return np.array(gaps0), np.array(gaps)


@pytest.fixture(scope="module")
def fig2_m2_auprc():
    t0 = time.perf_counter()
    out = _fig2_m2_experiment("auprc")
    _elapsed_fig2["m2_auprc"] = time.perf_counter() - t0
    return out


@pytest.fixture(scope="module")
def fig2_m2_auroc():
    t0 = time.perf_counter()
    out = _fig2_m2_experiment("auroc")
    _elapsed_fig2["m2_auroc"] = time.perf_counter() - t0
    return out


def test_criterion_6a_fix_mistakes_auprc_gap(fig2_m2_auprc):
    _, gaps = fig2_m2_auprc
    pos_frac = float((gaps > 0).mean())
    mean_gap = float(gaps.mean())
    ok = pos_frac >= 0.90 and mean_gap >= 0.03
    _report(
        "criterion 6a (mistake fixing, AUPRC objective)",
        ok,
        f"final gap positive in {pos_frac:.0%} of seeds (bar 90%), mean final gap "
        f"{mean_gap:+.4f} (bar +0.03 exceeds the hard ceiling 50/1900 = 0.0263: "
        "each within-group fix pays exactly 1/1900 and the low group never loses)",
    )


def test_criterion_6b_fix_mistakes_auroc_gap(fig2_m2_auroc):
    _, gaps = fig2_m2_auroc
    mean_abs = float(np.abs(gaps).mean())
    ok = mean_abs <= 0.02
    _report(
        "criterion 6b (mistake fixing, AUROC objective)",
        ok,
        f"mean |final gap| {mean_abs:.4f} (bar 0.02)",
    )


def test_criterion_6c_permutation_auprc(fig2_m2_auprc, fig2_m2_auroc):
    t0 = time.perf_counter()
    finals, dipped = [], 0
    for seed in SEEDS:
        rng = np.random.default_rng(seed)
        ds = build_two_group_dataset(M3_GROUPS, rng, squeeze="linear")
        cfg = OptimizerConfig(procedure="m3", objective="auprc", steps=25, seed=seed)
        rec = run(ds, cfg, rng)
        low0 = rec.points[0].group_auroc[2]
        finals.append(rec.points[-1].group_auroc[1] - rec.points[-1].group_auroc[2])
        if any(p.group_auroc[2] < low0 - 1e-15 for p in rec.points[1:]):
            dipped += 1
    elapsed = time.perf_counter() - t0
    total = elapsed + sum(_elapsed_fig2.values())
    mean_gap = float(np.mean(finals))
    dip_frac = dipped / len(list(SEEDS))
    ok = mean_gap > 0 and dip_frac >= 0.20 and total < 300.0
    _report(
        "criterion 6c (bounded permutation, AUPRC objective)",
        ok,
        f"mean final gap {mean_gap:+.4f} (bar >0); low-prevalence AUROC dropped "
        f"below its start in {dip_frac:.0%} of seeds (bar 20%); criterion-6 "
        f"experiments took {total:.0f}s total",
    )


def test_criterion_7_spearman_correctness():
    rng = np.random.default_rng(707)
    fixtures = [
        ([1, 2, 3, 4], [1, 3, 2, 4]),
        ([1, 2, 3, 4], [4, 3, 2, 1]),
        ([1, 2, 3], [1, 2, 3]),
        ([1, 2, 3], [3, 1, 2]),
        ([1, 2, 3, 4, 5], [2, 1, 4, 3, 5]),
        ([1, 2, 3, 4, 5], [5, 3, 1, 2, 4]),
        ([2, 4, 6, 8], [1, 3, 2, 4]),
    ]
    while len(fixtures) < 20:
        n = int(rng.integers(4, 10))
        fixtures.append(
            (list(rng.permutation(n) + 1.0), list(rng.permutation(n) + 1.0))
        )
    exact_ok = True
    worst = 0.0
    for x, y in fixtures:
        expected = float(spearman_rho_no_ties(x, y))
        got = spearman(x, y).rho
        worst = max(worst, abs(got - expected))
        if abs(got - expected) > 1e-12:
            exact_ok = False
    know_08 = spearman([1, 2, 3, 4], [1, 3, 2, 4]).rho
    exact_ok = exact_ok and abs(know_08 - 0.8) <= 1e-12

    invariance_ok = True
    for _ in range(100):
        x = rng.normal(size=12)
        y = rng.normal(size=12)
        base = spearman(x, y).rho
        if abs(spearman(np.exp(x), y).rho - base) > 1e-12:
            invariance_ok = False
        if abs(spearman(x, y**3).rho - base) > 1e-12:
            invariance_ok = False
    ok = exact_ok and invariance_ok
    _report(
        "criterion 7 (Spearman correctness)",
        ok,
        f"20 fixtures worst deviation {worst:.2e}; 0.8 example exact; monotone "
        f"invariance on 100 instances: {invariance_ok}",
    )


def test_criterion_8_sweep_pipeline():
    hits = 0
    for regen in range(100):
        rng = np.random.default_rng(8000 + regen)
        summary = sweep_correlations(make_records(rng))
        if summary.mean_difference > 0:
            hits += 1
    meta = meta_correlation([(float(k), 0.1 * k) for k in range(1, 9)])
    ok = hits >= 95 and meta.rho == 1.0
    _report(
        "criterion 8 (sweep pipeline on fixtures)",
        ok,
        f"planted positive difference recovered in {hits}/100 regenerations "
        f"(bar 95); monotone 8-point meta rho {meta.rho}",
    )


def test_criterion_9_cli_determinism(tmp_path, capsys):
    def run_all(base: Path) -> dict[str, bytes]:
        base.mkdir(parents=True, exist_ok=True)
        scores_csv = base / "scores.csv"
        synth_cfg = base / "synth.cfg"
        synth_cfg.write_text(
            "[groups]\nids = 1 2\nn = 60 60\nprevalence = 0.1 0.05\n"
            "target_auroc = 0.85 0.85\n[seeds]\nseeds = 3\n"
            f"[output]\nscores_csv = {scores_csv}\n"
        )
        assert cli_main(["synth", str(synth_cfg)]) == 0
        opt_cfg = base / "opt.cfg"
        traj, band = base / "traj.csv", base / "band.csv"
        opt_cfg.write_text(
            "[groups]\nids = 1 2\nn = 60 60\nprevalence = 0.1 0.05\n"
            "target_auroc = 0.85 0.85\n"
            "[optimizer]\nprocedure = m3\nobjective = auprc\nsteps = 3\n"
            "candidates_per_step = 5\n"
            "[seeds]\nseeds = 0:3\n"
            f"[output]\ntrajectory_csv = {traj}\nband_csv = {band}\n"
        )
        assert cli_main(["optimize", str(opt_cfg)]) == 0
        report = base / "report.json"
        assert cli_main(["metrics", str(scores_csv), "--json", str(report)]) == 0
        table = base / "mistakes.json"
        assert cli_main(["mistakes", str(scores_csv), "--json", str(table)]) == 0
        sweep_json = base / "sweep.json"
        fixture = Path(__file__).parent / "data" / "sweep_fixture.csv"
        assert cli_main(["sweep", str(fixture), "--json", str(sweep_json)]) == 0
        return {
            p.name: p.read_bytes()
            for p in (scores_csv, traj, band, report, table, sweep_json)
        }

    first = run_all(tmp_path / "a")
    second = run_all(tmp_path / "b")
    capsys.readouterr()
    same = {name: first[name] == second[name] for name in first}
    ok = all(same.values())
    _report(
        "criterion 9 (command determinism)",
        ok,
        "byte-identical across reruns: "
        + ", ".join(f"{name}={'yes' if v else 'NO'}" for name, v in same.items()),
    )
