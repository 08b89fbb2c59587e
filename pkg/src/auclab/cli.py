"""Command-line front end and file I/O.

Subcommands: ``metrics`` (metric report for a score CSV), ``mistakes``
(misranked-pair table), ``synth`` (generate score CSVs from a config),
``optimize`` (run an optimization experiment, emitting trajectory and band
CSVs), ``sweep`` (split-level correlation summary of run-record CSVs).

Exit codes are a stable contract: 0 success, 2 usage or config error,
3 data error, 4 metric undefined on the given data.

File formats (UTF-8, LF line endings, scores at 9 decimal digits):

* score CSV -- header ``score,label`` or ``score,label,group``;
* trajectory CSV -- long format ``seed,step,scope,metric,value`` with scope
  ``overall`` or ``group:<id>``;
* band CSV -- ``step,scope,metric,p05,mean,p95``;
* run-record CSV -- see ``SWEEP_REQUIRED_COLUMNS`` / ``SWEEP_OPTIONAL_COLUMNS``.

Config files are INI documents with sections ``synth``, ``groups``,
``optimizer``, ``seeds``, ``output``; unknown sections or keys are rejected.
"""

from __future__ import annotations

import argparse
import configparser
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .analysis import (
    RunRecord,
    meta_correlation,
    per_group_metrics,
    percentile_band,
    sweep_correlations,
)
from .errors import ConfigError, DataError, MetricUndefinedError, TiedScoresError
from .metrics import auprc, auprc_reparam, auroc, auroc_reparam, pr_curve, roc_curve
from .mistakes import enumerate_mistakes
from .optimizer import OBJECTIVES, PROCEDURES, OptimizerConfig, TrajectoryRecord, run
from .scoreset import ScoreSet
from .synthgen import (
    SQUEEZE_MODES,
    GroupConfig,
    GroupSpec,
    SynthConfig,
    build_two_group_dataset,
    sample_target_auroc,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DATA = 3
EXIT_UNDEFINED = 4

#: canonical score/metric serialization precision
_FMT = "%.9f"


def _fmt(x: float) -> str:
    return _FMT % x


# ---------------------------------------------------------------------------
# score CSV I/O


def parse_score_csv(path: str | Path) -> tuple[ScoreSet, tuple[tuple[int, ...], ...]]:
    """Parse a score CSV into a ScoreSet.

    Returns the set plus the tied-score index groups (as 1-based file line
    numbers) so callers can flag duplicates. Raises DataError with
    line-precise messages on malformed content.
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise DataError(f"{path}: cannot read: {exc}") from exc
    reader = csv.reader(io.StringIO(text))
    rows = list(reader)
    if not rows:
        raise DataError(f"{path}: empty file")
    header = rows[0]
    if header == ["score", "label"]:
        has_group = False
    elif header == ["score", "label", "group"]:
        has_group = True
    else:
        raise DataError(
            f"{path}: line 1: header must be 'score,label' or 'score,label,group'; "
            f"got {','.join(header)!r}"
        )
    problems: list[str] = []
    scores: list[float] = []
    labels: list[int] = []
    groups: list[int] = []
    for lineno, row in enumerate(rows[1:], start=2):
        if len(row) != len(header):
            problems.append(f"line {lineno}: expected {len(header)} fields, got {len(row)}")
            continue
        try:
            score = float(row[0])
        except ValueError:
            problems.append(f"line {lineno}: score {row[0]!r} is not a number")
            continue
        if not 0.0 < score < 1.0:
            problems.append(f"line {lineno}: score {row[0]} outside the open interval (0,1)")
            continue
        if row[1] not in ("0", "1"):
            problems.append(f"line {lineno}: label {row[1]!r} must be 0 or 1")
            continue
        if has_group:
            try:
                group = int(row[2])
            except ValueError:
                problems.append(f"line {lineno}: group {row[2]!r} is not an integer")
                continue
            if group < 0:
                problems.append(f"line {lineno}: group {row[2]} is negative")
                continue
            groups.append(group)
        scores.append(score)
        labels.append(int(row[1]))
    if problems:
        raise DataError(f"{path}: " + "; ".join(problems))
    if not scores:
        raise DataError(f"{path}: no data rows")
    s = ScoreSet(
        np.array(scores),
        np.array(labels),
        np.array(groups) if has_group else None,
    )
    tied_lines = tuple(
        tuple(i + 2 for i in grp) for grp in s._tied  # sample index -> file line
    )
    return s, tied_lines


def write_score_csv(s: ScoreSet, path: str | Path) -> None:
    lines = []
    if s.groups is None:
        lines.append("score,label")
        for score, label in zip(s.scores, s.labels):
            lines.append(f"{_fmt(score)},{label}")
    else:
        lines.append("score,label,group")
        for score, label, group in zip(s.scores, s.labels, s.groups):
            lines.append(f"{_fmt(score)},{label},{group}")
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")


# ---------------------------------------------------------------------------
# config parsing

_SCHEMA = {
    "synth": {"n_total", "prevalence", "target_auroc", "rescale_to_prevalence", "seed"},
    "groups": {"ids", "n", "prevalence", "target_auroc", "squeeze"},
    "optimizer": {
        "procedure",
        "objective",
        "steps",
        "candidates_per_step",
        "delta_max",
        "gamma",
    },
    "seeds": {"seeds"},
    "output": {"scores_csv", "trajectory_csv", "band_csv"},
}


@dataclass
class ExperimentConfig:
    synth: SynthConfig | None
    groups: GroupSpec | None
    squeeze: str
    optimizer: dict | None
    seeds: tuple[int, ...]
    output: dict[str, str]


def _parse_seed_list(text: str) -> tuple[int, ...]:
    text = text.strip()
    if ":" in text:
        lo_s, hi_s = text.split(":", 1)
        lo, hi = int(lo_s), int(hi_s)
        if hi <= lo:
            raise ValueError(f"empty seed range {text!r}")
        return tuple(range(lo, hi))
    return tuple(int(tok) for tok in text.replace(",", " ").split())


def _parse_bool(text: str) -> bool:
    lowered = text.strip().lower()
    if lowered in ("true", "yes", "1", "on"):
        return True
    if lowered in ("false", "no", "0", "off"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


def load_config(path: str | Path) -> ExperimentConfig:
    """Parse and schema-validate an experiment config.

    Every violation found is reported, not just the first.
    """
    parser = configparser.ConfigParser(interpolation=None)
    try:
        with open(path, encoding="utf-8") as fh:
            parser.read_file(fh)
    except OSError as exc:
        raise ConfigError([f"{path}: cannot read: {exc}"]) from exc
    except configparser.Error as exc:
        raise ConfigError([f"{path}: {exc}"]) from exc

    problems: list[str] = []
    for section in parser.sections():
        if section not in _SCHEMA:
            problems.append(f"unknown section [{section}]")
            continue
        for key in parser[section]:
            if key not in _SCHEMA[section]:
                problems.append(f"unknown key {key!r} in section [{section}]")

    def take(section: str, key: str, convert, default=None):
        if not parser.has_option(section, key):
            return default
        raw = parser.get(section, key)
        try:
            return convert(raw)
        except ValueError as exc:
            problems.append(f"[{section}] {key}: {exc}")
            return default

    synth = None
    if parser.has_section("synth"):
        n_total = take("synth", "n_total", int)
        prevalence = take("synth", "prevalence", float)
        target = take("synth", "target_auroc", float)
        rescale = take("synth", "rescale_to_prevalence", _parse_bool, False)
        seed = take("synth", "seed", int, 0)
        if n_total is None or prevalence is None or target is None:
            problems.append("[synth] needs n_total, prevalence and target_auroc")
        else:
            try:
                synth = SynthConfig(
                    n_total=n_total,
                    prevalence=prevalence,
                    target_auroc=target,
                    rescale_to_prevalence=rescale,
                    seed=seed,
                )
            except ValueError as exc:
                problems.append(f"[synth]: {exc}")

    groups = None
    squeeze = "linear"
    if parser.has_section("groups"):
        ids = take("groups", "ids", lambda t: [int(x) for x in t.split()])
        ns = take("groups", "n", lambda t: [int(x) for x in t.split()])
        prevs = take("groups", "prevalence", lambda t: [float(x) for x in t.split()])
        targets = take("groups", "target_auroc", lambda t: [float(x) for x in t.split()])
        squeeze = take("groups", "squeeze", str, "linear")
        if squeeze not in SQUEEZE_MODES:
            problems.append(
                f"[groups] squeeze must be one of {', '.join(SQUEEZE_MODES)}; got {squeeze!r}"
            )
        lists = {"ids": ids, "n": ns, "prevalence": prevs, "target_auroc": targets}
        missing = [k for k, v in lists.items() if v is None]
        if missing:
            problems.append(f"[groups] missing keys: {', '.join(missing)}")
        else:
            lengths = {k: len(v) for k, v in lists.items()}
            if len(set(lengths.values())) != 1:
                problems.append(f"[groups] list lengths differ: {lengths}")
            else:
                try:
                    groups = GroupSpec(
                        tuple(
                            GroupConfig(
                                group_id=i, n=n, prevalence=p, target_auroc=t
                            )
                            for i, n, p, t in zip(ids, ns, prevs, targets)
                        )
                    )
                except ValueError as exc:
                    problems.append(f"[groups]: {exc}")

    optimizer = None
    if parser.has_section("optimizer"):
        optimizer = {
            "procedure": take("optimizer", "procedure", str),
            "objective": take("optimizer", "objective", str),
            "steps": take("optimizer", "steps", int),
            "candidates_per_step": take("optimizer", "candidates_per_step", int),
            "delta_max": take("optimizer", "delta_max", float),
            "gamma": take("optimizer", "gamma", int, 3),
        }
        if optimizer["procedure"] not in PROCEDURES:
            problems.append(
                f"[optimizer] procedure must be one of {', '.join(PROCEDURES)}; "
                f"got {optimizer['procedure']!r}"
            )
        if optimizer["objective"] not in OBJECTIVES:
            problems.append(
                f"[optimizer] objective must be one of {', '.join(OBJECTIVES)}; "
                f"got {optimizer['objective']!r}"
            )
        if optimizer["steps"] is None or optimizer["steps"] < 0:
            problems.append("[optimizer] steps must be a non-negative integer")

    seeds: tuple[int, ...] = ()
    if parser.has_section("seeds"):
        seeds = take("seeds", "seeds", _parse_seed_list, ())
        if not seeds:
            problems.append("[seeds] needs a non-empty 'seeds' list or range")
        elif any(s < 0 for s in seeds):
            problems.append("[seeds] seeds must be non-negative")

    output = dict(parser["output"]) if parser.has_section("output") else {}

    if problems:
        raise ConfigError(problems)
    return ExperimentConfig(
        synth=synth,
        groups=groups,
        squeeze=squeeze,
        optimizer=optimizer,
        seeds=seeds,
        output=output,
    )


# ---------------------------------------------------------------------------
# metrics command


def _metric_report(s: ScoreSet, tied_lines, per_group: bool) -> dict:
    report: dict = {
        "n": s.n,
        "n_pos": s.n_pos,
        "n_neg": s.n_neg,
        "prevalence": s.prevalence,
        "auroc": auroc(s),
        "auprc": auprc(s),
        "tied_score_lines": [list(g) for g in tied_lines],
    }
    if s.is_strict:
        roc_form = auroc_reparam(s)
        prc_forms = auprc_reparam(s)
        report["reparam"] = {
            "auroc_fpr_form": roc_form,
            "auprc_mean_precision": prc_forms.mean_precision,
            "auprc_firing_rate_form": prc_forms.firing_rate_form,
            "auroc_residual": abs(report["auroc"] - roc_form),
            "auprc_residual_mean_precision": abs(
                report["auprc"] - prc_forms.mean_precision
            ),
            "auprc_residual_firing_rate_form": abs(
                report["auprc"] - prc_forms.firing_rate_form
            ),
        }
    else:
        report["reparam"] = None
    if per_group:
        if s.groups is None:
            raise DataError("--per-group needs a 'group' column in the input")
        report["per_group"] = {
            str(g): {
                "n": m.n,
                "n_pos": m.n_pos,
                "prevalence": m.prevalence,
                "auroc": m.auroc,
                "auprc": m.auprc,
            }
            for g, m in per_group_metrics(s).items()
        }
    return report


def _write_curve_csv(curve, path: str | Path) -> None:
    lines = ["threshold,tpr,fpr,precision"]
    for pt in curve:
        prec = "" if pt.precision is None else _fmt(pt.precision)
        lines.append(f"{_fmt(pt.threshold)},{_fmt(pt.tpr)},{_fmt(pt.fpr)},{prec}")
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")


def cmd_metrics(args) -> int:
    s, tied_lines = parse_score_csv(args.input)
    if tied_lines:
        flat = "; ".join(str(list(g)) for g in tied_lines)
        print(f"note: duplicate scores at lines {flat}", file=sys.stderr)
    report = _metric_report(s, tied_lines, args.per_group)
    print(f"n={report['n']} n_pos={report['n_pos']} n_neg={report['n_neg']} "
          f"prevalence={_fmt(report['prevalence'])}")
    print(f"auroc={_fmt(report['auroc'])}")
    print(f"auprc={_fmt(report['auprc'])}")
    if report["reparam"] is not None:
        r = report["reparam"]
        print(f"auroc_fpr_form={_fmt(r['auroc_fpr_form'])} "
              f"residual={r['auroc_residual']:.3e}")
        print(f"auprc_mean_precision={_fmt(r['auprc_mean_precision'])} "
              f"residual={r['auprc_residual_mean_precision']:.3e}")
        print(f"auprc_firing_rate_form={_fmt(r['auprc_firing_rate_form'])} "
              f"residual={r['auprc_residual_firing_rate_form']:.3e}")
    else:
        print("reparam forms skipped: tied scores present")
    if args.per_group:
        for g, m in sorted(report["per_group"].items(), key=lambda kv: int(kv[0])):
            roc = "undefined" if m["auroc"] is None else _fmt(m["auroc"])
            prc = "undefined" if m["auprc"] is None else _fmt(m["auprc"])
            print(f"group {g}: n={m['n']} n_pos={m['n_pos']} "
                  f"prevalence={_fmt(m['prevalence'])} auroc={roc} auprc={prc}")
    if args.json:
        Path(args.json).parent.mkdir(parents=True, exist_ok=True)
        Path(args.json).write_text(
            json.dumps(report, indent=2, sort_keys=True) + "\n", encoding="utf-8"
        )
    if args.roc_csv:
        _write_curve_csv(roc_curve(s), args.roc_csv)
    if args.pr_csv:
        _write_curve_csv(pr_curve(s), args.pr_csv)
    return EXIT_OK


# ---------------------------------------------------------------------------
# mistakes command


def cmd_mistakes(args) -> int:
    s, tied_lines = parse_score_csv(args.input)
    if tied_lines:
        flat = "; ".join(str(list(g)) for g in tied_lines)
        raise TiedScoresError(
            f"{args.input}: tied scores at lines {flat}; mistake analysis needs "
            "pairwise-distinct scores",
            tied_indices=tied_lines,
        )
    records = enumerate_mistakes(s)
    rows = []
    for m in sorted(records, key=lambda m: -m.delta_auprc):
        rows.append(
            {
                "position": m.low_index + 1,  # 1-based ascending-sort position
                "low_score": m.low_score,
                "high_score": m.high_score,
                "low_group": m.low_group,
                "high_group": m.high_group,
                "delta_auroc": m.delta_auroc,
                "delta_auprc": m.delta_auprc,
            }
        )
    if not rows:
        print("no mistakes: every positive outranks every negative")
    else:
        print("position,low_score,high_score,low_group,high_group,delta_auroc,delta_auprc")
        for r in rows:
            lg = "" if r["low_group"] is None else str(r["low_group"])
            hg = "" if r["high_group"] is None else str(r["high_group"])
            print(
                f"{r['position']},{_fmt(r['low_score'])},{_fmt(r['high_score'])},"
                f"{lg},{hg},{_fmt(r['delta_auroc'])},{_fmt(r['delta_auprc'])}"
            )
    if args.json:
        Path(args.json).parent.mkdir(parents=True, exist_ok=True)
        Path(args.json).write_text(
            json.dumps(rows, indent=2, sort_keys=True) + "\n", encoding="utf-8"
        )
    return EXIT_OK


# ---------------------------------------------------------------------------
# synth command


def _joint_and_group_summary(s: ScoreSet) -> str:
    parts = [f"joint_auroc={_fmt(auroc(s))}"]
    if s.groups is not None:
        for g, m in sorted(per_group_metrics(s).items()):
            value = "undefined" if m.auroc is None else _fmt(m.auroc)
            parts.append(f"group{g}_auroc={value}")
    return " ".join(parts)


def cmd_synth(args) -> int:
    cfg = load_config(args.config)
    problems = []
    if (cfg.synth is None) == (cfg.groups is None):
        problems.append("synth needs exactly one of [synth] or [groups]")
    if "scores_csv" not in cfg.output:
        problems.append("[output] scores_csv is required")
    if cfg.groups is not None:
        if not cfg.seeds:
            problems.append("[seeds] is required for group-based synth")
        elif len(cfg.seeds) > 1 and "{seed}" not in cfg.output.get("scores_csv", ""):
            problems.append(
                "[output] scores_csv needs a {seed} placeholder for multiple seeds"
            )
    if cfg.synth is not None and cfg.seeds:
        problems.append("[seeds] applies to group-based synth only; use [synth] seed")
    if problems:
        raise ConfigError(problems)

    if cfg.synth is not None:
        s = sample_target_auroc(cfg.synth)
        path = cfg.output["scores_csv"]
        write_score_csv(s, path)
        print(f"seed={cfg.synth.seed} {_joint_and_group_summary(s)} -> {path}")
        return EXIT_OK

    for seed in cfg.seeds:
        rng = np.random.default_rng(seed)
        s = build_two_group_dataset(cfg.groups, rng, squeeze=cfg.squeeze)
        path = cfg.output["scores_csv"].replace("{seed}", str(seed))
        write_score_csv(s, path)
        print(f"seed={seed} {_joint_and_group_summary(s)} -> {path}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# optimize command


def _one_optimize_run(payload) -> tuple[int, TrajectoryRecord]:
    cfg, seed = payload
    rng = np.random.default_rng(seed)
    if cfg.groups is not None:
        dataset = build_two_group_dataset(cfg.groups, rng, squeeze=cfg.squeeze)
    else:
        dataset = sample_target_auroc(cfg.synth, rng)
    opt = OptimizerConfig(
        procedure=cfg.optimizer["procedure"],
        objective=cfg.optimizer["objective"],
        steps=cfg.optimizer["steps"],
        seed=seed,
        candidates_per_step=cfg.optimizer["candidates_per_step"],
        delta_max=cfg.optimizer["delta_max"],
        gamma=cfg.optimizer["gamma"],
    )
    return seed, run(dataset, opt, rng)


def _trajectory_rows(seed: int, record: TrajectoryRecord, total_steps: int):
    """Long-format rows, padding converged runs by carrying the last point
    forward (a converged dataset no longer changes)."""
    rows = []
    points = list(record.points)
    while len(points) < total_steps + 1:
        last = points[-1]
        points.append(
            type(last)(
                step=points[-1].step + 1,
                auroc=last.auroc,
                auprc=last.auprc,
                group_auroc=last.group_auroc,
                group_auprc=last.group_auprc,
                change=None,
            )
        )
    for pt in points:
        rows.append((seed, pt.step, "overall", "auroc", pt.auroc))
        rows.append((seed, pt.step, "overall", "auprc", pt.auprc))
        for g in sorted(pt.group_auroc):
            if pt.group_auroc[g] is not None:
                rows.append((seed, pt.step, f"group:{g}", "auroc", pt.group_auroc[g]))
            if pt.group_auprc[g] is not None:
                rows.append((seed, pt.step, f"group:{g}", "auprc", pt.group_auprc[g]))
    return rows


def cmd_optimize(args) -> int:
    cfg = load_config(args.config)
    problems = []
    if cfg.optimizer is None:
        problems.append("[optimizer] section is required")
    if (cfg.synth is None) == (cfg.groups is None):
        problems.append("optimize needs exactly one of [synth] or [groups]")
    if not cfg.seeds:
        problems.append("[seeds] section is required")
    if "trajectory_csv" not in cfg.output:
        problems.append("[output] trajectory_csv is required")
    if "band_csv" in cfg.output and len(cfg.seeds) < 2:
        problems.append("[output] band_csv needs at least 2 seeds")
    if cfg.optimizer is not None and not problems:
        try:
            OptimizerConfig(
                procedure=cfg.optimizer["procedure"],
                objective=cfg.optimizer["objective"],
                steps=cfg.optimizer["steps"],
                seed=0,
                candidates_per_step=cfg.optimizer["candidates_per_step"],
                delta_max=cfg.optimizer["delta_max"],
                gamma=cfg.optimizer["gamma"],
            )
        except ValueError as exc:
            problems.append(f"[optimizer]: {exc}")
    if problems:
        raise ConfigError(problems)

    payloads = [(cfg, seed) for seed in cfg.seeds]
    if args.workers > 1:
        with ProcessPoolExecutor(max_workers=args.workers) as pool:
            results = dict(pool.map(_one_optimize_run, payloads))
    else:
        results = dict(map(_one_optimize_run, payloads))

    total_steps = cfg.optimizer["steps"]
    lines = ["seed,step,scope,metric,value"]
    for seed in cfg.seeds:
        for row in _trajectory_rows(seed, results[seed], total_steps):
            lines.append(f"{row[0]},{row[1]},{row[2]},{row[3]},{_fmt(row[4])}")
    traj_path = Path(cfg.output["trajectory_csv"])
    traj_path.parent.mkdir(parents=True, exist_ok=True)
    traj_path.write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")
    print(f"trajectories ({len(cfg.seeds)} seeds) -> {traj_path}")

    if "band_csv" in cfg.output:
        # collect (scope, metric) series across seeds; a scope/metric pair is
        # banded only if present for every seed at every step
        series: dict[tuple[str, str], list[list[float]]] = {}
        for seed in cfg.seeds:
            rows = _trajectory_rows(seed, results[seed], total_steps)
            per_key: dict[tuple[str, str], dict[int, float]] = {}
            for _, step, scope, metric, value in rows:
                per_key.setdefault((scope, metric), {})[step] = value
            for key, by_step in per_key.items():
                if len(by_step) == total_steps + 1:
                    series.setdefault(key, []).append(
                        [by_step[t] for t in range(total_steps + 1)]
                    )
        band_lines = ["step,scope,metric,p05,mean,p95"]
        for (scope, metric) in sorted(series):
            rows_for_key = series[(scope, metric)]
            if len(rows_for_key) != len(cfg.seeds):
                continue
            band = percentile_band(np.array(rows_for_key), lo=5.0, hi=95.0)
            for t in range(total_steps + 1):
                band_lines.append(
                    f"{t},{scope},{metric},{_fmt(band.lo[t])},"
                    f"{_fmt(band.mean[t])},{_fmt(band.hi[t])}"
                )
        band_path = Path(cfg.output["band_csv"])
        band_path.parent.mkdir(parents=True, exist_ok=True)
        band_path.write_text("\n".join(band_lines) + "\n", encoding="utf-8", newline="\n")
        print(f"bands -> {band_path}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# sweep command

SWEEP_REQUIRED_COLUMNS = (
    "run_id",
    "split_id",
    "seed",
    "val_auroc",
    "val_auprc",
    "test_auroc_g0",
    "test_auprc_g0",
    "test_auroc_g1",
    "test_auprc_g1",
    "prevalence_g0",
    "prevalence_g1",
)
SWEEP_OPTIONAL_COLUMNS = ("dataset", "group_weight", "hyperparams")


def parse_run_records(path: str | Path) -> list[RunRecord]:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise DataError(f"{path}: cannot read: {exc}") from exc
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames is None:
        raise DataError(f"{path}: empty file")
    missing = [c for c in SWEEP_REQUIRED_COLUMNS if c not in reader.fieldnames]
    if missing:
        raise DataError(f"{path}: missing columns: {', '.join(missing)}")
    unknown = [
        c
        for c in reader.fieldnames
        if c not in SWEEP_REQUIRED_COLUMNS and c not in SWEEP_OPTIONAL_COLUMNS
    ]
    if unknown:
        raise DataError(f"{path}: unknown columns: {', '.join(unknown)}")
    records = []
    for lineno, row in enumerate(reader, start=2):
        try:
            records.append(
                RunRecord(
                    run_id=row["run_id"],
                    split_id=row["split_id"],
                    seed=int(row["seed"]),
                    val_auroc=float(row["val_auroc"]),
                    val_auprc=float(row["val_auprc"]),
                    test_group_auroc={
                        0: float(row["test_auroc_g0"]),
                        1: float(row["test_auroc_g1"]),
                    },
                    test_group_auprc={
                        0: float(row["test_auprc_g0"]),
                        1: float(row["test_auprc_g1"]),
                    },
                    group_prevalence={
                        0: float(row["prevalence_g0"]),
                        1: float(row["prevalence_g1"]),
                    },
                    group_weight=float(row.get("group_weight") or 1.0),
                    hyperparams=row.get("hyperparams") or "",
                    dataset=row.get("dataset") or "default",
                )
            )
        except ValueError as exc:
            raise DataError(f"{path}: line {lineno}: {exc}") from exc
    if not records:
        raise DataError(f"{path}: no data rows")
    return records


def cmd_sweep(args) -> int:
    records = parse_run_records(args.input)
    by_dataset: dict[str, list[RunRecord]] = {}
    for r in records:
        by_dataset.setdefault(r.dataset, []).append(r)
    summaries = []
    for dataset in sorted(by_dataset):
        try:
            summaries.append(sweep_correlations(by_dataset[dataset]))
        except MetricUndefinedError as exc:
            raise MetricUndefinedError(f"dataset {dataset!r}: {exc}") from exc
    doc: dict = {"datasets": []}
    for summary in summaries:
        print(
            f"dataset={summary.dataset} higher_group={summary.higher_group} "
            f"prevalence_ratio={summary.prevalence_ratio:.6g}"
        )
        for split in summary.splits:
            print(
                f"  split={split.split_id} n_runs={split.n_runs} "
                f"rho_gap_vs_auprc={split.rho_gap_vs_auprc:+.6f} "
                f"rho_gap_vs_auroc={split.rho_gap_vs_auroc:+.6f} "
                f"difference={split.difference:+.6f}"
            )
        print(
            f"  mean_difference={summary.mean_difference:+.6f} "
            f"ci95=[{summary.ci_low:+.6f}, {summary.ci_high:+.6f}]"
        )
        doc["datasets"].append(
            {
                "dataset": summary.dataset,
                "higher_group": summary.higher_group,
                "lower_group": summary.lower_group,
                "prevalence_ratio": summary.prevalence_ratio,
                "splits": [
                    {
                        "split_id": sp.split_id,
                        "n_runs": sp.n_runs,
                        "rho_gap_vs_auprc": sp.rho_gap_vs_auprc,
                        "rho_gap_vs_auroc": sp.rho_gap_vs_auroc,
                        "difference": sp.difference,
                    }
                    for sp in summary.splits
                ],
                "mean_difference": summary.mean_difference,
                "ci_low": summary.ci_low,
                "ci_high": summary.ci_high,
            }
        )
    if len(summaries) >= 3:
        meta = meta_correlation(
            [(s.prevalence_ratio, s.mean_difference) for s in summaries]
        )
        print(f"meta: rho={meta.rho:+.6f} p={meta.p_value:.6g}")
        doc["meta"] = {"rho": meta.rho, "p_value": meta.p_value}
    else:
        doc["meta"] = None
    if args.json:
        Path(args.json).parent.mkdir(parents=True, exist_ok=True)
        Path(args.json).write_text(
            json.dumps(doc, indent=2, sort_keys=True) + "\n", encoding="utf-8"
        )
    return EXIT_OK


# ---------------------------------------------------------------------------
# entry point


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="auclab",
        description="Ranking-metric laboratory: exact AUROC/AUPRC, mistakes, "
        "synthetic scores, metric-greedy optimization, gap analysis.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("metrics", help="metric report for a score CSV")
    p.add_argument("input", help="score CSV (score,label[,group])")
    p.add_argument("--per-group", action="store_true", help="add a per-group block")
    p.add_argument("--json", help="write the machine-readable report here")
    p.add_argument("--roc-csv", help="export the ROC sweep as CSV")
    p.add_argument("--pr-csv", help="export the PR sweep as CSV")
    p.set_defaults(func=cmd_metrics)

    p = sub.add_parser("mistakes", help="misranked adjacent pairs with exact deltas")
    p.add_argument("input", help="score CSV with pairwise-distinct scores")
    p.add_argument("--json", help="write the table as JSON here")
    p.set_defaults(func=cmd_mistakes)

    p = sub.add_parser("synth", help="generate score CSVs from a config")
    p.add_argument("config", help="INI config with [synth] or [groups]")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("optimize", help="run an optimization experiment")
    p.add_argument("config", help="INI config with [optimizer], [seeds], [output]")
    p.add_argument("--workers", type=int, default=1, help="parallel seed workers")
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("sweep", help="split-level correlation summary of run records")
    p.add_argument("input", help="run-record CSV")
    p.add_argument("--json", help="write the summary document here")
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        for problem in exc.problems:
            print(f"config error: {problem}", file=sys.stderr)
        return EXIT_USAGE
    except MetricUndefinedError as exc:
        print(f"metric undefined: {exc}", file=sys.stderr)
        return EXIT_UNDEFINED
    except DataError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
