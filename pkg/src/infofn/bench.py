"""Decoration-overhead benchmark for the contract-checking wrappers.

One sleep-and-return body is measured undecorated and under three
decorated configurations (flow control, argument configuration, both),
30 timed trials each by default. Raw trials go to CSV; a summary table
(mean/median/stdev/min/max) is printed. Before timing, each decorated
subject is probed with an illegal call to prove the checks are live.
"""

from __future__ import annotations

import argparse
import csv
import statistics
import sys
import time
from dataclasses import dataclass
from typing import Callable, Sequence

from .contract import (
    ArgumentViolation,
    InflowViolation,
    attach_flow,
    configure_args,
    normalize,
)
from .predicates import between
from .typeexpr import INTEGER, REAL, TEXT, fixed, map_of

CONFIG_LABELS = ("NoDeco", "FlowConf", "ArgConf", "FlowConf+ArgConf")

# One legal call, shared by every configuration and documented in BASELINE.md.
PAYLOAD = {"data": "payload", "arg1": (0.5, 2), "arg2": 0.5}

SUMMARY_FIELDS = ("mean_s", "median_s", "stdev_s", "min_s", "max_s")


@dataclass(frozen=True)
class BenchConfig:
    trials: int = 30
    sleep_s: float = 0.1
    configs: tuple[str, ...] = CONFIG_LABELS
    warmup: int = 3
    output_path: str | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "configs", tuple(self.configs))
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if self.sleep_s < 0:
            raise ValueError("sleep_s must be non-negative")
        if not self.configs:
            raise ValueError("configs must be non-empty")
        unknown = [c for c in self.configs if c not in CONFIG_LABELS]
        if unknown:
            raise ValueError(f"unknown config label(s): {', '.join(unknown)}")


@dataclass(frozen=True)
class BenchRecord:
    config: str
    trial: int
    duration_s: float


def build_subjects(sleep_s: float) -> dict[str, Callable]:
    """The four benchmark subjects sharing one sleep-and-return body."""

    def body(data, arg1=(0.5, 1), arg2=0.5):
        time.sleep(sleep_s)
        return {"status": "done"}

    arg_specs = {"arg1": fixed(REAL, INTEGER), "arg2": between(0, 1)}

    def flow(target):
        return attach_flow(target, entry_tp=TEXT, return_tp=map_of(TEXT, TEXT))

    return {
        "NoDeco": body,
        "FlowConf": flow(normalize(body, name="flow_conf")),
        "ArgConf": configure_args(normalize(body, name="arg_conf"), arg_specs),
        "FlowConf+ArgConf": configure_args(
            flow(normalize(body, name="flow_arg_conf")), arg_specs
        ),
    }


def _probe_liveness(subjects: dict[str, Callable]) -> None:
    """Abort if any decorated subject fails to reject an illegal call."""
    probes = {
        "FlowConf": (dict(PAYLOAD, data=123), InflowViolation),
        "ArgConf": (dict(PAYLOAD, arg2=1.5), ArgumentViolation),
        "FlowConf+ArgConf": (dict(PAYLOAD, arg2=1.5), ArgumentViolation),
    }
    for label, (bad_call, expected) in probes.items():
        if label not in subjects:
            continue
        try:
            subjects[label](**bad_call)
        except expected:
            continue
        raise RuntimeError(f"{label} subject accepted an illegal call; decoration inactive")


def run_benchmark(cfg: BenchConfig) -> tuple[list[BenchRecord], dict[str, dict[str, float]]]:
    """Warm up, time the trials, emit CSV and the summary table.

    Returns the raw records and a per-config summary mapping. The timed
    region contains nothing but the subject call.
    """
    subjects = build_subjects(cfg.sleep_s)
    _probe_liveness({k: v for k, v in subjects.items() if k in cfg.configs})
    records: list[BenchRecord] = []
    for label in cfg.configs:
        subject = subjects[label]
        for _ in range(cfg.warmup):
            subject(**PAYLOAD)
        for trial in range(cfg.trials):
            started = time.perf_counter()
            subject(**PAYLOAD)
            records.append(BenchRecord(label, trial, time.perf_counter() - started))

    summary = {label: _summarize([r.duration_s for r in records if r.config == label])
               for label in cfg.configs}
    if cfg.output_path:
        _write_csv(cfg.output_path, records)
    _print_summary(summary)
    return records, summary


def _summarize(durations: list[float]) -> dict[str, float]:
    return {
        "mean_s": statistics.fmean(durations),
        "median_s": statistics.median(durations),
        "stdev_s": statistics.stdev(durations) if len(durations) > 1 else 0.0,
        "min_s": min(durations),
        "max_s": max(durations),
    }


def _write_csv(path: str, records: list[BenchRecord]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["config", "trial", "duration_s"])
        for r in records:
            writer.writerow([r.config, r.trial, f"{r.duration_s:.9f}"])


def _print_summary(summary: dict[str, dict[str, float]], stream=None) -> None:
    stream = stream or sys.stdout
    header = f"{'config':<20}" + "".join(f"{name:>12}" for name in SUMMARY_FIELDS)
    stream.write(header + "\n")
    for label, stats in summary.items():
        row = f"{label:<20}" + "".join(f"{stats[name]:>12.6f}" for name in SUMMARY_FIELDS)
        stream.write(row + "\n")


def _parse_configs(text: str) -> tuple[str, ...]:
    labels = tuple(part.strip() for part in text.split(",") if part.strip())
    return labels


def bench_main(argv: Sequence[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="infofn-bench",
        description="Measure per-call overhead of the contract-checking wrappers.",
    )
    parser.add_argument("--trials", type=int, default=30)
    parser.add_argument("--sleep-s", type=float, default=0.1)
    parser.add_argument("--configs", type=_parse_configs, default=CONFIG_LABELS,
                        help="comma-separated subset of: " + ", ".join(CONFIG_LABELS))
    parser.add_argument("--warmup", type=int, default=3)
    parser.add_argument("--out", required=True, help="CSV path for raw trials")
    opts = parser.parse_args(argv)
    try:
        cfg = BenchConfig(
            trials=opts.trials,
            sleep_s=opts.sleep_s,
            configs=opts.configs,
            warmup=opts.warmup,
            output_path=opts.out,
        )
    except ValueError as exc:
        parser.error(str(exc))
    run_benchmark(cfg)
    return 0


def main() -> None:
    sys.exit(bench_main())
