"""Timing harness: mean/stddev over repetitions, speedup and overhead.

Overhead compares the skeleton path of a benchmark with a hand-rolled dispatch
of the same tasks on the same backend::

    overhead_pct = (mean_flow - mean_direct) / mean_direct * 100

The error margin propagates the standard errors of both means to first order.
"""

from __future__ import annotations

import csv
import math
import statistics
import time
from dataclasses import asdict, dataclass
from functools import partial
from typing import Any, Callable, Optional, Sequence

from ..backends import Backend, SequentialBackend
from ..errors import VerificationMismatch
from ..flow import lift
from ..skeletons import par_map

CSV_HEADER = [
    "benchmark",
    "backend",
    "workers",
    "tasks",
    "reps",
    "mean_s",
    "stddev_s",
    "speedup",
    "overhead_pct",
    "overhead_err_pct",
]


@dataclass
class BenchReport:
    benchmark: str
    backend: str
    workers: int
    tasks: int
    reps: int
    mean_s: float
    stddev_s: float
    speedup_vs_sequential: float
    overhead_pct: Optional[float]
    overhead_err_pct: Optional[float]

    def row(self):
        d = asdict(self)
        d["speedup"] = d.pop("speedup_vs_sequential")
        return {k: ("" if d[k] is None else d[k]) for k in CSV_HEADER}


@dataclass
class BenchmarkSpec:
    """``flow`` and ``direct`` each take a backend and return the benchmark result;
    ``expected`` is the oracle's answer."""

    name: str
    tasks: int
    flow: Callable[[Backend], Any]
    direct: Optional[Callable[[Backend], Any]]
    expected: Any


def time_reps(fn: Callable[[], Any], reps: int):
    """Run ``fn`` once to warm up, then ``reps`` timed times; returns (times, last result)."""
    (times,), (result,) = time_interleaved([fn], reps)
    return times, result


def time_interleaved(fns: Sequence[Callable[[], Any]], reps: int):
    """Warm each callable up once, then time them in alternation so that slow
    drift of the machine affects every path alike."""
    for fn in fns:
        fn()
    times = [[] for _ in fns]
    results = [None] * len(fns)
    for _ in range(reps):
        for k, fn in enumerate(fns):
            t0 = time.perf_counter()
            results[k] = fn()
            times[k].append(time.perf_counter() - t0)
    return times, results


def _sem(xs):
    return statistics.stdev(xs) / math.sqrt(len(xs))


def overhead(flow_times: Sequence[float], direct_times: Sequence[float]):
    mf, md = statistics.fmean(flow_times), statistics.fmean(direct_times)
    pct = (mf - md) / md * 100.0
    err = 100.0 * (mf / md) * math.hypot(_sem(flow_times) / mf, _sem(direct_times) / md)
    return pct, err


def workers_of(backend):
    return getattr(backend.conf, "workers", 1)


def measure(spec: BenchmarkSpec, backends: Sequence[Backend], reps: int, with_overhead: bool = True):
    """One report per backend, preceded by a Sequential baseline if none was given.

    Raises ``VerificationMismatch`` (carrying the reports) if any result differs
    from ``spec.expected``.
    """
    if reps < 3:
        raise ValueError(f"reps must be >= 3, got {reps}")
    backends = list(backends)
    if not any(isinstance(b, SequentialBackend) for b in backends):
        backends.insert(0, SequentialBackend())
    backends.sort(key=lambda b: not isinstance(b, SequentialBackend))

    reports, bad, seq_mean = [], [], None
    for b in backends:
        paths = [partial(spec.flow, b)]
        if with_overhead and spec.direct is not None:
            paths.append(partial(spec.direct, b))
        timings, results = time_interleaved(paths, reps)
        times = timings[0]
        if results[0] != spec.expected:
            bad.append(b.name)
        mean = statistics.fmean(times)
        if seq_mean is None:
            seq_mean = mean
        ov = err = None
        if len(paths) > 1:
            if results[1] != spec.expected:
                bad.append(f"{b.name} (direct)")
            ov, err = overhead(times, timings[1])
        reports.append(
            BenchReport(
                benchmark=spec.name,
                backend=b.name,
                workers=workers_of(b),
                tasks=spec.tasks,
                reps=reps,
                mean_s=mean,
                stddev_s=statistics.stdev(times),
                speedup_vs_sequential=1.0 if isinstance(b, SequentialBackend) else seq_mean / mean,
                overhead_pct=ov,
                overhead_err_pct=err,
            )
        )
    if bad:
        raise VerificationMismatch(f"{spec.name}: result differs from oracle on {', '.join(bad)}", reports)
    return reports


def write_csv(reports, path):
    with open(path, "w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=CSV_HEADER)
        w.writeheader()
        for r in reports:
            w.writerow(r.row())


def format_table(reports):
    lines = [f"{'benchmark':<12} {'backend':<8} {'w':>3} {'tasks':>6} {'mean_s':>10} {'stddev_s':>10} {'speedup':>8} overhead"]
    for r in reports:
        ov = "-" if r.overhead_pct is None else f"{r.overhead_pct:+.2f}% ± {r.overhead_err_pct:.2f}%"
        lines.append(
            f"{r.benchmark:<12} {r.backend:<8} {r.workers:>3} {r.tasks:>6} "
            f"{r.mean_s:>10.4f} {r.stddev_s:>10.4f} {r.speedup_vs_sequential:>8.2f} {ov}"
        )
    return "\n".join(lines)


# a synthetic CPU-bound task of tunable length, for overhead runs


def spin(iterations: int) -> int:
    acc = 0
    for i in range(iterations):
        acc = (acc + i * i) % 1_000_003
    return acc


def calibrate_spin(target_s: float, probe: int = 20_000) -> int:
    """Iteration count that makes ``spin`` take roughly ``target_s`` seconds."""
    best = min(_time_once(spin, probe) for _ in range(3))
    return max(1, math.ceil(probe * target_s / best))


def _time_once(fn, *args):
    t0 = time.perf_counter()
    fn(*args)
    return time.perf_counter() - t0


def spin_spec(tasks: int, iterations: int) -> BenchmarkSpec:
    xs = [iterations + k for k in range(tasks)]
    return BenchmarkSpec(
        name="par_map",
        tasks=tasks,
        flow=lambda b: par_map(b, lift(spin))(xs),
        direct=lambda b: b.direct_map(spin, xs),
        expected=[spin(x) for x in xs],
    )
