"""Benchmark rows, aggregate speedups and performance profiles."""

from __future__ import annotations

import csv
import logging
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, fields
from pathlib import Path
from typing import Iterable, Sequence

from .branching import Strategy
from .formats import guess_format, parse_graph
from .graph import Graph
from .solver import SolverConfig, solve

__all__ = [
    "BenchRow",
    "InstanceRecord",
    "aggregate_speedups",
    "load_instance",
    "performance_profile",
    "read_bench_csv",
    "run_bench",
    "write_bench_csv",
]

log = logging.getLogger(__name__)

BASELINE = Strategy.MAX_DEGREE.value


@dataclass(frozen=True)
class InstanceRecord:
    name: str
    n: int
    m: int
    format: str
    path: str


@dataclass
class BenchRow:
    instance: str
    strategy: str
    mis_size: int
    time_s: float
    branches: int
    timed_out: bool
    seed: int


BENCH_COLUMNS = [f.name for f in fields(BenchRow)]


def load_instance(path: str | Path, fmt: str | None = None) -> tuple[InstanceRecord, Graph]:
    fmt = fmt or guess_format(path)
    g = parse_graph(path, fmt)
    rec = InstanceRecord(Path(path).stem, g.num_vertices(), g.num_edges(), fmt, str(path))
    return rec, g


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("MIS_THREADS", "1")))
    except ValueError:
        return 1


def run_bench(
    instances: Sequence[tuple[InstanceRecord, Graph]],
    strategies: Sequence[str],
    seeds: Sequence[int] = (42,),
    time_limit: float | None = None,
    threads: int | None = None,
) -> list[BenchRow]:
    """Solve every (instance, strategy, seed) once; rows come back in that order."""
    jobs = [
        (rec, g, Strategy(s).value, seed)
        for rec, g in instances
        for s in strategies
        for seed in seeds
    ]

    def run(job) -> BenchRow:
        rec, g, strategy, seed = job
        rep = solve(g, SolverConfig(strategy=strategy, time_limit=time_limit, seed=seed))
        log.info("%s %s seed=%d: mis=%d branches=%d %.3fs%s", rec.name, strategy, seed,
                 rep.mis_size, rep.branches, rep.elapsed, " TIMEOUT" if rep.timed_out else "")
        return BenchRow(rec.name, strategy, rep.mis_size, rep.elapsed, rep.branches, rep.timed_out, seed)

    workers = threads if threads is not None else _threads()
    if workers <= 1:
        return [run(job) for job in jobs]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(run, jobs))


def write_bench_csv(rows: Iterable[BenchRow], path: str | Path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=BENCH_COLUMNS, lineterminator="\n")
        writer.writeheader()
        for row in rows:
            d = asdict(row)
            d["time_s"] = f"{row.time_s:.6f}"
            d["timed_out"] = int(row.timed_out)
            writer.writerow(d)


def read_bench_csv(path: str | Path) -> list[BenchRow]:
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        missing = set(BENCH_COLUMNS) - set(reader.fieldnames or ())
        if missing:
            raise ValueError(f"{path}: missing columns {sorted(missing)}")
        rows = [
            BenchRow(
                r["instance"],
                r["strategy"],
                int(r["mis_size"]),
                float(r["time_s"]),
                int(r["branches"]),
                r["timed_out"].strip().lower() in ("1", "true", "yes"),
                int(r["seed"]),
            )
            for r in reader
        ]
    if not rows:
        raise ValueError(f"{path}: no benchmark rows")
    return rows


def _mean_by_instance(rows: Iterable[BenchRow], metric: str, time_limit: float | None):
    # (instance, strategy) -> (mean metric over seeds, any timeout)
    acc: dict[tuple[str, str], list] = {}
    for r in rows:
        value = float(getattr(r, metric))
        if r.timed_out and metric == "time_s" and time_limit is not None:
            value = time_limit
        slot = acc.setdefault((r.instance, r.strategy), [0.0, 0, False])
        slot[0] += value
        slot[1] += 1
        slot[2] = slot[2] or r.timed_out
    return {key: (total / count, timed_out) for key, (total, count, timed_out) in acc.items()}


def aggregate_speedups(
    rows: Sequence[BenchRow],
    time_limit: float | None = None,
    baseline: str = BASELINE,
) -> dict[str, float]:
    """Total-time speedup of each strategy over ``baseline``.

    ``sum(baseline time) / sum(strategy time)`` over the instances that at
    least one of the two finished.  Timed-out runs are charged ``time_limit``
    (their recorded time when no limit is given).  Times are averaged over
    seeds first.
    """
    means = _mean_by_instance(rows, "time_s", time_limit)
    instances = sorted({r.instance for r in rows})
    strategies = list(dict.fromkeys(r.strategy for r in rows))
    if baseline not in strategies:
        raise ValueError(f"baseline strategy {baseline!r} missing from rows")
    out = {}
    for s in strategies:
        base_total = other_total = 0.0
        for inst in instances:
            b = means.get((inst, baseline))
            o = means.get((inst, s))
            if b is None or o is None or (b[1] and o[1]):
                continue
            base_total += b[0]
            other_total += o[0]
        out[s] = base_total / other_total if other_total > 0 else math.nan
    return out


def performance_profile(
    rows: Sequence[BenchRow],
    metric: str = "time_s",
) -> dict[str, list[tuple[float, float]]]:
    """Per strategy, ``(tau, fraction)`` steps of the performance profile.

    The fraction at ``tau`` counts instances where the strategy's value is
    within ``tau`` times the best strategy's value on that instance.  Runs
    that timed out never count.  For branch counts, which can be zero, both
    sides are shifted by one before dividing.
    """
    if metric not in ("time_s", "branches"):
        raise ValueError(f"unsupported metric {metric!r}")
    if not rows:
        raise ValueError("no benchmark rows")
    means = _mean_by_instance(rows, metric, None)
    instances = sorted({r.instance for r in rows})
    strategies = list(dict.fromkeys(r.strategy for r in rows))
    shift = 1.0 if metric == "branches" else 0.0
    ratios: dict[str, list[float]] = {s: [] for s in strategies}
    for inst in instances:
        finished = {
            s: means[(inst, s)][0] + shift
            for s in strategies
            if (inst, s) in means and not means[(inst, s)][1]
        }
        best = min(finished.values(), default=None)
        for s in strategies:
            if s not in finished or best is None:
                ratios[s].append(math.inf)
            elif finished[s] == best:
                ratios[s].append(1.0)
            else:
                ratios[s].append(finished[s] / best if best > 0 else math.inf)
    taus = sorted({x for rs in ratios.values() for x in rs if math.isfinite(x)})
    total = len(instances)
    profile = {}
    for s in strategies:
        rs = sorted(ratios[s])
        profile[s] = [(tau, sum(1 for x in rs if x <= tau) / total) for tau in taus]
    return profile
