"""Command line interface.

Exit codes: 0 success, 1 input/parse error, 2 time limit reached,
3 solution not independent, 4 solution independent but not maximum.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
from pathlib import Path

from .bench import (
    BASELINE,
    aggregate_speedups,
    load_instance,
    performance_profile,
    read_bench_csv,
    run_bench,
    write_bench_csv,
)
from .branching import Strategy
from .formats import FORMATS, ParseError, parse_graph
from .graph import GraphInputError
from .oracle import MAX_ORACLE_VERTICES, brute_force_mis
from .solver import SolverConfig, solve
from .validation import check_solution

log = logging.getLogger("misbranch")

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_TIMEOUT = 2
EXIT_NOT_INDEPENDENT = 3
EXIT_NOT_MAXIMUM = 4

STRATEGIES = [s.value for s in Strategy]


def _strategy(text: str) -> str:
    try:
        return Strategy(text).value
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"unknown strategy {text!r}; choose from {', '.join(STRATEGIES)}"
        ) from None


def _load(path: str, fmt: str | None):
    try:
        return parse_graph(path, fmt)
    except (ParseError, GraphInputError, OSError) as err:
        log.error("%s", err)
        return None


def cmd_solve(args) -> int:
    g = _load(args.graph, args.format)
    if g is None:
        return EXIT_INPUT
    cfg = SolverConfig(
        strategy=args.strategy,
        time_limit=args.time_limit,
        seed=args.seed,
        packing_enabled=not args.no_packing,
        bound_enabled=not args.no_bounds,
    )
    rep = solve(g, cfg)
    out = {
        "instance": Path(args.graph).stem,
        "strategy": rep.strategy,
        "mis_size": rep.mis_size,
        "time_s": round(rep.elapsed, 6),
        "branches": rep.branches,
        "timed_out": rep.timed_out,
        "seed": args.seed,
        "n": g.num_vertices(),
        "m": g.num_edges(),
        "rule_counters": dict(sorted(rep.rule_counters.items())),
    }
    if args.solution:
        out["solution"] = rep.solution
    json.dump(out, sys.stdout)
    sys.stdout.write("\n")
    if args.write_solution:
        Path(args.write_solution).write_text(" ".join(map(str, rep.solution)) + "\n")
    return EXIT_TIMEOUT if rep.timed_out else EXIT_OK


def cmd_verify(args) -> int:
    g = _load(args.graph, args.format)
    if g is None:
        return EXIT_INPUT
    try:
        tokens = Path(args.solution).read_text().split()
        vertices = [int(t) - (1 if args.one_based else 0) for t in tokens]
    except (OSError, ValueError) as err:
        log.error("cannot read solution: %s", err)
        return EXIT_INPUT
    try:
        bad = check_solution(g, vertices)
    except GraphInputError as err:
        log.error("%s", err)
        return EXIT_INPUT
    size = len(set(vertices))
    if bad is not None:
        print(json.dumps({"independent": False, "size": size, "edge": list(bad)}))
        return EXIT_NOT_INDEPENDENT
    result = {"independent": True, "size": size}
    if args.optimal:
        if g.num_vertices() > MAX_ORACLE_VERTICES:
            log.error("--optimal needs at most %d vertices", MAX_ORACLE_VERTICES)
            return EXIT_INPUT
        alpha = brute_force_mis(g).alpha
        result["alpha"] = alpha
        result["optimal"] = size == alpha
        print(json.dumps(result))
        return EXIT_OK if size == alpha else EXIT_NOT_MAXIMUM
    print(json.dumps(result))
    return EXIT_OK


def cmd_bench(args) -> int:
    instances = []
    for path in args.instances:
        try:
            instances.append(load_instance(path, args.format))
        except (ParseError, GraphInputError, OSError) as err:
            log.error("skipping %s: %s", path, err)
    if not instances:
        return EXIT_INPUT
    strategies = args.strategies or STRATEGIES
    rows = run_bench(instances, strategies, args.seeds, args.time_limit)
    write_bench_csv(rows, args.out)
    summary_path = args.summary or str(Path(args.out).with_suffix(".summary.csv"))
    if BASELINE in {r.strategy for r in rows}:
        speedups = aggregate_speedups(rows, args.time_limit)
        with open(summary_path, "w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["strategy", "baseline", "s_total"])
            for s, value in speedups.items():
                writer.writerow([s, BASELINE, repr(value)])
                log.info("s_total %-18s %.3f", s, value)
    else:
        log.warning("baseline %s not benchmarked; no speedup summary written", BASELINE)
    return EXIT_OK


def cmd_profile(args) -> int:
    try:
        rows = read_bench_csv(args.bench)
    except (OSError, ValueError) as err:
        log.error("%s", err)
        return EXIT_INPUT
    profile = performance_profile(rows, args.metric)
    with open(args.out, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["strategy", "tau", "fraction"])
        for s, points in profile.items():
            for tau, frac in points:
                writer.writerow([s, f"{tau:.6g}", f"{frac:.6f}"])
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="misbranch", description=__doc__.split("\n")[0])
    parser.add_argument("-v", "--verbose", action="count", default=0)
    sub = parser.add_subparsers(dest="command", required=True)

    def graph_args(p):
        p.add_argument("graph")
        p.add_argument("--format", choices=FORMATS, default=None,
                       help="input format (default: guessed from the suffix)")

    p = sub.add_parser("solve", help="solve one instance and print a JSON record")
    graph_args(p)
    p.add_argument("--strategy", type=_strategy, default=Strategy.MAX_DEGREE.value,
                   help="one of: " + ", ".join(STRATEGIES))
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--time-limit", type=float, default=None)
    p.add_argument("--no-packing", action="store_true")
    p.add_argument("--no-bounds", action="store_true")
    p.add_argument("--solution", action="store_true", help="include the vertex set in the JSON")
    p.add_argument("--write-solution", metavar="PATH")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="check that a vertex set is independent")
    graph_args(p)
    p.add_argument("solution", help="file of whitespace separated vertex ids")
    p.add_argument("--one-based", action="store_true", help="ids in the solution file start at 1")
    p.add_argument("--optimal", action="store_true",
                   help=f"also compare with brute force (at most {MAX_ORACLE_VERTICES} vertices)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="run strategies over instances and write a CSV")
    p.add_argument("instances", nargs="+")
    p.add_argument("--format", choices=FORMATS, default=None)
    p.add_argument("--strategies", nargs="+", type=_strategy, default=None,
                   help="default: all of " + ", ".join(STRATEGIES))
    p.add_argument("--seeds", nargs="+", type=int, default=[42])
    p.add_argument("--time-limit", type=float, default=None)
    p.add_argument("--out", required=True)
    p.add_argument("--summary", default=None, help="speedup CSV (default: OUT with .summary.csv)")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("profile", help="performance profile points from a bench CSV")
    p.add_argument("bench")
    p.add_argument("--out", required=True)
    p.add_argument("--metric", choices=("time_s", "branches"), default="time_s")
    p.set_defaults(func=cmd_profile)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    level = logging.WARNING - 10 * min(args.verbose, 2)
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
