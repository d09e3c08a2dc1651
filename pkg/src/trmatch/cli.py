"""Command-line interface.

Subcommands: `match` streams embeddings as JSONL, `bench` writes the
benchmark CSVs, `analyze-d` prints the gap distribution with a derived
threshold schedule, `catalog` lists or exports the query corpus, and
`report` turns a bench CSV into the predictor table plus figures.

Exit codes: 0 success (possibly zero embeddings), 2 bad arguments,
3 input parse failure, 4 resource-guard abort.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from pathlib import Path

from . import bench as bench_mod
from . import catalog as catalog_mod
from . import danalysis
from .engine import DEFAULT_MAX_SETS, Strategy, embedding_json, run_strategy
from .errors import ParseError, ResourceLimitError
from .graphs import parse_edge_list, parse_query_edge_list, write_query_edge_list

_STRATEGIES = {s.value: s for s in Strategy}


def _load_graph(path: str, time_unit: str):
    with open(path, encoding="utf-8") as fh:
        return parse_edge_list(fh, time_unit=time_unit)


def _load_queries(source: str) -> list[catalog_mod.QuerySpec]:
    if source == "catalog":
        return catalog_mod.default_catalog()
    specs = []
    for path in sorted(Path(source).glob("*.edges")):
        with open(path, encoding="utf-8") as fh:
            graph = parse_query_edge_list(fh)
        specs.append(
            catalog_mod.QuerySpec(
                id=path.stem, graph=graph, family="file", descriptor=str(path)
            )
        )
    if not specs:
        raise ValueError(f"no .edges files found in {source}")
    return specs


def _resolve_query(source: str) -> tuple[str, object]:
    if os.path.exists(source):
        with open(source, encoding="utf-8") as fh:
            return Path(source).stem, parse_query_edge_list(fh)
    for spec in catalog_mod.default_catalog():
        if spec.id == source:
            return spec.id, spec.graph
    raise ValueError(f"query {source!r} is neither a file nor a catalog id")


def _cmd_match(args) -> int:
    host = _load_graph(args.graph, args.time_unit)
    query_id, query = _resolve_query(args.query)
    strategy = _STRATEGIES[args.strategy]
    d = bench_mod.parse_duration(args.d) if args.d is not None else None
    if strategy is not Strategy.STATIC and d is None:
        raise ValueError(f"strategy {strategy.value} requires --d")
    embeddings, stats = run_strategy(
        host, query, strategy, d, max_sets=args.max_sets
    )
    lines = sorted(embedding_json(e, host, query, query_id) for e in embeddings)
    for line in lines:
        sys.stdout.write(line + "\n")
    if args.stats:
        payload = {
            "states_expanded": stats.states_expanded,
            "candidates": stats.candidates,
            "spurious": stats.spurious,
            "wall_time": stats.wall_time,
            "embeddings": len(embeddings),
        }
        with open(args.stats, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=2)
            fh.write("\n")
    return 0


def _schedule_for(args, host) -> list[float]:
    if args.schedule == "auto":
        dist = danalysis.adjacent_deltas(host)
        d_max = danalysis.detect_elbow(dist)
        return list(danalysis.derive_schedule(d_max).points)
    return [bench_mod.parse_duration(v) for v in args.schedule.split(",")]


def _cmd_bench(args) -> int:
    host = _load_graph(args.graph, args.time_unit)
    specs = _load_queries(args.queries)
    d_values = _schedule_for(args, host)
    strategies = [_STRATEGIES[s] for s in args.strategies.split(",")]
    records, speedups = bench_mod.run_bench(
        host,
        specs,
        d_values,
        strategies,
        repeats=args.repeats,
        timeout_s=args.timeout,
        workers=args.workers,
        network_id=Path(args.graph).stem,
    )
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    with open(out / "bench.csv", "w", newline="", encoding="utf-8") as fh:
        bench_mod.write_bench_csv(records, fh)
    with open(out / "speedup.csv", "w", newline="", encoding="utf-8") as fh:
        bench_mod.write_speedup_csv(speedups, fh)
    print(f"wrote {out / 'bench.csv'} and {out / 'speedup.csv'}")
    return 0


def _cmd_analyze_d(args) -> int:
    host = _load_graph(args.graph, args.time_unit)
    dist = danalysis.adjacent_deltas(host)
    d_max = danalysis.detect_elbow(dist)
    schedule = danalysis.derive_schedule(d_max)
    sink = open(args.out, "w", encoding="utf-8") if args.out else sys.stdout
    try:
        sink.write("threshold,cumulative_count\n")
        for threshold, count in dist.cumulative:
            sink.write(f"{threshold},{count}\n")
        points = ",".join(str(p) for p in schedule.points)
        sink.write(f"# d_max={d_max} schedule={points}\n")
    finally:
        if args.out:
            sink.close()
    if args.plot:
        from . import plots

        plots.plot_d_distribution(dist, args.plot, elbow=d_max)
        print(f"wrote {args.plot}", file=sys.stderr)
    return 0


def _cmd_catalog(args) -> int:
    specs = catalog_mod.default_catalog()
    if args.action == "list":
        for spec in specs:
            g = spec.graph
            print(
                f"{spec.id}  order={g.order()} size={g.size()} "
                f"diameter={g.undirected_diameter()}  {spec.descriptor}"
            )
        return 0
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for spec in specs:
        with open(out / f"{spec.id}.edges", "w", encoding="utf-8") as fh:
            write_query_edge_list(spec.graph, fh, header=spec.descriptor)
    print(f"wrote {len(specs)} query files to {out}")
    return 0


def _cmd_report(args) -> int:
    from . import plots

    with open(args.bench, encoding="utf-8") as fh:
        records = bench_mod.read_bench_csv(fh)
    specs = {s.id: s for s in _load_queries(args.queries)}
    rows = bench_mod.predictor_report(records, specs)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    with open(out / "predictor.csv", "w", newline="", encoding="utf-8") as fh:
        bench_mod.write_predictor_csv(rows, fh)
    speedups = bench_mod.compute_speedups(records, specs)
    artifacts = [str(out / "predictor.csv")]
    artifacts.append(plots.plot_speedup(speedups, str(out / "speedup_by_query.png")))
    artifacts.append(plots.plot_predictors(rows, str(out / "predictors.png")))
    print("wrote " + ", ".join(artifacts))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="trmatch",
        description="Time-respecting subgraph matching in temporal networks",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("match", help="find embeddings of one query")
    p.add_argument("--graph", required=True)
    p.add_argument("--query", required=True, help="edge-list file or catalog id")
    p.add_argument("--d", default=None, help="threshold: seconds, 3d, 1y or inf")
    p.add_argument("--strategy", choices=sorted(_STRATEGIES), default="titoto")
    p.add_argument("--stats", default=None, help="write search counters to this JSON file")
    p.add_argument("--time-unit", choices=["seconds", "days", "years", "ticks"],
                   default="seconds")
    p.add_argument("--max-sets", type=int, default=DEFAULT_MAX_SETS,
                   help="extraction cap for the tbt strategy")
    p.set_defaults(func=_cmd_match)

    p = sub.add_parser("bench", help="run the benchmark matrix")
    p.add_argument("--graph", required=True)
    p.add_argument("--queries", default="catalog", help="'catalog' or a directory of .edges files")
    p.add_argument("--schedule", default="auto", help="'auto' or comma-separated durations")
    p.add_argument("--strategies", default="toti,titoto")
    p.add_argument("--repeats", type=int, default=3)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--timeout", type=float, default=300.0, help="per-cell timeout in seconds")
    p.add_argument("--time-unit", choices=["seconds", "days", "years", "ticks"],
                   default="seconds")
    p.add_argument("--out", default=".")
    p.set_defaults(func=_cmd_bench)

    p = sub.add_parser("analyze-d", help="gap distribution and threshold schedule")
    p.add_argument("--graph", required=True)
    p.add_argument("--time-unit", choices=["seconds", "days", "years", "ticks"],
                   default="seconds")
    p.add_argument("--out", default=None, help="CSV path (default: stdout)")
    p.add_argument("--plot", default=None, help="also render the cumulative curve to this PNG")
    p.set_defaults(func=_cmd_analyze_d)

    p = sub.add_parser("catalog", help="inspect or export the query corpus")
    p.add_argument("action", choices=["list", "export"])
    p.add_argument("--out", default="queries")
    p.set_defaults(func=_cmd_catalog)

    p = sub.add_parser("report", help="predictor table and figures from a bench CSV")
    p.add_argument("--bench", required=True, help="path to bench.csv")
    p.add_argument("--queries", default="catalog")
    p.add_argument("--out", default="report")
    p.set_defaults(func=_cmd_report)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ResourceLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
