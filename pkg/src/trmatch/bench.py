"""Benchmark harness: timings, speedups and spurious-candidate counts.

One cell is a (query, threshold, strategy) combination; each cell runs a
configurable number of repeats and records the median wall time. Cells
are independent and may be fanned out over worker processes; rows are
sorted before writing so reruns produce identical CSVs except for the
wall-time columns.
"""

from __future__ import annotations

import csv
import math
import statistics
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence, TextIO

from .catalog import QuerySpec
from .engine import SearchStats, Strategy, run_strategy
from .errors import SearchTimeout
from .graphs import TemporalGraph

BENCH_HEADER = [
    "network",
    "query",
    "d_seconds",
    "strategy",
    "wall_time_s",
    "embeddings",
    "candidates",
    "spurious",
    "states",
    "timeout",
]

SPEEDUP_HEADER = ["network", "query", "d_seconds", "speedup", "diameter", "total_size"]

PREDICTOR_HEADER = [
    "network",
    "query",
    "d_seconds",
    "speedup",
    "spurious",
    "diameter",
    "total_size",
]


@dataclass
class BenchRecord:
    network_id: str
    query_id: str
    d: float
    strategy: str
    wall_time: float
    embeddings: int
    candidates: int
    spurious: int
    states: int
    timed_out: bool = False


@dataclass
class SpeedupRow:
    network_id: str
    query_id: str
    d: float
    speedup: float
    query_diameter: int
    query_total_size: int


def parse_duration(text: str) -> float:
    """`10` or `10s` seconds, `10d` days, `10y` years, `inf` unbounded."""
    text = text.strip().lower()
    if text == "inf":
        return math.inf
    factor = 1
    if text.endswith("s"):
        text = text[:-1]
    elif text.endswith("d"):
        factor, text = 86_400, text[:-1]
    elif text.endswith("y"):
        factor, text = 31_536_000, text[:-1]
    try:
        return int(text) * factor
    except ValueError:
        raise ValueError(f"bad duration {text!r} (use e.g. 10, 10s, 3d, 1y, inf)") from None


def format_d(d: float) -> str:
    return "inf" if d == math.inf else str(int(d))


def _run_cell(
    host: TemporalGraph,
    spec: QuerySpec,
    d: float,
    strategy: Strategy,
    repeats: int,
    timeout_s: float,
    network_id: str,
) -> BenchRecord:
    walls = []
    stats: SearchStats | None = None
    embeddings = 0
    timed_out = False
    for _ in range(repeats):
        deadline = time.perf_counter() + timeout_s
        try:
            found, stats = run_strategy(host, spec.graph, strategy, d, deadline=deadline)
            embeddings = len(found)
            walls.append(stats.wall_time)
        except SearchTimeout:
            timed_out = True
            break
    if timed_out or stats is None:
        return BenchRecord(
            network_id=network_id,
            query_id=spec.id,
            d=d,
            strategy=strategy.value,
            wall_time=timeout_s,
            embeddings=0,
            candidates=0,
            spurious=0,
            states=0,
            timed_out=True,
        )
    return BenchRecord(
        network_id=network_id,
        query_id=spec.id,
        d=d,
        strategy=strategy.value,
        wall_time=statistics.median(walls),
        embeddings=embeddings,
        candidates=stats.candidates,
        spurious=stats.spurious,
        states=stats.states_expanded,
        timed_out=False,
    )


def run_bench(
    host: TemporalGraph,
    specs: Sequence[QuerySpec],
    d_values: Sequence[float],
    strategies: Sequence[Strategy],
    repeats: int = 3,
    timeout_s: float = 300.0,
    workers: int = 1,
    network_id: str = "network",
) -> tuple[list[BenchRecord], list[SpeedupRow]]:
    """Every (query, d, strategy) cell once; medians over `repeats` runs."""
    cells = [
        (spec, d, strategy)
        for spec in specs
        for d in d_values
        for strategy in strategies
    ]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [
                pool.submit(_run_cell, host, spec, d, strat, repeats, timeout_s, network_id)
                for spec, d, strat in cells
            ]
            records = [f.result() for f in futures]
    else:
        records = [
            _run_cell(host, spec, d, strat, repeats, timeout_s, network_id)
            for spec, d, strat in cells
        ]
    records.sort(key=lambda r: (r.query_id, r.d, r.strategy))
    speedups = compute_speedups(records, {s.id: s for s in specs})
    return records, speedups


def compute_speedups(
    records: Iterable[BenchRecord], specs: dict[str, QuerySpec]
) -> list[SpeedupRow]:
    """Wall-time quotient topology-before-time / time-and-topology per cell,
    sorted by decreasing speedup."""
    toti: dict[tuple[str, str, float], BenchRecord] = {}
    titoto: dict[tuple[str, str, float], BenchRecord] = {}
    for r in records:
        key = (r.network_id, r.query_id, r.d)
        if r.strategy == Strategy.TOPOLOGY_BEFORE_TIME.value:
            toti[key] = r
        elif r.strategy == Strategy.TIME_AND_TOPOLOGY.value:
            titoto[key] = r
    rows = []
    for key in toti.keys() & titoto.keys():
        network_id, query_id, d = key
        spec = specs[query_id]
        rows.append(
            SpeedupRow(
                network_id=network_id,
                query_id=query_id,
                d=d,
                speedup=toti[key].wall_time / titoto[key].wall_time,
                query_diameter=spec.graph.undirected_diameter(),
                query_total_size=spec.graph.order() + spec.graph.size(),
            )
        )
    rows.sort(key=lambda r: (-r.speedup, r.query_id, r.d))
    return rows


def write_bench_csv(records: Iterable[BenchRecord], stream: TextIO) -> None:
    writer = csv.writer(stream)
    writer.writerow(BENCH_HEADER)
    for r in records:
        writer.writerow(
            [
                r.network_id,
                r.query_id,
                format_d(r.d),
                r.strategy,
                repr(r.wall_time),
                r.embeddings,
                r.candidates,
                r.spurious,
                r.states,
                int(r.timed_out),
            ]
        )


def write_speedup_csv(rows: Iterable[SpeedupRow], stream: TextIO) -> None:
    writer = csv.writer(stream)
    writer.writerow(SPEEDUP_HEADER)
    for r in rows:
        writer.writerow(
            [
                r.network_id,
                r.query_id,
                format_d(r.d),
                repr(r.speedup),
                r.query_diameter,
                r.query_total_size,
            ]
        )


def read_bench_csv(stream: TextIO) -> list[BenchRecord]:
    reader = csv.DictReader(stream)
    records = []
    for row in reader:
        records.append(
            BenchRecord(
                network_id=row["network"],
                query_id=row["query"],
                d=math.inf if row["d_seconds"] == "inf" else float(row["d_seconds"]),
                strategy=row["strategy"],
                wall_time=float(row["wall_time_s"]),
                embeddings=int(row["embeddings"]),
                candidates=int(row["candidates"]),
                spurious=int(row["spurious"]),
                states=int(row["states"]),
                timed_out=bool(int(row["timeout"])),
            )
        )
    return records


def predictor_report(
    records: Iterable[BenchRecord], specs: dict[str, QuerySpec]
) -> list[dict[str, object]]:
    """Per (query, d) rows joining speedup with its candidate predictors:
    the spurious-candidate count, query diameter and total size.

    Requires both compared strategies for every cell; incomplete cells are
    reported in the raised error.
    """
    by_cell: dict[tuple[str, str, float], dict[str, BenchRecord]] = {}
    for r in records:
        by_cell.setdefault((r.network_id, r.query_id, r.d), {})[r.strategy] = r
    want = (Strategy.TOPOLOGY_BEFORE_TIME.value, Strategy.TIME_AND_TOPOLOGY.value)
    incomplete = [
        key for key, have in sorted(by_cell.items()) if not all(s in have for s in want)
    ]
    if incomplete:
        cells = ", ".join(f"{q}@{format_d(d)}" for _, q, d in incomplete)
        raise ValueError(f"cells missing a strategy row: {cells}")
    rows = []
    for (network_id, query_id, d), have in sorted(by_cell.items()):
        spec = specs[query_id]
        rows.append(
            {
                "network": network_id,
                "query": query_id,
                "d_seconds": format_d(d),
                "speedup": have[want[0]].wall_time / have[want[1]].wall_time,
                "spurious": have[want[0]].spurious,
                "diameter": spec.graph.undirected_diameter(),
                "total_size": spec.graph.order() + spec.graph.size(),
            }
        )
    return rows


def write_predictor_csv(rows: Iterable[dict[str, object]], stream: TextIO) -> None:
    writer = csv.writer(stream)
    writer.writerow(PREDICTOR_HEADER)
    for r in rows:
        writer.writerow(
            [
                r["network"],
                r["query"],
                r["d_seconds"],
                repr(float(r["speedup"])),
                r["spurious"],
                r["diameter"],
                r["total_size"],
            ]
        )
