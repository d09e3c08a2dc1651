"""Directed temporal multigraph model, edge-list ingestion and time slicing.

A temporal graph is a sequence of interactions (source, target, time).
Node labels from the input are mapped to dense integer ids at load time;
the original labels are kept in a label table and used for all output.
Timestamps are stored in seconds: unit conversion happens once, at the
parsing boundary, so all internal arithmetic is in a single unit.

Graphs are immutable after construction and safe to share across
concurrent searches.
"""

from __future__ import annotations

import io
from typing import Iterable, NamedTuple, TextIO

from .errors import ParseError

#: Multipliers applied to raw timestamps at ingest.
TIME_UNITS = {
    "seconds": 1,
    "days": 86_400,
    "years": 31_536_000,
    "ticks": 1,
}


class Interaction(NamedTuple):
    """A timestamped directed edge. Self-loops are rejected at ingest."""

    source: int
    target: int
    time: int


class TemporalGraph:
    """Directed multigraph of interactions with time-sorted incidence indices.

    Duplicate interactions (identical triples) are retained as parallel
    edges; the model never deduplicates. Per-node in/out indices are
    sorted ascending by time with ingest order breaking ties.
    """

    def __init__(self, interactions: Iterable[Interaction], labels: dict[int, str]):
        self.interactions: tuple[Interaction, ...] = tuple(interactions)
        self.labels: dict[int, str] = dict(labels)
        nodes = set()
        for e in self.interactions:
            nodes.add(e.source)
            nodes.add(e.target)
        self.nodes: tuple[int, ...] = tuple(sorted(nodes))
        self._label_to_id = {lab: nid for nid, lab in self.labels.items()}

        out_index: dict[int, list[tuple[int, int]]] = {n: [] for n in self.nodes}
        in_index: dict[int, list[tuple[int, int]]] = {n: [] for n in self.nodes}
        pair_times: dict[tuple[int, int], list[int]] = {}
        for e in self.interactions:
            out_index[e.source].append((e.target, e.time))
            in_index[e.target].append((e.source, e.time))
            pair_times.setdefault((e.source, e.target), []).append(e.time)
        for idx in (out_index, in_index):
            for lst in idx.values():
                lst.sort(key=lambda item: item[1])  # stable: ingest order on ties
        self.out_index = out_index
        self.in_index = in_index
        self.pair_times = {k: tuple(sorted(v)) for k, v in pair_times.items()}
        self.pair_count = {k: len(v) for k, v in self.pair_times.items()}
        self._out_nbrs = {
            n: frozenset(t for t, _ in out_index[n]) for n in self.nodes
        }
        self._in_nbrs = {
            n: frozenset(s for s, _ in in_index[n]) for n in self.nodes
        }

    def order(self) -> int:
        return len(self.nodes)

    def size(self) -> int:
        return len(self.interactions)

    def label(self, node: int) -> str:
        return self.labels[node]

    def node_id(self, label: str) -> int:
        return self._label_to_id[label]

    def out_neighbors(self, node: int) -> frozenset[int]:
        return self._out_nbrs[node]

    def in_neighbors(self, node: int) -> frozenset[int]:
        return self._in_nbrs[node]

    def induced_count(self, u: int, v: int) -> int:
        """Number of interactions directed u -> v."""
        if u not in self.labels or v not in self.labels:
            raise ValueError(f"unknown node id: {u if u not in self.labels else v}")
        return self.pair_count.get((u, v), 0)

    def slice(self, start: int, end: int) -> "TemporalGraph":
        """Interactions with start <= time < end; start included, end excluded.

        Nodes are restricted to endpoints of the retained interactions.
        """
        if start > end:
            raise ValueError(f"slice start {start} > end {end}")
        kept = [e for e in self.interactions if start <= e.time < end]
        labels = {}
        for e in kept:
            labels[e.source] = self.labels[e.source]
            labels[e.target] = self.labels[e.target]
        return TemporalGraph(kept, labels)

    def restrict(self, indices: Iterable[int]) -> "TemporalGraph":
        """Sub-multigraph keeping only the given interaction positions.

        Node ids and labels are preserved, so mappings found in the
        restriction are valid in the parent graph.
        """
        kept = [self.interactions[i] for i in sorted(indices)]
        labels = {}
        for e in kept:
            labels[e.source] = self.labels[e.source]
            labels[e.target] = self.labels[e.target]
        return TemporalGraph(kept, labels)

    @classmethod
    def from_triples(
        cls, triples: Iterable[tuple[object, object, int]]
    ) -> "TemporalGraph":
        """Build a graph from (source, target, time) triples.

        Labels may be any hashable values; they are stringified and
        renumbered densely in first-seen order.
        """
        ids: dict[str, int] = {}
        labels: dict[int, str] = {}
        interactions = []
        for src, dst, t in triples:
            s_lab, d_lab = str(src), str(dst)
            if s_lab == d_lab:
                raise ValueError(f"self-loop: {src} -> {dst}")
            for lab in (s_lab, d_lab):
                if lab not in ids:
                    ids[lab] = len(ids)
                    labels[ids[lab]] = lab
            interactions.append(Interaction(ids[s_lab], ids[d_lab], int(t)))
        return cls(interactions, labels)


class QueryGraph:
    """Small directed simple graph without timestamps.

    The pattern searched for: at most one edge per ordered node pair,
    no self-loops. Nodes carry labels like temporal graphs do.
    """

    def __init__(self, edges: Iterable[tuple[int, int]], labels: dict[int, str]):
        self.edges: frozenset[tuple[int, int]] = frozenset(edges)
        self.labels = dict(labels)
        nodes = set(labels)
        for u, v in self.edges:
            nodes.add(u)
            nodes.add(v)
        self.nodes: tuple[int, ...] = tuple(sorted(nodes))
        self._label_to_id = {lab: nid for nid, lab in self.labels.items()}
        out_adj: dict[int, set[int]] = {n: set() for n in self.nodes}
        in_adj: dict[int, set[int]] = {n: set() for n in self.nodes}
        for u, v in self.edges:
            out_adj[u].add(v)
            in_adj[v].add(u)
        self.out_adj = {n: frozenset(s) for n, s in out_adj.items()}
        self.in_adj = {n: frozenset(s) for n, s in in_adj.items()}

    def order(self) -> int:
        return len(self.nodes)

    def size(self) -> int:
        return len(self.edges)

    def label(self, node: int) -> str:
        return self.labels[node]

    def node_id(self, label: str) -> int:
        return self._label_to_id[label]

    def is_weakly_connected(self) -> bool:
        if not self.nodes:
            return False
        seen = {self.nodes[0]}
        stack = [self.nodes[0]]
        while stack:
            n = stack.pop()
            for m in self.out_adj[n] | self.in_adj[n]:
                if m not in seen:
                    seen.add(m)
                    stack.append(m)
        return len(seen) == len(self.nodes)

    def undirected_diameter(self) -> int:
        """Longest shortest path, ignoring edge directions."""
        diameter = 0
        for start in self.nodes:
            dist = {start: 0}
            frontier = [start]
            while frontier:
                nxt = []
                for n in frontier:
                    for m in self.out_adj[n] | self.in_adj[n]:
                        if m not in dist:
                            dist[m] = dist[n] + 1
                            nxt.append(m)
                frontier = nxt
            if len(dist) != len(self.nodes):
                raise ValueError("diameter undefined: query not connected")
            diameter = max(diameter, max(dist.values()))
        return diameter

    @classmethod
    def from_edges(cls, pairs: Iterable[tuple[object, object]]) -> "QueryGraph":
        """Build a query from (source, target) pairs, renumbering densely."""
        ids: dict[str, int] = {}
        labels: dict[int, str] = {}
        edges = []
        for src, dst in pairs:
            s_lab, d_lab = str(src), str(dst)
            if s_lab == d_lab:
                raise ValueError(f"self-loop: {src} -> {dst}")
            for lab in (s_lab, d_lab):
                if lab not in ids:
                    ids[lab] = len(ids)
                    labels[ids[lab]] = lab
            edge = (ids[s_lab], ids[d_lab])
            if edge in edges:
                raise ValueError(f"duplicate edge: {src} -> {dst}")
            edges.append(edge)
        return cls(edges, labels)


def _lines(stream: TextIO | str) -> Iterable[tuple[int, str]]:
    if isinstance(stream, str):
        stream = io.StringIO(stream)
    for lineno, raw in enumerate(stream, start=1):
        line = raw.strip()
        if not line or line.startswith("#") or line.startswith("%"):
            continue
        yield lineno, line


def parse_edge_list(stream: TextIO | str, time_unit: str = "seconds") -> TemporalGraph:
    """Parse whitespace-separated `<source> <target> <time>` lines.

    Lines starting with `#` or `%` are comments. Timestamps are converted
    to seconds according to `time_unit`. Empty input yields an empty graph.
    """
    if time_unit not in TIME_UNITS:
        raise ValueError(f"unknown time unit: {time_unit!r}")
    factor = TIME_UNITS[time_unit]
    ids: dict[str, int] = {}
    labels: dict[int, str] = {}
    interactions = []
    for lineno, line in _lines(stream):
        parts = line.split()
        if len(parts) != 3:
            raise ParseError(
                f"expected `<source> <target> <time>`, got {line!r}", lineno
            )
        src, dst, raw_t = parts
        if src == dst:
            raise ParseError(f"self-loop on node {src!r}", lineno)
        try:
            t = int(raw_t)
        except ValueError:
            raise ParseError(f"bad timestamp {raw_t!r}", lineno) from None
        for lab in (src, dst):
            if lab not in ids:
                ids[lab] = len(ids)
                labels[ids[lab]] = lab
        interactions.append(Interaction(ids[src], ids[dst], t * factor))
    return TemporalGraph(interactions, labels)


def write_edge_list(g: TemporalGraph, stream: TextIO) -> None:
    """One interaction per line, in ingest order, using original labels."""
    for e in g.interactions:
        stream.write(f"{g.labels[e.source]} {g.labels[e.target]} {e.time}\n")


def parse_query_edge_list(stream: TextIO | str) -> QueryGraph:
    """Parse whitespace-separated `<source> <target>` lines into a query."""
    pairs = []
    seen = set()
    for lineno, line in _lines(stream):
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"expected `<source> <target>`, got {line!r}", lineno)
        src, dst = parts
        if src == dst:
            raise ParseError(f"self-loop on node {src!r}", lineno)
        if (src, dst) in seen:
            raise ParseError(f"duplicate edge {src} -> {dst}", lineno)
        seen.add((src, dst))
        pairs.append((src, dst))
    return QueryGraph.from_edges(pairs)


def write_query_edge_list(q: QueryGraph, stream: TextIO, header: str | None = None) -> None:
    """One edge per line, sorted by node id, with an optional `#` header."""
    if header:
        stream.write(f"# {header}\n")
    for u, v in sorted(q.edges):
        stream.write(f"{q.labels[u]} {q.labels[v]}\n")
