"""The 30-query corpus: named motif structures plus seeded random graphs.

Queries are small directed simple graphs, three to eight nodes, weakly
connected, built so that (with the directed-cycle triangle as the one
named exception) every edge lies on a source-to-sink directed path. The
random part of the catalog is a pure function of the seed, so exports
are byte-identical across runs and platforms.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .engine import match_static
from .graphs import Interaction, QueryGraph, TemporalGraph

DEFAULT_SEED = 97
CATALOG_SIZE = 30
_ORDERS = (3, 4, 5, 6, 7, 8)


@dataclass(frozen=True)
class QuerySpec:
    id: str
    graph: QueryGraph
    family: str  # "named" | "random"
    descriptor: str


def fan_out_fan_in(paths: int = 2, hops: int = 3) -> QueryGraph:
    """One source splitting into parallel directed paths that reconverge.

    With two paths of three hops: six nodes, six edges, diameter three.
    """
    edges = []
    node = 1
    for _ in range(paths):
        prev = 0  # source
        for hop in range(hops - 1):
            edges.append((prev, node))
            prev = node
            node += 1
        edges.append((prev, "sink"))
    labeled = [(str(u), str(v)) for u, v in edges]
    return QueryGraph.from_edges(labeled)


def feed_forward() -> QueryGraph:
    return QueryGraph.from_edges([("x", "y"), ("x", "z"), ("y", "z")])


def fan_out_into_feed_forward() -> QueryGraph:
    """A fan-out to three nodes, two of which start a feed-forward motif."""
    return QueryGraph.from_edges(
        [("l", "a"), ("l", "b"), ("l", "c"), ("a", "b"), ("a", "d"), ("b", "d")]
    )


def clique3() -> QueryGraph:
    """The directed 3-clique: a cycle-closing triangle."""
    return QueryGraph.from_edges([("a", "b"), ("b", "c"), ("c", "a")])


def directed_path(n: int) -> QueryGraph:
    return QueryGraph.from_edges([(str(i), str(i + 1)) for i in range(n - 1)])


def out_star(leaves: int) -> QueryGraph:
    return QueryGraph.from_edges([("hub", f"v{i}") for i in range(leaves)])


def in_star(leaves: int) -> QueryGraph:
    return QueryGraph.from_edges([(f"v{i}", "hub") for i in range(leaves)])


def named_queries() -> list[QuerySpec]:
    entries = [
        (fan_out_fan_in(2, 3), "fan-out-fan-in, two paths of three hops"),
        (feed_forward(), "feed-forward motif"),
        (fan_out_into_feed_forward(), "fan-out into feed-forward (reconstruction)"),
        (clique3(), "directed 3-clique (cycle)"),
        (directed_path(3), "directed path, 3 nodes"),
        (directed_path(4), "directed path, 4 nodes"),
        (out_star(3), "out-star, 3 leaves"),
        (in_star(3), "in-star, 3 leaves"),
    ]
    return [
        QuerySpec(id=f"q{i + 1:02d}", graph=g, family="named", descriptor=desc)
        for i, (g, desc) in enumerate(entries)
    ]


def query_ok(graph: QueryGraph, allow_cycles: bool = False) -> bool:
    """Catalog invariants: size, connectivity, simple, path-composed."""
    if not 3 <= graph.order() <= 8:
        return False
    if not graph.is_weakly_connected():
        return False
    if not allow_cycles and not _is_acyclic(graph):
        return False
    return True


def _is_acyclic(graph: QueryGraph) -> bool:
    indeg = {n: len(graph.in_adj[n]) for n in graph.nodes}
    ready = [n for n in graph.nodes if indeg[n] == 0]
    seen = 0
    while ready:
        n = ready.pop()
        seen += 1
        for m in graph.out_adj[n]:
            indeg[m] -= 1
            if indeg[m] == 0:
                ready.append(m)
    return seen == len(graph.nodes)


def _as_temporal(graph: QueryGraph) -> TemporalGraph:
    interactions = [Interaction(u, v, 0) for u, v in sorted(graph.edges)]
    labels = {n: graph.labels[n] for n in graph.nodes}
    return TemporalGraph(interactions, labels)


def isomorphic(a: QueryGraph, b: QueryGraph) -> bool:
    """Exact directed isomorphism via the induced matcher."""
    if a.order() != b.order() or a.size() != b.size():
        return False
    found, _ = match_static(_as_temporal(a), b)
    return bool(found)


def random_queries(seed: int, count: int, existing: list[QuerySpec] | None = None) -> list[QuerySpec]:
    """Seeded random acyclic queries, balancing the order histogram.

    Candidates are rejection-sampled until weakly connected, acyclic and
    non-isomorphic to everything generated so far (and to `existing`).
    """
    rng = random.Random(seed)
    specs: list[QuerySpec] = []
    known = [s.graph for s in (existing or [])]
    histogram: dict[int, int] = {o: 0 for o in _ORDERS}
    for g in known:
        if g.order() in histogram:
            histogram[g.order()] += 1
    start_index = len(existing or []) + 1
    exhausted: set[int] = set()
    misses = 0
    while len(specs) < count:
        orders = [o for o in _ORDERS if o not in exhausted]
        if not orders:
            raise ValueError(f"cannot produce {count} pairwise non-isomorphic queries")
        order = min(orders, key=lambda o: (histogram[o], o))
        graph = _random_dag(rng, order)
        if graph is None or not query_ok(graph):
            continue
        if any(isomorphic(graph, other) for other in known):
            misses += 1
            if misses >= 400:  # small orders run out of isomorphism classes
                exhausted.add(order)
                misses = 0
            continue
        misses = 0
        idx = start_index + len(specs)
        specs.append(
            QuerySpec(
                id=f"q{idx:02d}",
                graph=graph,
                family="random",
                descriptor=f"random dag, order {graph.order()}, size {graph.size()}",
            )
        )
        known.append(graph)
        histogram[order] += 1
    return specs


def _random_dag(rng: random.Random, order: int) -> QueryGraph | None:
    topo = list(range(order))
    rng.shuffle(topo)
    forward = [
        (topo[i], topo[j]) for i in range(order) for j in range(i + 1, order)
    ]
    max_size = min(order + 4, len(forward))
    size = rng.randint(order - 1, max_size)
    edges = rng.sample(forward, size)
    try:
        graph = QueryGraph.from_edges([(str(u), str(v)) for u, v in edges])
    except ValueError:
        return None
    if graph.order() != order or not graph.is_weakly_connected():
        return None
    return graph


def default_catalog(seed: int = DEFAULT_SEED) -> list[QuerySpec]:
    """The fixed 30-query corpus: named structures plus seeded random ones."""
    named = named_queries()
    return named + random_queries(seed, CATALOG_SIZE - len(named), existing=named)
