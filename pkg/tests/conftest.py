"""Shared fixtures and independent oracles for the test suite."""

from __future__ import annotations

import random
from collections import Counter

from trmatch import Interaction, QueryGraph, TemporalGraph, pair_time_respecting


def random_host(rng: random.Random, max_order: int = 12, max_size: int = 30) -> TemporalGraph:
    """A random directed temporal multigraph (duplicates allowed)."""
    n = rng.randint(4, max_order)
    m = rng.randint(n - 1, max_size)
    triples = []
    for _ in range(m):
        u = rng.randrange(n)
        v = rng.randrange(n)
        while v == u:
            v = rng.randrange(n)
        triples.append((u, v, rng.randint(0, 50)))
    return TemporalGraph.from_triples(triples)


def random_interaction_set(
    rng: random.Random, max_nodes: int = 6, max_size: int = 12
) -> list[Interaction]:
    """A random small interaction set for whole-set predicate checks."""
    n = rng.randint(2, max_nodes)
    m = rng.randint(1, max_size)
    out = []
    for _ in range(m):
        u = rng.randrange(n)
        v = rng.randrange(n)
        while v == u:
            v = rng.randrange(n)
        out.append(Interaction(u, v, rng.randint(0, 30)))
    return out


def pairwise_time_respecting(sub, d) -> bool:
    """Quadratic oracle: the pair predicate over every adjacent pair."""
    items = list(sub)
    for i in range(len(items)):
        for j in range(i + 1, len(items)):
            ei, ej = items[i], items[j]
            adjacent = (
                ei.source in (ej.source, ej.target)
                or ei.target in (ej.source, ej.target)
            )
            if adjacent and not pair_time_respecting(ei, ej, d):
                return False
    return True


def mapping_set(embeddings) -> set:
    return {e.key() for e in embeddings}


def two_path_query() -> QueryGraph:
    return QueryGraph.from_edges([("a", "b"), ("b", "c")])
