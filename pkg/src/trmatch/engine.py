"""Induced subgraph matching over directed temporal multigraphs.

The matcher is a VF2-style state-space search: a state is a partial
injective mapping between query and host nodes, extended one candidate
pair at a time. `core_1` maps host nodes to query nodes and `core_2` is
its inverse; frontier sets track unmapped neighbours of the mapped
portion on each side. The mapped host portion is induced at every depth:
a candidate pair is syntactically feasible only when, for every mapped
query node, the host holds exactly one interaction per query edge and
none where the query has no edge.

Three strategies schedule the temporal constraints differently:

* topology before time: run the static search, then keep only complete
  matches whose induced interactions are time-respecting;
* time and topology together: additionally test, at every extension,
  window and precedence at the candidate host node and at every mapped
  neighbour whose incident set grew, pruning the branch on failure;
* time before topology: extract maximal time-respecting interaction
  sets first, run the static search inside each, validate induced
  counts against the full host, and deduplicate by mapping.

All searches are iterative (explicit stacks); recursion depth never
depends on the data. Searches over the same immutable host graph may run
concurrently: each carries its own state.
"""

from __future__ import annotations

import json
import time as _time
from collections import deque
from dataclasses import dataclass
from enum import Enum
from itertools import permutations

from .constraints import (
    Threshold,
    check_threshold,
    embedding_time_respecting,
    pair_time_respecting,
)
from .errors import ResourceLimitError, SearchTimeout
from .graphs import Interaction, QueryGraph, TemporalGraph

#: Abort time-before-topology once this many maximal sets were produced.
DEFAULT_MAX_SETS = 200_000

#: Abort extraction when classifying more adjacent interaction pairs than this.
MAX_ADJACENT_PAIRS = 50_000_000

#: How many candidate evaluations between deadline checks.
_DEADLINE_STRIDE = 512


@dataclass(eq=False)
class Embedding:
    """An injective query-to-host node mapping plus its induced interactions.

    Identity is the mapping alone: two embeddings with equal mappings are
    equal. `induced` holds the host interactions between mapped pairs,
    sorted by (time, source, target); under induced semantics there is
    exactly one per query edge.
    """

    mapping: dict[int, int]
    induced: tuple[Interaction, ...]

    def key(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted(self.mapping.items()))

    def __eq__(self, other):
        if not isinstance(other, Embedding):
            return NotImplemented
        return self.mapping == other.mapping

    def __hash__(self):
        return hash(self.key())


@dataclass
class SearchStats:
    """Counters for one strategy run.

    `candidates` counts complete topological matches produced, `spurious`
    those rejected afterwards (by the temporal filter, or for
    time-before-topology by full-host validation and deduplication).
    """

    states_expanded: int = 0
    candidates: int = 0
    spurious: int = 0
    wall_time: float = 0.0


class Strategy(Enum):
    STATIC = "static"
    TIME_BEFORE_TOPOLOGY = "tbt"
    TOPOLOGY_BEFORE_TIME = "toti"
    TIME_AND_TOPOLOGY = "titoto"


def _check_query(query: QueryGraph) -> None:
    if query.order() == 0:
        raise ValueError("empty query graph")
    if not query.is_weakly_connected():
        raise ValueError("query graph must be weakly connected")


class _Search:
    """One iterative matching run; collects every complete match.

    Candidate ordering is deterministic: the query node is the smallest
    frontier node (out-frontier preferred over in-frontier), host
    candidates are tried in ascending node id. With `temporal` set, the
    incremental window/precedence test runs after syntactic feasibility
    and prunes the branch on failure, so the visited states are always a
    subset of the static search's states.
    """

    def __init__(
        self,
        host: TemporalGraph,
        query: QueryGraph,
        d: Threshold | None = None,
        temporal: bool = False,
        deadline: float | None = None,
    ):
        self.host = host
        self.query = query
        self.d = d
        self.temporal = temporal
        self.deadline = deadline
        self.core_1: dict[int, int] = {}  # host -> query
        self.core_2: dict[int, int] = {}  # query -> host
        self.t1_out: dict[int, int] = {}
        self.t1_in: dict[int, int] = {}
        self.t2_out: dict[int, int] = {}
        self.t2_in: dict[int, int] = {}
        self._undo: list[tuple[int, int, list[int], list[int], list[int], list[int]]] = []
        self.states_expanded = 0
        self.found: list[Embedding] = []
        self._ticks = 0

    # ------------------------------------------------------------------
    # state transitions

    def _push(self, h: int, q: int) -> None:
        depth = len(self.core_2) + 1
        self.core_1[h] = q
        self.core_2[q] = h
        added: tuple[list[int], ...] = ([], [], [], [])
        for n in self.host.out_neighbors(h):
            if n not in self.t1_out:
                self.t1_out[n] = depth
                added[0].append(n)
        for n in self.host.in_neighbors(h):
            if n not in self.t1_in:
                self.t1_in[n] = depth
                added[1].append(n)
        for n in self.query.out_adj[q]:
            if n not in self.t2_out:
                self.t2_out[n] = depth
                added[2].append(n)
        for n in self.query.in_adj[q]:
            if n not in self.t2_in:
                self.t2_in[n] = depth
                added[3].append(n)
        self._undo.append((h, q, *added))

    def _pop(self) -> None:
        h, q, a1o, a1i, a2o, a2i = self._undo.pop()
        del self.core_1[h]
        del self.core_2[q]
        for n in a1o:
            del self.t1_out[n]
        for n in a1i:
            del self.t1_in[n]
        for n in a2o:
            del self.t2_out[n]
        for n in a2i:
            del self.t2_in[n]

    def _select(self) -> tuple[int, list[int]] | None:
        """Pick the next query node and its ordered host candidates.

        Returns None for a dead state (the query frontier cannot be
        served by the host frontier).
        """
        live_q = [q for q in self.t2_out if q not in self.core_2]
        if live_q:
            live_h = [h for h in self.t1_out if h not in self.core_1]
            if not live_h:
                return None
            return min(live_q), sorted(live_h)
        live_q = [q for q in self.t2_in if q not in self.core_2]
        if live_q:
            live_h = [h for h in self.t1_in if h not in self.core_1]
            if not live_h:
                return None
            return min(live_q), sorted(live_h)
        if self.core_2:
            return None  # connected queries exhaust their frontier only when complete
        return min(self.query.nodes), sorted(self.host.nodes)

    # ------------------------------------------------------------------
    # feasibility

    def _syntactic_ok(self, h: int, q: int) -> bool:
        pc = self.host.pair_count
        edges = self.query.edges
        for p_q, p_h in self.core_2.items():
            want = 1 if (p_q, q) in edges else 0
            if pc.get((p_h, h), 0) != want:
                return False
            want = 1 if (q, p_q) in edges else 0
            if pc.get((h, p_h), 0) != want:
                return False
        # one-level lookahead on frontier cardinalities
        h_succ = self.host.out_neighbors(h)
        h_pred = self.host.in_neighbors(h)
        q_succ = self.query.out_adj[q]
        q_pred = self.query.in_adj[q]
        for h_side, q_side in ((h_succ, q_succ), (h_pred, q_pred)):
            h_t_out = h_t_in = h_new = 0
            for n in h_side:
                if n in self.core_1:
                    continue
                hit = False
                if n in self.t1_out:
                    h_t_out += 1
                    hit = True
                if n in self.t1_in:
                    h_t_in += 1
                    hit = True
                if not hit:
                    h_new += 1
            q_t_out = q_t_in = q_new = 0
            for n in q_side:
                if n in self.core_2:
                    continue
                hit = False
                if n in self.t2_out:
                    q_t_out += 1
                    hit = True
                if n in self.t2_in:
                    q_t_in += 1
                    hit = True
                if not hit:
                    q_new += 1
            if h_t_out < q_t_out or h_t_in < q_t_in or h_new < q_new:
                return False
        return True

    def _temporal_ok(self, h: int, q: int) -> bool:
        """Window and precedence at the candidate and every mapped neighbour.

        The candidate's date lists cover interactions between `h` and the
        mapped host portion. Each mapped neighbour gained those same
        interactions, so window and precedence are re-validated there too;
        checking only the candidate would miss violations at the other
        endpoint.
        """
        if not self.core_1:
            return True
        pt = self.host.pair_times
        d = self.d
        pred_dates: list[int] = []
        succ_dates: list[int] = []
        affected: list[int] = []
        for m in self.core_1:
            tin = pt.get((m, h))
            tout = pt.get((h, m))
            if tin:
                pred_dates.extend(tin)
            if tout:
                succ_dates.extend(tout)
            if tin or tout:
                affected.append(m)
        if not affected:
            return True
        dates = pred_dates + succ_dates
        if max(dates) - min(dates) > d:
            return False
        if pred_dates and succ_dates and min(succ_dates) < max(pred_dates):
            return False
        for m in affected:
            m_in: list[int] = []
            m_out: list[int] = []
            for x in self.core_1:
                if x == m:
                    continue
                ts = pt.get((x, m))
                if ts:
                    m_in.extend(ts)
                ts = pt.get((m, x))
                if ts:
                    m_out.extend(ts)
            ts = pt.get((h, m))
            if ts:
                m_in.extend(ts)
            ts = pt.get((m, h))
            if ts:
                m_out.extend(ts)
            if m_in and m_out:
                if min(m_out) < max(m_in):
                    return False
                both = m_in + m_out
                if max(both) - min(both) > d:
                    return False
            elif m_in:
                if max(m_in) - min(m_in) > d:
                    return False
            elif m_out:
                if max(m_out) - min(m_out) > d:
                    return False
        return True

    def _feasible(self, h: int, q: int) -> bool:
        self._ticks += 1
        if self.deadline is not None and self._ticks % _DEADLINE_STRIDE == 0:
            if _time.perf_counter() > self.deadline:
                raise SearchTimeout("search exceeded its deadline")
        if not self._syntactic_ok(h, q):
            return False
        if self.temporal and not self._temporal_ok(h, q):
            return False
        return True

    # ------------------------------------------------------------------

    def _emit(self) -> None:
        mapping = dict(self.core_2)
        self.found.append(Embedding(mapping, _induced_set(self.host, self.query, mapping)))

    def run(self) -> list[Embedding]:
        if not self.host.nodes:
            return self.found
        target = self.query.order()
        sel = self._select()
        if sel is None:
            return self.found
        frames: list[tuple[int, object]] = [(sel[0], iter(sel[1]))]
        while frames:
            q, host_iter = frames[-1]
            h = next(host_iter, None)
            if h is None:
                frames.pop()
                if frames:
                    self._pop()
                continue
            if not self._feasible(h, q):
                continue
            self._push(h, q)
            self.states_expanded += 1
            if len(self.core_2) == target:
                self._emit()
                self._pop()
                continue
            sel = self._select()
            if sel is None:
                self._pop()
                continue
            frames.append((sel[0], iter(sel[1])))
        return self.found


def _induced_set(
    host: TemporalGraph, query: QueryGraph, mapping: dict[int, int]
) -> tuple[Interaction, ...]:
    induced = []
    for p, q in query.edges:
        hp, hq = mapping[p], mapping[q]
        t = host.pair_times[(hp, hq)][0]  # induced semantics: exactly one
        induced.append(Interaction(hp, hq, t))
    induced.sort(key=lambda e: (e.time, e.source, e.target))
    return tuple(induced)


def _host_induced_ok(host: TemporalGraph, query: QueryGraph, mapping: dict[int, int]) -> bool:
    pc = host.pair_count
    items = list(mapping.items())
    for i, (p, hp) in enumerate(items):
        for q, hq in items[i + 1 :]:
            if pc.get((hp, hq), 0) != (1 if (p, q) in query.edges else 0):
                return False
            if pc.get((hq, hp), 0) != (1 if (q, p) in query.edges else 0):
                return False
    return True


# ----------------------------------------------------------------------
# strategies


def match_static(
    host: TemporalGraph, query: QueryGraph, deadline: float | None = None
) -> tuple[list[Embedding], SearchStats]:
    """All induced embeddings of the query, ignoring timestamps."""
    _check_query(query)
    t0 = _time.perf_counter()
    search = _Search(host, query, deadline=deadline)
    embeddings = search.run()
    stats = SearchStats(
        states_expanded=search.states_expanded,
        candidates=len(embeddings),
        spurious=0,
        wall_time=_time.perf_counter() - t0,
    )
    return embeddings, stats


def match_topology_then_time(
    host: TemporalGraph,
    query: QueryGraph,
    d: Threshold,
    deadline: float | None = None,
) -> tuple[list[Embedding], SearchStats]:
    """Static search first, then a temporal filter over complete matches."""
    _check_query(query)
    check_threshold(d)
    t0 = _time.perf_counter()
    search = _Search(host, query, deadline=deadline)
    candidates = search.run()
    kept = [e for e in candidates if embedding_time_respecting(e.induced, d)]
    stats = SearchStats(
        states_expanded=search.states_expanded,
        candidates=len(candidates),
        spurious=len(candidates) - len(kept),
        wall_time=_time.perf_counter() - t0,
    )
    return kept, stats


def match_time_and_topology(
    host: TemporalGraph,
    query: QueryGraph,
    d: Threshold,
    deadline: float | None = None,
) -> tuple[list[Embedding], SearchStats]:
    """Temporal pruning inside the search; produces no spurious candidates."""
    _check_query(query)
    check_threshold(d)
    t0 = _time.perf_counter()
    search = _Search(host, query, d=d, temporal=True, deadline=deadline)
    embeddings = search.run()
    stats = SearchStats(
        states_expanded=search.states_expanded,
        candidates=len(embeddings),
        spurious=0,
        wall_time=_time.perf_counter() - t0,
    )
    return embeddings, stats


def match_time_then_topology(
    host: TemporalGraph,
    query: QueryGraph,
    d: Threshold,
    max_sets: int = DEFAULT_MAX_SETS,
    deadline: float | None = None,
) -> tuple[list[Embedding], SearchStats]:
    """Extract maximal time-respecting sets, then match inside each.

    Every complete match found in an extracted set is validated against
    the full host's induced counts (a fragment may omit a parallel
    interaction that disqualifies the embedding) and results are
    deduplicated by mapping, since one embedding can lie inside several
    overlapping extracted sets.
    """
    _check_query(query)
    check_threshold(d)
    t0 = _time.perf_counter()
    index_sets = _extract_index_sets(host, d, max_sets=max_sets, deadline=deadline)
    states = 0
    raw = 0
    kept: dict[tuple[tuple[int, int], ...], Embedding] = {}
    for idx_set in index_sets:
        fragment = host.restrict(idx_set)
        if fragment.order() < query.order():
            continue
        search = _Search(fragment, query, deadline=deadline)
        matches = search.run()
        states += search.states_expanded
        raw += len(matches)
        for emb in matches:
            if not _host_induced_ok(host, query, emb.mapping):
                continue
            key = emb.key()
            if key not in kept:
                kept[key] = Embedding(emb.mapping, _induced_set(host, query, emb.mapping))
    result = [kept[k] for k in sorted(kept)]
    stats = SearchStats(
        states_expanded=states,
        candidates=raw,
        spurious=raw - len(result),
        wall_time=_time.perf_counter() - t0,
    )
    return result, stats


# ----------------------------------------------------------------------
# maximal time-respecting subgraph extraction


def extract_max_trs(
    host: TemporalGraph,
    d: Threshold,
    max_sets: int = DEFAULT_MAX_SETS,
    deadline: float | None = None,
) -> list[set[Interaction]]:
    """All maximal connected time-respecting interaction sets.

    Two interactions are adjacent when they share an endpoint; a set is
    time-respecting when every adjacent pair inside it is. Every returned
    set is maximal (no adjacent interaction can be added without breaking
    the property), every interaction appears in at least one set, and
    sets may overlap heavily. The number of maximal sets can grow
    exponentially; `max_sets` caps the enumeration.
    """
    index_sets = _extract_index_sets(host, d, max_sets=max_sets, deadline=deadline)
    return [{host.interactions[i] for i in s} for s in index_sets]


def _extract_index_sets(
    host: TemporalGraph,
    d: Threshold,
    max_sets: int,
    deadline: float | None = None,
) -> list[frozenset[int]]:
    check_threshold(d)
    m = host.size()
    if m == 0:
        return []
    interactions = host.interactions
    incident: dict[int, list[int]] = {n: [] for n in host.nodes}
    for i, e in enumerate(interactions):
        incident[e.source].append(i)
        incident[e.target].append(i)
    pair_budget = sum(len(lst) * (len(lst) - 1) // 2 for lst in incident.values())
    if pair_budget > MAX_ADJACENT_PAIRS:
        raise ResourceLimitError(
            f"about {pair_budget} adjacent interaction pairs to classify "
            f"(cap {MAX_ADJACENT_PAIRS}); slice the graph first"
        )

    # Pairwise classification of adjacent interactions: `compat` edges make
    # connectivity, `conflict` edges are the pairs a valid set must avoid.
    compat: list[set[int]] = [set() for _ in range(m)]
    conflict: list[set[int]] = [set() for _ in range(m)]
    for n in host.nodes:
        lst = incident[n]
        for a in range(len(lst)):
            i = lst[a]
            ei = interactions[i]
            for b in range(a + 1, len(lst)):
                j = lst[b]
                if j in compat[i] or j in conflict[i]:
                    continue  # pair already classified at the other endpoint
                ej = interactions[j]
                if pair_time_respecting(ei, ej, d):
                    compat[i].add(j)
                    compat[j].add(i)
                else:
                    conflict[i].add(j)
                    conflict[j].add(i)

    # Connected components of the compatibility relation: a breadth-first
    # search over interactions, not nodes. No valid connected set crosses
    # a component boundary.
    comp_of = [-1] * m
    components: list[list[int]] = []
    for start in range(m):
        if comp_of[start] != -1:
            continue
        comp = [start]
        comp_of[start] = len(components)
        queue = deque([start])
        while queue:
            i = queue.popleft()
            for j in compat[i]:
                if comp_of[j] == -1:
                    comp_of[j] = len(components)
                    comp.append(j)
                    queue.append(j)
        components.append(comp)

    results: set[frozenset[int]] = set()
    for comp in components:
        comp_set = set(comp)
        if not any(conflict[i] & comp_set for i in comp):
            results.add(frozenset(comp))
            if len(results) > max_sets:
                raise ResourceLimitError(
                    f"more than {max_sets} time-respecting sets; "
                    "raise the cap or slice the graph first"
                )
            continue
        for mis in _maximal_independent_sets(comp, conflict, deadline):
            for part in _split_connected(mis, compat):
                full = _extend_maximal(part, compat, conflict)
                results.add(full)
                if len(results) > max_sets:
                    raise ResourceLimitError(
                        f"more than {max_sets} time-respecting sets; "
                        "raise the cap or slice the graph first"
                    )
    return sorted(results, key=lambda s: (min(s), len(s), sorted(s)))


def _maximal_independent_sets(
    vertices: list[int], conflict: list[set[int]], deadline: float | None
):
    """Maximal conflict-free subsets, via pivoted clique enumeration on the
    complement of the conflict relation (explicit stack, no recursion)."""
    stack: list[tuple[set[int], set[int], set[int]]] = [
        (set(), set(vertices), set())
    ]
    ticks = 0
    while stack:
        ticks += 1
        if deadline is not None and ticks % 256 == 0:
            if _time.perf_counter() > deadline:
                raise SearchTimeout("extraction exceeded its deadline")
        r, p, x = stack.pop()
        if not p and not x:
            yield frozenset(r)
            continue
        pivot = max(sorted(p | x), key=lambda v: len(p) - len(p & conflict[v]) - (v in p))
        branch = p & (conflict[pivot] | {pivot})
        for v in sorted(branch):
            nv_p = (p - conflict[v]) - {v}
            nv_x = (x - conflict[v]) - {v}
            stack.append((r | {v}, nv_p, nv_x))
            p = p - {v}
            x = x | {v}


def _split_connected(members: frozenset[int], compat: list[set[int]]) -> list[set[int]]:
    remaining = set(members)
    parts = []
    while remaining:
        start = min(remaining)
        part = {start}
        queue = deque([start])
        remaining.discard(start)
        while queue:
            i = queue.popleft()
            for j in compat[i]:
                if j in remaining:
                    remaining.discard(j)
                    part.add(j)
                    queue.append(j)
        parts.append(part)
    return parts


def _extend_maximal(
    part: set[int], compat: list[set[int]], conflict: list[set[int]]
) -> frozenset[int]:
    """Grow a valid connected set until no adjacent interaction fits.

    A maximal independent set is maximal over its whole component, but one
    of its connected parts may still accept interactions whose conflicts
    all lie in other parts.
    """
    grown = set(part)
    while True:
        frontier = sorted({x for k in grown for x in compat[k]} - grown)
        added = False
        for x in frontier:
            if not (conflict[x] & grown):
                grown.add(x)
                added = True
                break
        if not added:
            return frozenset(grown)


# ----------------------------------------------------------------------
# brute-force oracle


def enumerate_bruteforce(
    host: TemporalGraph, query: QueryGraph, d: Threshold
) -> list[Embedding]:
    """Try every injective node mapping; the definitional reference result.

    Guarded to small hosts: the injection count is factorial in the host
    order.
    """
    if host.order() > 15:
        raise ValueError(f"host order {host.order()} exceeds brute-force guard (15)")
    _check_query(query)
    check_threshold(d)
    qnodes = sorted(query.nodes)
    k = len(qnodes)
    # Edge constraints first: a missing interaction rejects most injections
    # after a single lookup.
    checks: list[tuple[int, int, int]] = []
    for i, p in enumerate(qnodes):
        for j, q in enumerate(qnodes):
            if i != j and (p, q) in query.edges:
                checks.append((i, j, 1))
    for i, p in enumerate(qnodes):
        for j, q in enumerate(qnodes):
            if i != j and (p, q) not in query.edges:
                checks.append((i, j, 0))
    pc = host.pair_count
    result = []
    for perm in permutations(host.nodes, k):
        ok = True
        for i, j, want in checks:
            if pc.get((perm[i], perm[j]), 0) != want:
                ok = False
                break
        if not ok:
            continue
        mapping = {qnodes[i]: perm[i] for i in range(k)}
        induced = _induced_set(host, query, mapping)
        if embedding_time_respecting(induced, d):
            result.append(Embedding(mapping, induced))
    return result


# ----------------------------------------------------------------------
# dispatch and serialization


def run_strategy(
    host: TemporalGraph,
    query: QueryGraph,
    strategy: Strategy,
    d: Threshold | None = None,
    max_sets: int = DEFAULT_MAX_SETS,
    deadline: float | None = None,
) -> tuple[list[Embedding], SearchStats]:
    if strategy is Strategy.STATIC:
        return match_static(host, query, deadline=deadline)
    if d is None:
        raise ValueError(f"strategy {strategy.value} requires a threshold")
    if strategy is Strategy.TOPOLOGY_BEFORE_TIME:
        return match_topology_then_time(host, query, d, deadline=deadline)
    if strategy is Strategy.TIME_AND_TOPOLOGY:
        return match_time_and_topology(host, query, d, deadline=deadline)
    if strategy is Strategy.TIME_BEFORE_TOPOLOGY:
        return match_time_then_topology(
            host, query, d, max_sets=max_sets, deadline=deadline
        )
    raise ValueError(f"unknown strategy: {strategy!r}")


def embedding_json(
    embedding: Embedding, host: TemporalGraph, query: QueryGraph, query_id: str
) -> str:
    """One JSON object per embedding: query id, label mapping, interactions.

    Field order is fixed; mapping keys sort by query label and
    interactions by (time, source label, target label).
    """
    mapping = {
        query.label(q): host.label(h)
        for q, h in sorted(embedding.mapping.items(), key=lambda it: query.label(it[0]))
    }
    triples = sorted(
        [
            [host.label(e.source), host.label(e.target), e.time]
            for e in embedding.induced
        ],
        key=lambda t: (t[2], t[0], t[1]),
    )
    return json.dumps(
        {"query": query_id, "mapping": mapping, "interactions": triples}
    )
