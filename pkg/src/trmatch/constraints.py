"""Time-respecting predicates over interactions.

Two adjacent interactions are time-respecting when they occur within a
threshold `d` of each other and, where they meet head-to-tail, the flow
direction agrees with time (equal timestamps allowed). A threshold is a
non-negative number of seconds; `math.inf` removes the window bound while
leaving the in-before-out precedence requirement in force.

The whole-set check is done per node (window + precedence over each
node's incident times), which is linear in the incident count and
equivalent to testing every adjacent pair.
"""

from __future__ import annotations

import math
from typing import Iterable, Sequence

from .graphs import Interaction

#: Finite seconds, or math.inf for an unbounded window.
Threshold = int | float


def check_threshold(d: Threshold) -> None:
    if isinstance(d, bool) or not isinstance(d, (int, float)):
        raise ValueError(f"threshold must be a number or math.inf, got {d!r}")
    if d != math.inf and (d < 0 or d != int(d)):
        raise ValueError(f"threshold must be a non-negative integer or inf, got {d!r}")


def pair_time_respecting(e_i: Interaction, e_j: Interaction, d: Threshold) -> bool:
    """Test one adjacent pair.

    Head-to-tail pairs must flow forward in time within d; pairs sharing
    only a source or target must lie within d of each other. A pair that
    is head-to-tail both ways (opposite directions between the same two
    nodes) must satisfy both orderings, forcing equal timestamps.

    Raises ValueError for non-adjacent pairs: the relation is undefined
    for them.
    """
    i_feeds_j = e_i.target == e_j.source
    j_feeds_i = e_j.target == e_i.source
    if i_feeds_j or j_feeds_i:
        ok = True
        if i_feeds_j:
            ok = ok and 0 <= e_j.time - e_i.time <= d
        if j_feeds_i:
            ok = ok and 0 <= e_i.time - e_j.time <= d
        return ok
    if e_i.source == e_j.source or e_i.target == e_j.target:
        return abs(e_j.time - e_i.time) <= d
    raise ValueError(f"interactions are not adjacent: {e_i} / {e_j}")


def node_window_ok(incident_times: Sequence[int], d: Threshold) -> bool:
    """All interactions incident to one node fall within a window of d."""
    if not incident_times:
        return True
    return max(incident_times) - min(incident_times) <= d


def node_precedence_ok(in_times: Sequence[int], out_times: Sequence[int]) -> bool:
    """Every incoming interaction precedes (or ties) every outgoing one."""
    if not in_times or not out_times:
        return True
    return min(out_times) >= max(in_times)


def embedding_time_respecting(sub: Iterable[Interaction], d: Threshold) -> bool:
    """Whole-set test: window and precedence hold at every touched node.

    Equivalent to `pair_time_respecting` over all adjacent pairs in `sub`,
    but linear in the number of incidences per node.
    """
    in_times: dict[int, list[int]] = {}
    out_times: dict[int, list[int]] = {}
    nodes = set()
    for e in sub:
        out_times.setdefault(e.source, []).append(e.time)
        in_times.setdefault(e.target, []).append(e.time)
        nodes.add(e.source)
        nodes.add(e.target)
    for n in nodes:
        ins = in_times.get(n, [])
        outs = out_times.get(n, [])
        if not node_window_ok(ins + outs, d):
            return False
        if not node_precedence_ok(ins, outs):
            return False
    return True
