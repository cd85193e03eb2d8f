"""Max-flow / min-cut over directed networks with finite and infinite
capacities, returning the value together with a witnessing cut.

Infinity is ``math.inf``.  Parallel edges are kept apart: every edge has an
index (its insertion position) and cuts are reported as index tuples.
Capacities are Python integers, so sums cannot overflow.

The algorithm is a level-graph blocking-flow search.  Before it runs, a
reachability pass restricted to infinite edges decides whether any finite
cut exists at all.  The returned cut is the set of saturated edges leaving
the residual-reachable side, which is deterministic because adjacency
lists follow insertion order.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Union

from .errors import InputError

INF = math.inf

Capacity = Union[int, float]


class Edge(NamedTuple):
    tail: str
    head: str
    capacity: Capacity


@dataclass(frozen=True)
class CutResult:
    value: Capacity
    edge_indices: tuple[int, ...]


class FlowNetwork:
    def __init__(self, source, target):
        if source == target:
            raise InputError("source and target must differ")
        self.source = source
        self.target = target
        self.edges: list[Edge] = []

    def add_edge(self, tail, head, capacity: Capacity) -> int:
        if capacity != INF:
            if not isinstance(capacity, int) or capacity < 0:
                raise InputError(
                    f"capacity must be a non-negative integer or INF, got {capacity!r}"
                )
        self.edges.append(Edge(tail, head, capacity))
        return len(self.edges) - 1

    def vertices(self) -> set:
        seen = {self.source, self.target}
        for e in self.edges:
            seen.add(e.tail)
            seen.add(e.head)
        return seen

    def dump(self) -> str:
        lines = [f"source {self.source}", f"target {self.target}"]
        for e in self.edges:
            cap = "INF" if e.capacity == INF else str(e.capacity)
            lines.append(f"{e.tail} -> {e.head} [{cap}]")
        return "\n".join(lines) + "\n"


def _reaches(adjacency: dict, source, target) -> bool:
    seen = {source}
    stack = [source]
    while stack:
        v = stack.pop()
        if v == target:
            return True
        for w in adjacency.get(v, ()):
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return False


def min_cut(network: FlowNetwork) -> CutResult:
    """Minimum cut value and a witnessing set of edge indices.

    Value INF (with an empty index tuple) means the source reaches the
    target through infinite-capacity edges alone, so no finite cut exists.
    """
    infinite_adj: dict = {}
    for e in network.edges:
        if e.capacity == INF:
            infinite_adj.setdefault(e.tail, []).append(e.head)
    if _reaches(infinite_adj, network.source, network.target):
        return CutResult(INF, ())

    # residual slots in pairs: forward 2k, reverse 2k+1
    adjacency: dict = {}
    slots: list = []
    for index, e in enumerate(network.edges):
        adjacency.setdefault(e.tail, []).append(len(slots))
        slots.append([e.head, e.capacity])
        adjacency.setdefault(e.head, []).append(len(slots))
        slots.append([e.tail, 0])

    source, target = network.source, network.target
    flow = 0
    while True:
        level = {source: 0}
        queue = [source]
        for v in queue:
            for sid in adjacency.get(v, ()):
                head, cap = slots[sid]
                if cap > 0 and head not in level:
                    level[head] = level[v] + 1
                    queue.append(head)
        if target not in level:
            break

        pointer: dict = defaultdict(int)

        def push(v, available):
            if v == target:
                return available
            out = adjacency.get(v, ())
            while pointer[v] < len(out):
                sid = out[pointer[v]]
                head, cap = slots[sid]
                if cap > 0 and level.get(head) == level[v] + 1:
                    sent = push(head, min(available, cap))
                    if sent:
                        slots[sid][1] -= sent
                        slots[sid ^ 1][1] += sent
                        return sent
                pointer[v] += 1
            return 0

        while True:
            sent = push(source, INF)
            if not sent:
                break
            flow += sent

    reachable = {source}
    stack = [source]
    while stack:
        v = stack.pop()
        for sid in adjacency.get(v, ()):
            head, cap = slots[sid]
            if cap > 0 and head not in reachable:
                reachable.add(head)
                stack.append(head)
    cut = tuple(
        index
        for index, e in enumerate(network.edges)
        if e.tail in reachable and e.head not in reachable
    )
    return CutResult(flow, cut)


def check_cut(network: FlowNetwork, edge_indices: Iterable[int]) -> bool:
    """Whether removing the given edges leaves no source-target path."""
    removed = frozenset(edge_indices)
    adjacency: dict = {}
    for index, e in enumerate(network.edges):
        if index not in removed:
            adjacency.setdefault(e.tail, []).append(e.head)
    return not _reaches(adjacency, network.source, network.target)
