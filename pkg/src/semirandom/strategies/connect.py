"""Connecting the graph by always growing a smallest component."""
from __future__ import annotations

import heapq
from typing import Iterable, Optional

from ..oracles import Connected
from ..process import PhasedTrace, ProcessVariant, RunConfig, Strategy, run_until


class ComponentTracker:
    """Union-find over a vertex universe with access to a smallest component.

    Members are kept per root and merged small-into-large.  A lazy heap of
    ``(size, smallest vertex, root)`` entries yields the smallest component,
    ties going to the one containing the smallest vertex.  Only edges with
    both ends in the universe are counted.
    """

    def __init__(self, graph, universe: Optional[Iterable[int]] = None):
        n = graph.n
        members = sorted(set(universe)) if universe is not None else list(range(1, n + 1))
        self.inside = bytearray(n + 1)
        for v in members:
            self.inside[v] = 1
        self.parent = list(range(n + 1))
        self.size = [1] * (n + 1)
        self.minv = list(range(n + 1))
        self.members: list = [None] * (n + 1)
        for v in members:
            self.members[v] = [v]
        self.count = len(members)
        self.heap = [(1, v, v) for v in members]  # sorted, hence a valid heap
        inside = self.inside
        adj = graph.adj
        for u in members:
            for w in adj[u]:
                if u < w and inside[w]:
                    self.union(u, w)

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        self.members[ra].extend(self.members[rb])
        self.members[rb] = None
        if self.minv[rb] < self.minv[ra]:
            self.minv[ra] = self.minv[rb]
        self.count -= 1
        heapq.heappush(self.heap, (self.size[ra], self.minv[ra], ra))
        return True

    def smallest(self) -> int:
        """Root of a smallest component."""
        heap = self.heap
        while True:
            s, mv, r = heap[0]
            if self.parent[r] == r and self.size[r] == s:
                return r
            heapq.heappop(heap)

    def component_sizes(self) -> list[int]:
        return sorted(self.size[r] for r in range(len(self.parent))
                      if self.inside[r] and self.parent[r] == r)


def phase_index(universe_size: int, comps: int) -> int:
    """Smallest i >= 1 with universe_size / 2**i < comps."""
    return max(1, (universe_size // comps).bit_length())


class ConnectSmallestComponent(Strategy):
    """Pre-positional: circle uniform in a smallest component.

    The round is used iff the square lands in another component (inside the
    universe, when one is given).  Its phase label tracks how many halvings
    of the component count have happened so far.
    """

    variant = ProcessVariant.PRE

    def __init__(self, universe: Optional[Iterable[int]] = None, label: Optional[str] = None):
        self.universe = universe
        self.label = label
        self.phase = label or "connect_1"

    def start(self, graph, rng) -> None:
        self.rng = rng
        self.tracker = ComponentTracker(graph, self.universe)
        self.size = sum(self.tracker.inside)

    def choose(self, graph):
        tr = self.tracker
        root = tr.smallest()
        comp = tr.members[root]
        v = comp[self.rng.below(len(comp))]
        if self.label is None:
            self.phase = f"connect_{phase_index(self.size, tr.count)}"
        inside, find = tr.inside, tr.find

        def accept(square):
            return bool(inside[square]) and find(square) != root

        return v, accept

    def observe(self, square, circle, used) -> None:
        tr = self.tracker
        if square != circle and tr.inside[square] and tr.inside[circle]:
            tr.union(square, circle)

    def finished(self, graph) -> bool:
        return self.tracker.count <= 1


def strat_connect_smallest_component(universe=None, label=None) -> ConnectSmallestComponent:
    return ConnectSmallestComponent(universe, label)


def run_connect(config: RunConfig) -> PhasedTrace:
    """Connect the graph from G_0 with the smallest-component strategy."""
    trace = run_until(config, ConnectSmallestComponent(), Connected())
    return PhasedTrace(trace, {})
