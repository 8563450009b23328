"""Multigraph storage for semi-random processes.

Vertices are the integers ``1..n``.  Every round appends one edge record
``(round, square, circle, used)``.  Loops and repeated pairs are kept in the
record list but only distinct, non-loop neighbours enter the adjacency, so
the degree of a vertex is its number of distinct neighbours other than
itself.

Both :class:`SemiRandomGraph` and :class:`SimpleGraph` expose ``n`` and
``adj`` (a list of neighbour sets indexed by vertex, slot 0 unused), which is
all the structural algorithms in this package rely on.
"""
from __future__ import annotations

from array import array
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator, NamedTuple

from .errors import InvalidSizeError, InvalidVertexError, PatternFormatError


class EdgeRecord(NamedTuple):
    round: int
    square: int
    circle: int
    used: bool


class SemiRandomGraph:
    """Multigraph on ``[n]`` with per-edge provenance.

    Besides the adjacency sets the graph keeps vertices bucketed by degree,
    so the minimum degree and the set of minimum-degree vertices are
    available in O(1).  Degrees only ever increase, which keeps the
    bookkeeping simple.
    """

    __slots__ = ("n", "adj", "_squares", "_circles", "_used", "_deg",
                 "_buckets", "_pos", "_min")

    def __init__(self, n: int):
        if not isinstance(n, int) or n < 1:
            raise InvalidSizeError(f"graph needs n >= 1 vertices, got {n!r}")
        self.n = n
        self.adj: list[set[int]] = [set() for _ in range(n + 1)]
        self._squares = array("l")
        self._circles = array("l")
        self._used = bytearray()
        self._deg = [0] * (n + 1)
        # bucket d holds the vertices of degree d; _pos[v] is v's slot in it
        self._buckets: list[list[int]] = [list(range(1, n + 1))]
        self._pos = [0] + list(range(n))
        self._min = 0

    # -- mutation -------------------------------------------------------
    def _check(self, v: int) -> None:
        if not 1 <= v <= self.n:
            raise InvalidVertexError(f"vertex {v!r} outside [1, {self.n}]")

    def _bump(self, v: int) -> None:
        deg = self._deg
        buckets = self._buckets
        pos = self._pos
        d = deg[v]
        bucket = buckets[d]
        i = pos[v]
        last = bucket.pop()
        if last != v:
            bucket[i] = last
            pos[last] = i
        d += 1
        deg[v] = d
        if d == len(buckets):
            buckets.append([])
        nxt = buckets[d]
        pos[v] = len(nxt)
        nxt.append(v)
        if d - 1 == self._min and not bucket:
            m = self._min
            while not buckets[m]:
                m += 1
            self._min = m

    def add_semirandom_edge(self, square: int, circle: int, used: bool = True) -> "SemiRandomGraph":
        """Append the next round's edge and update adjacency.  Returns ``self``."""
        n = self.n
        if not (1 <= square <= n and 1 <= circle <= n):
            raise InvalidVertexError(
                f"edge ({square!r}, {circle!r}) has an endpoint outside [1, {n}]")
        self._squares.append(square)
        self._circles.append(circle)
        self._used.append(1 if used else 0)
        if square != circle:
            nbrs = self.adj[square]
            if circle not in nbrs:
                nbrs.add(circle)
                self.adj[circle].add(square)
                self._bump(square)
                self._bump(circle)
        return self

    # -- queries ----------------------------------------------------------
    @property
    def rounds(self) -> int:
        return len(self._used)

    def distinct_degree(self, v: int) -> int:
        self._check(v)
        return self._deg[v]

    def degree(self, v: int) -> int:
        """Unchecked variant of :meth:`distinct_degree` for hot loops."""
        return self._deg[v]

    def min_degree(self) -> int:
        return self._min

    def min_degree_vertices(self) -> list[int]:
        """The live bucket of minimum-degree vertices.  Do not mutate."""
        return self._buckets[self._min]

    def vertices_of_degree(self, d: int) -> list[int]:
        if d < len(self._buckets):
            return self._buckets[d]
        return []

    def neighbours(self, v: int) -> set[int]:
        self._check(v)
        return self.adj[v]

    def edge(self, round_index: int) -> EdgeRecord:
        i = round_index - 1
        if not 0 <= i < len(self._used):
            raise IndexError(round_index)
        return EdgeRecord(round_index, self._squares[i], self._circles[i], bool(self._used[i]))

    @property
    def edges(self) -> list[EdgeRecord]:
        return list(self.iter_edges())

    def iter_edges(self) -> Iterator[EdgeRecord]:
        for i, (s, c, u) in enumerate(zip(self._squares, self._circles, self._used)):
            yield EdgeRecord(i + 1, s, c, bool(u))

    def used_count(self) -> int:
        return sum(self._used)

    def simple_edge_count(self) -> int:
        return sum(self._deg) // 2

    def copy(self) -> "SemiRandomGraph":
        g = SemiRandomGraph.__new__(SemiRandomGraph)
        g.n = self.n
        g.adj = [set(s) for s in self.adj]
        g._squares = array("l", self._squares)
        g._circles = array("l", self._circles)
        g._used = bytearray(self._used)
        g._deg = list(self._deg)
        g._buckets = [list(b) for b in self._buckets]
        g._pos = list(self._pos)
        g._min = self._min
        return g

    @classmethod
    def from_records(cls, n: int, records: Iterable) -> "SemiRandomGraph":
        """Replay ``(square, circle, used)`` triples (or EdgeRecords) from G_0."""
        g = cls(n)
        for rec in records:
            if isinstance(rec, EdgeRecord):
                g.add_semirandom_edge(rec.square, rec.circle, rec.used)
            else:
                s, c, u = rec
                g.add_semirandom_edge(s, c, bool(u))
        return g

    def __repr__(self) -> str:
        return f"SemiRandomGraph(n={self.n}, rounds={self.rounds}, min_degree={self._min})"


def new_graph(n: int) -> SemiRandomGraph:
    return SemiRandomGraph(n)


def add_semirandom_edge(g: SemiRandomGraph, square: int, circle: int, used: bool = True) -> SemiRandomGraph:
    return g.add_semirandom_edge(square, circle, used)


def distinct_degree(g, v: int) -> int:
    if isinstance(g, SemiRandomGraph):
        return g.distinct_degree(v)
    if not 1 <= v <= g.n:
        raise InvalidVertexError(f"vertex {v!r} outside [1, {g.n}]")
    return len(g.adj[v])


@dataclass(frozen=True, eq=False)
class SimpleGraph:
    """Loopless simple graph on ``[n]``; ``adj`` is derived from ``edges``."""

    n: int
    edges: frozenset
    adj: list

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "SimpleGraph":
        if n < 0:
            raise InvalidSizeError(f"negative vertex count {n}")
        adj: list[set[int]] = [set() for _ in range(n + 1)]
        pairs = set()
        for u, v in edges:
            if not (1 <= u <= n and 1 <= v <= n):
                raise InvalidVertexError(f"edge ({u}, {v}) outside [1, {n}]")
            if u == v:
                continue
            a, b = (u, v) if u < v else (v, u)
            pairs.add((a, b))
            adj[a].add(b)
            adj[b].add(a)
        return cls(n, frozenset(pairs), adj)

    @classmethod
    def from_adjacency(cls, n: int, adj: list) -> "SimpleGraph":
        pairs = frozenset((u, v) for u in range(1, n + 1) for v in adj[u] if u < v)
        return cls(n, pairs, [set(s) for s in adj])

    def __eq__(self, other) -> bool:
        if not isinstance(other, SimpleGraph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    @property
    def m(self) -> int:
        return len(self.edges)

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def with_edge(self, u: int, v: int) -> "SimpleGraph":
        return SimpleGraph.from_edges(self.n, list(self.edges) + [(u, v)])

    def induced(self, vertices: Iterable[int]) -> "SimpleGraph":
        """Induced subgraph relabelled to ``1..k`` in ascending vertex order."""
        vs = sorted(set(vertices))
        index = {v: i + 1 for i, v in enumerate(vs)}
        return SimpleGraph.from_edges(
            len(vs), [(index[u], index[v]) for u, v in self.edges if u in index and v in index])

    def to_text(self) -> str:
        lines = [f"p {self.n} {self.m}"]
        lines += [f"{u} {v}" for u, v in self.sorted_edges()]
        return "\n".join(lines) + "\n"

    def __repr__(self) -> str:
        return f"SimpleGraph(n={self.n}, m={self.m})"


def simple_view(g) -> SimpleGraph:
    """Drop loops and parallel edges."""
    return SimpleGraph.from_adjacency(g.n, g.adj)


def components(g) -> list[list[int]]:
    """Connected components, each sorted, ordered by smallest vertex."""
    n = g.n
    adj = g.adj
    seen = bytearray(n + 1)
    comps = []
    for s in range(1, n + 1):
        if seen[s]:
            continue
        seen[s] = 1
        comp = [s]
        stack = [s]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if not seen[y]:
                    seen[y] = 1
                    comp.append(y)
                    stack.append(y)
        comp.sort()
        comps.append(comp)
    return comps


def is_connected(g) -> bool:
    n = g.n
    if n <= 1:
        return True
    adj = g.adj
    seen = bytearray(n + 1)
    seen[1] = 1
    stack = [1]
    count = 1
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if not seen[y]:
                seen[y] = 1
                count += 1
                stack.append(y)
    return count == n


# -- pattern file format ---------------------------------------------------

def parse_simple_graph(text: str) -> SimpleGraph:
    """Parse ``p <n> <m>`` followed by ``m`` lines ``<u> <v>`` (1-indexed).

    Blank lines and lines starting with ``#`` are ignored.
    """
    header = None
    pairs = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if header is None:
            if len(parts) != 3 or parts[0] != "p":
                raise PatternFormatError(f"line {lineno}: expected 'p <n> <m>', got {raw!r}")
            try:
                header = (int(parts[1]), int(parts[2]))
            except ValueError:
                raise PatternFormatError(f"line {lineno}: non-integer header {raw!r}") from None
            if header[0] < 1 or header[1] < 0:
                raise PatternFormatError(f"line {lineno}: invalid sizes {raw!r}")
            continue
        if len(parts) != 2:
            raise PatternFormatError(f"line {lineno}: expected '<u> <v>', got {raw!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise PatternFormatError(f"line {lineno}: non-integer endpoint in {raw!r}") from None
        n = header[0]
        if not (1 <= u <= n and 1 <= v <= n):
            raise PatternFormatError(f"line {lineno}: endpoint outside [1, {n}]")
        if u == v:
            raise PatternFormatError(f"line {lineno}: loop {u}-{v} in pattern graph")
        pairs.append((u, v))
    if header is None:
        raise PatternFormatError("missing 'p <n> <m>' header")
    if len(pairs) != header[1]:
        raise PatternFormatError(f"header announces {header[1]} edges, found {len(pairs)}")
    g = SimpleGraph.from_edges(header[0], pairs)
    if g.m != len(pairs):
        raise PatternFormatError("duplicate edge in pattern graph")
    return g


def read_simple_graph(path) -> SimpleGraph:
    return parse_simple_graph(Path(path).read_text())
