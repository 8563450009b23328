"""Exact property checks, independent of any strategy.

Everything here takes an object with ``n`` and ``adj`` (either graph type
from :mod:`semirandom.graph`) and looks only at the simple graph.  The
2-connectivity test deliberately avoids the DFS low-point code used by
:mod:`semirandom.blocks`, so the two can cross-check each other.
"""
from __future__ import annotations

from collections import deque
from itertools import combinations
from typing import Iterable, Optional

from .errors import InvalidArgumentError, PatternTooLargeError
from .graph import is_connected

MAX_PATTERN_VERTICES = 12


def has_min_degree(g, k: int) -> bool:
    adj = g.adj
    return all(len(adj[v]) >= k for v in range(1, g.n + 1))


# -- vertex connectivity ------------------------------------------------------

class _SplitNetwork:
    """Unit-capacity network with every vertex split into in/out halves.

    Node ``2v`` is v_in and ``2v+1`` is v_out.  Arc ``i`` and ``i ^ 1`` are
    mutual reverses.
    """

    def __init__(self, g):
        n = g.n
        self.n = n
        head: list[list[int]] = [[] for _ in range(2 * n + 2)]
        to: list[int] = []
        cap: list[int] = []

        def arc(a, b, c):
            head[a].append(len(to))
            to.append(b)
            cap.append(c)
            head[b].append(len(to))
            to.append(a)
            cap.append(0)

        self.inner = [0] * (n + 1)
        for v in range(1, n + 1):
            self.inner[v] = len(to)
            arc(2 * v, 2 * v + 1, 1)
        for u in range(1, n + 1):
            for w in g.adj[u]:
                arc(2 * u + 1, 2 * w, 1)
        self.head = head
        self.to = to
        self.cap0 = cap

    def local_connectivity(self, s: int, t: int, cutoff: Optional[int] = None) -> int:
        """Max number of internally disjoint s-t paths (s, t non-adjacent)."""
        cap = list(self.cap0)
        big = self.n
        cap[self.inner[s]] = big
        cap[self.inner[t]] = big
        head, to = self.head, self.to
        src, dst = 2 * s, 2 * t + 1
        flow = 0
        size = 2 * self.n + 2
        while cutoff is None or flow < cutoff:
            prev = [-1] * size
            prev[src] = -2
            q = deque([src])
            found = False
            while q and not found:
                x = q.popleft()
                for a in head[x]:
                    if cap[a] and prev[to[a]] == -1:
                        y = to[a]
                        prev[y] = a
                        if y == dst:
                            found = True
                            break
                        q.append(y)
            if not found:
                break
            y = dst
            while y != src:
                a = prev[y]
                cap[a] -= 1
                cap[a ^ 1] += 1
                y = to[a ^ 1]
            flow += 1
        return flow


def vertex_connectivity(g, cutoff: Optional[int] = None) -> int:
    """Exact vertex connectivity.

    Uses the fixed-source sweep: with ``x`` of minimum degree, every minimum
    separator either misses ``x`` (so it separates ``x`` from a non-neighbour)
    or contains it, in which case it separates two neighbours of ``x``.
    With ``cutoff`` the sweep stops as soon as the answer to
    "is connectivity >= cutoff" is settled; the result is then exact only
    in that comparison.
    """
    n = g.n
    adj = g.adj
    if n <= 1 or not is_connected(g):
        return 0
    degs = [len(adj[v]) for v in range(1, n + 1)]
    best = min(degs)
    if best == n - 1:
        return n - 1
    if cutoff is not None and best < cutoff:
        return best
    x = 1 + degs.index(best)
    net = _SplitNetwork(g)

    def bound():
        return best if cutoff is None else min(best, cutoff)

    for y in range(1, n + 1):
        if y != x and y not in adj[x]:
            best = min(best, net.local_connectivity(x, y, bound()))
            if cutoff is not None and best < cutoff:
                return best
    nbrs = sorted(adj[x])
    for a, b in combinations(nbrs, 2):
        if b not in adj[a]:
            best = min(best, net.local_connectivity(a, b, bound()))
            if cutoff is not None and best < cutoff:
                return best
    return best


def _biconnected_by_chains(g) -> bool:
    """2-connectivity through a chain decomposition.

    A connected graph with minimum degree >= 2 is 2-connected iff its chain
    decomposition covers every edge and the first chain is its only cycle.
    """
    n = g.n
    adj = g.adj
    if n < 3 or not is_connected(g):
        return False
    if any(len(adj[v]) < 2 for v in range(1, n + 1)):
        return False
    # iterative DFS: discovery order, tree parent
    order = []
    index = [0] * (n + 1)
    parent = [0] * (n + 1)
    index[1] = 1
    order.append(1)
    stack = [(1, iter(adj[1]))]
    while stack:
        v, it = stack[-1]
        for w in it:
            if not index[w]:
                index[w] = len(order) + 1
                order.append(w)
                parent[w] = v
                stack.append((w, iter(adj[w])))
                break
        else:
            stack.pop()
    visited = bytearray(n + 1)
    covered = 0
    chains = 0
    m = sum(len(adj[v]) for v in range(1, n + 1)) // 2
    for v in order:
        iv = index[v]
        for w in adj[v]:
            # non-tree edge from v down to a descendant w starts a chain
            if index[w] > iv and parent[w] != v:
                chains += 1
                visited[v] = 1
                covered += 1
                x = w
                while not visited[x]:
                    visited[x] = 1
                    covered += 1
                    x = parent[x]
                if x == v and chains > 1:
                    return False
    return covered == m


def is_k_connected(g, k: int) -> bool:
    if k < 1:
        raise InvalidArgumentError(f"k must be >= 1, got {k}")
    if g.n <= k:
        return False
    if k == 1:
        return is_connected(g)
    if k == 2:
        return _biconnected_by_chains(g)
    return vertex_connectivity(g, cutoff=k) >= k


# -- small structural checks --------------------------------------------------

def is_acyclic(g) -> bool:
    parent = list(range(g.n + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    adj = g.adj
    for u in range(1, g.n + 1):
        for v in adj[u]:
            if u < v:
                a, b = find(u), find(v)
                if a == b:
                    return False
                parent[a] = b
    return True


def is_induced_cycle_on(g, vertices: Iterable[int]) -> bool:
    S = set(vertices)
    if len(S) < 3:
        raise InvalidArgumentError("an induced cycle needs at least 3 vertices")
    adj = g.adj
    for v in S:
        if sum(1 for w in adj[v] if w in S) != 2:
            return False
    start = next(iter(S))
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y in S and y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == len(S)


def crossing_edges(g, A: Iterable[int], B: Iterable[int]) -> int:
    A, B = set(A), set(B)
    if A & B:
        raise InvalidArgumentError("crossing_edges needs disjoint vertex sets")
    if len(A) > len(B):
        A, B = B, A
    adj = g.adj
    return sum(len(adj[a] & B) for a in A)


# -- subgraph containment -----------------------------------------------------

def _search_order(H) -> list[int]:
    """Vertex order where each vertex has as many earlier neighbours as possible."""
    left = set(range(1, H.n + 1))
    order: list[int] = []
    placed: set[int] = set()
    while left:
        v = max(left, key=lambda x: (len(H.adj[x] & placed), len(H.adj[x]), -x))
        order.append(v)
        placed.add(v)
        left.discard(v)
    return order


def contains_subgraph(g, H) -> Optional[dict]:
    """Find an injective map V(H) -> V(g) sending edges to edges, or None."""
    if H.n > MAX_PATTERN_VERTICES:
        raise PatternTooLargeError(f"pattern has {H.n} vertices, limit is {MAX_PATTERN_VERTICES}")
    if H.n == 0:
        return {}
    if H.n > g.n:
        return None
    order = _search_order(H)
    hadj = H.adj
    gadj = g.adj
    back = [[u for u in hadj[h] if u in set(order[:i])] for i, h in enumerate(order)]
    need = [len(hadj[h]) for h in order]
    by_degree = sorted(range(1, g.n + 1), key=lambda v: -len(gadj[v]))
    image: dict[int, int] = {}
    used: set[int] = set()

    def candidates(i):
        if not back[i]:
            return [v for v in by_degree if len(gadj[v]) >= need[i]]
        sets = sorted((gadj[image[u]] for u in back[i]), key=len)
        cand = set(sets[0])
        for s in sets[1:]:
            cand &= s
        return sorted(cand)

    def extend(i):
        if i == len(order):
            return True
        h = order[i]
        for v in candidates(i):
            if v in used or len(gadj[v]) < need[i]:
                continue
            image[h] = v
            used.add(v)
            if extend(i + 1):
                return True
            used.discard(v)
            del image[h]
        return False

    if extend(0):
        return {h: image[h] for h in sorted(image)}
    return None


def check_embedding(g, H, embedding: dict) -> bool:
    """Injective on V(H) and every H-edge lands on a g-edge."""
    if sorted(embedding) != list(range(1, H.n + 1)):
        return False
    vals = list(embedding.values())
    if len(set(vals)) != len(vals) or not all(1 <= v <= g.n for v in vals):
        return False
    return all(embedding[b] in g.adj[embedding[a]] for a, b in H.edges)


# -- brute-force references (tiny graphs only) --------------------------------

def _connected_without(g, removed: set) -> bool:
    rest = [v for v in range(1, g.n + 1) if v not in removed]
    if len(rest) <= 1:
        return True
    seen = {rest[0]}
    stack = [rest[0]]
    while stack:
        x = stack.pop()
        for y in g.adj[x]:
            if y not in removed and y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == len(rest)


def brute_force_vertex_connectivity(g) -> int:
    """Smallest vertex set whose removal disconnects g (n - 1 for complete graphs)."""
    n = g.n
    if n <= 1 or not is_connected(g):
        return 0
    vs = range(1, n + 1)
    for size in range(0, n - 1):
        for cut in combinations(vs, size):
            if not _connected_without(g, set(cut)):
                return size
    return n - 1


def brute_force_blocks(g) -> set:
    """Blocks straight from the definition, by subset enumeration (n <= 10).

    Two vertices are related when they are adjacent, or joined in g and not
    separable by deleting a single other vertex.  A block is a maximal vertex
    set whose members are pairwise related; isolated vertices are singleton
    blocks.
    """
    n = g.n
    adj = g.adj
    comp = [0] * (n + 1)
    c = 0
    for v in range(1, n + 1):
        if not comp[v]:
            c += 1
            comp[v] = c
            stack = [v]
            while stack:
                x = stack.pop()
                for y in adj[x]:
                    if not comp[y]:
                        comp[y] = c
                        stack.append(y)

    def reach(s, removed):
        seen = {s}
        stack = [s]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y != removed and y not in seen:
                    seen.add(y)
                    stack.append(y)
        return seen

    rel = [[False] * (n + 1) for _ in range(n + 1)]
    for x in range(1, n + 1):
        for y in range(x + 1, n + 1):
            if y in adj[x]:
                ok = True
            elif comp[x] != comp[y]:
                ok = False
            else:
                ok = all(y in reach(x, z) for z in range(1, n + 1) if z != x and z != y)
            rel[x][y] = rel[y][x] = ok
    cliques = []
    for mask in range(1, 1 << n):
        vs = [i + 1 for i in range(n) if mask >> i & 1]
        if all(rel[a][b] for a, b in combinations(vs, 2)):
            cliques.append(frozenset(vs))
    blocks = set()
    for s in cliques:
        if not any(s < t for t in cliques):
            blocks.add(s)
    return blocks


# -- stop predicates ----------------------------------------------------------

class MinDegreeAtLeast:
    """Stop predicate: every vertex has at least ``k`` distinct neighbours."""

    def __init__(self, k: int):
        self.k = k

    def __call__(self, g) -> bool:
        min_degree = getattr(g, "min_degree", None)
        if min_degree is not None:
            return min_degree() >= self.k
        return has_min_degree(g, self.k)


class HasEdge:
    """Stop predicate: at least one round has been played."""

    def __call__(self, g) -> bool:
        return g.rounds >= 1


class Connected:
    """Stop predicate for connectivity, updated incrementally from the edge log.

    Each call only folds in the rounds added since the previous call on the
    same graph, so polling it after every round costs near-constant time.
    """

    def __init__(self):
        self._graph = None

    def _reset(self, g):
        self._graph = g
        self._parent = list(range(g.n + 1))
        self._count = g.n
        self._seen = 0

    def _find(self, x):
        parent = self._parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def __call__(self, g) -> bool:
        if self._graph is not g or g.rounds < self._seen:
            self._reset(g)
        squares, circles = g._squares, g._circles
        for i in range(self._seen, g.rounds):
            a, b = self._find(squares[i]), self._find(circles[i])
            if a != b:
                self._parent[a] = b
                self._count -= 1
        self._seen = g.rounds
        return self._count <= 1


class Never:
    def __call__(self, g) -> bool:
        return False
