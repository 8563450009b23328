"""Blocks, the block graph, block-cut tree, reduced block tree and colourings.

A block is a maximal vertex set inducing a 2-connected subgraph, a bridge
or an isolated vertex.  Two blocks share at most one vertex and that vertex
is a cut vertex.  Block ids are assigned in ascending order of the sorted
vertex tuple, so block 0 always holds vertex 1.
"""
from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from typing import Optional

from .errors import InvalidArgumentError, NotConnectedError, PreconditionError


@dataclass(frozen=True, eq=False)
class BlockDecomposition:
    n: int
    blocks: tuple  # of frozenset
    edge_block: dict  # (u, v) with u < v -> block id
    cut_vertices: frozenset
    vertex_blocks: tuple  # vertex -> sorted tuple of block ids (slot 0 empty)
    n_components: int

    def block_of_edge(self, u: int, v: int) -> int:
        return self.edge_block[(u, v) if u < v else (v, u)]

    def shared_vertex(self, a: int, b: int) -> Optional[int]:
        common = self.blocks[a] & self.blocks[b]
        return next(iter(common)) if common else None


def block_decomposition(g) -> BlockDecomposition:
    """Biconnected components via an iterative DFS with an edge stack."""
    n = g.n
    adj = g.adj
    disc = [0] * (n + 1)
    low = [0] * (n + 1)
    clock = 1
    raw_blocks: list[set] = []
    raw_edges: list[list] = []
    comps = 0
    for r in range(1, n + 1):
        if disc[r]:
            continue
        comps += 1
        disc[r] = low[r] = clock
        clock += 1
        if not adj[r]:
            raw_blocks.append({r})
            raw_edges.append([])
            continue
        stack = [(r, 0, iter(adj[r]))]
        estack: list[tuple[int, int]] = []
        while stack:
            v, parent, it = stack[-1]
            descended = False
            for w in it:
                if not disc[w]:
                    disc[w] = low[w] = clock
                    clock += 1
                    estack.append((v, w))
                    stack.append((w, v, iter(adj[w])))
                    descended = True
                    break
                if w != parent and disc[w] < disc[v]:
                    estack.append((v, w))
                    if disc[w] < low[v]:
                        low[v] = disc[w]
            if descended:
                continue
            stack.pop()
            if not stack:
                break
            u = stack[-1][0]
            if low[v] < low[u]:
                low[u] = low[v]
            if low[v] >= disc[u]:
                verts: set[int] = set()
                edges = []
                while True:
                    a, b = estack.pop()
                    verts.add(a)
                    verts.add(b)
                    edges.append((a, b) if a < b else (b, a))
                    if a == u and b == v:
                        break
                raw_blocks.append(verts)
                raw_edges.append(edges)
    order = sorted(range(len(raw_blocks)), key=lambda i: tuple(sorted(raw_blocks[i])))
    blocks = tuple(frozenset(raw_blocks[i]) for i in order)
    edge_block = {}
    for new, old in enumerate(order):
        for e in raw_edges[old]:
            edge_block[e] = new
    vb: list[list[int]] = [[] for _ in range(n + 1)]
    for bid, b in enumerate(blocks):
        for v in b:
            vb[v].append(bid)
    cuts = frozenset(v for v in range(1, n + 1) if len(vb[v]) >= 2)
    return BlockDecomposition(n, blocks, edge_block, cuts, tuple(tuple(x) for x in vb), comps)


@dataclass(frozen=True, eq=False)
class BlockGraph:
    """Intersection graph of the blocks; neighbour lists are built lazily."""

    decomposition: BlockDecomposition

    @property
    def nodes(self) -> range:
        return range(len(self.decomposition.blocks))

    def neighbours(self, b: int) -> list[int]:
        d = self.decomposition
        out = set()
        for v in d.blocks[b]:
            if len(d.vertex_blocks[v]) > 1:
                out.update(d.vertex_blocks[v])
        out.discard(b)
        return sorted(out)

    def edges(self) -> set:
        d = self.decomposition
        es = set()
        for v in d.cut_vertices:
            ids = d.vertex_blocks[v]
            for i in range(len(ids)):
                for j in range(i + 1, len(ids)):
                    es.add((ids[i], ids[j]))
        return es


def block_graph(d: BlockDecomposition) -> BlockGraph:
    return BlockGraph(d)


@dataclass(frozen=True, eq=False)
class BlockCutTree:
    """Bipartite tree: nodes ``("B", id)`` for blocks and ``("v", x)`` for cut vertices."""

    nodes: tuple
    edges: tuple


def block_cut_tree(d: BlockDecomposition) -> BlockCutTree:
    if d.n_components != 1:
        raise NotConnectedError("block-cut tree needs a connected graph")
    nodes = [("B", i) for i in range(len(d.blocks))] + [("v", v) for v in sorted(d.cut_vertices)]
    edges = [(("B", b), ("v", v)) for v in sorted(d.cut_vertices) for b in d.vertex_blocks[v]]
    return BlockCutTree(tuple(nodes), tuple(edges))


@dataclass(eq=False)
class ReducedBlockTree:
    """Spanning tree of the block graph, from BFS at block 0."""

    decomposition: BlockDecomposition
    adj: list  # block id -> sorted list of tree neighbours
    root: int = 0
    _rooted: dict = field(default_factory=dict, repr=False)

    @property
    def blocks(self) -> tuple:
        return self.decomposition.blocks

    def __len__(self) -> int:
        return len(self.adj)

    def edges(self) -> list[tuple[int, int]]:
        return [(a, b) for a in range(len(self.adj)) for b in self.adj[a] if a < b]

    def rooted_at(self, c: int) -> tuple[list[int], list[int]]:
        """``(parent, bfs order)`` with the tree hung from block ``c``."""
        if c not in self._rooted:
            parent = [-1] * len(self.adj)
            parent[c] = c
            order = [c]
            for x in order:
                for y in self.adj[x]:
                    if parent[y] == -1:
                        parent[y] = x
                        order.append(y)
            self._rooted[c] = (parent, order)
        return self._rooted[c]


def reduced_block_tree(bg) -> ReducedBlockTree:
    d = bg.decomposition if isinstance(bg, BlockGraph) else bg
    if d.n_components != 1:
        raise NotConnectedError("block graph is disconnected")
    k = len(d.blocks)
    tadj: list[list[int]] = [[] for _ in range(k)]
    seen = bytearray(k)
    seen[0] = 1
    q = deque([0])
    blocks, vb = d.blocks, d.vertex_blocks
    while q:
        x = q.popleft()
        nbrs = set()
        for v in blocks[x]:
            ids = vb[v]
            if len(ids) > 1:
                nbrs.update(i for i in ids if not seen[i])
        # block ids already follow smallest-vertex order
        for y in sorted(nbrs):
            seen[y] = 1
            tadj[x].append(y)
            tadj[y].append(x)
            q.append(y)
    for lst in tadj:
        lst.sort()
    return ReducedBlockTree(d, tadj)


def leaf_blocks(t: ReducedBlockTree) -> list[int]:
    """Blocks of degree <= 1 in the tree, in id (smallest vertex) order."""
    if len(t) == 1:
        return [0]
    return [b for b in range(len(t)) if len(t.adj[b]) == 1]


# -- components of T - B* -----------------------------------------------------

@dataclass(frozen=True)
class CentreComponent:
    """One component of the tree with the centre block removed."""

    attach_block: int  # the component's block adjacent to the centre
    attach_vertex: int  # its shared vertex with the centre
    blocks: tuple
    vertices: frozenset  # union of the blocks minus the centre block


def centre_components(t: ReducedBlockTree, c: int) -> list[CentreComponent]:
    blocks = t.blocks
    centre = blocks[c]
    out = []
    for nb in t.adj[c]:
        seen = {c, nb}
        comp = [nb]
        for x in comp:
            for y in t.adj[x]:
                if y not in seen:
                    seen.add(y)
                    comp.append(y)
        verts = set()
        for b in comp:
            verts |= blocks[b]
        verts -= centre
        (v,) = blocks[nb] & centre
        out.append(CentreComponent(nb, v, tuple(sorted(comp)), frozenset(verts)))
    return out


class Colour(str, enum.Enum):
    RED = "red"
    BLUE = "blue"


@dataclass(frozen=True, eq=False)
class BalancedColouring:
    centre: int
    colour: dict  # block id -> Colour, for every block except the centre
    S_red: frozenset
    S_blue: frozenset


def _top_counts(t: ReducedBlockTree, n: int):
    """Subtree vertex counts with each vertex charged to its shallowest block."""
    parent, order = t.rooted_at(t.root)
    depth = [0] * len(t)
    for b in order[1:]:
        depth[b] = depth[parent[b]] + 1
    d = t.decomposition
    cnt = [0] * len(t)
    for v in range(1, n + 1):
        ids = d.vertex_blocks[v]
        cnt[min(ids, key=lambda b: depth[b])] += 1
    sub = list(cnt)
    for b in reversed(order[1:]):
        sub[parent[b]] += sub[b]
    return parent, sub


def weighted_centre(t: ReducedBlockTree, n: int) -> int:
    """Block minimising the largest vertex count of a component of T - B."""
    parent, sub = _top_counts(t, n)
    best, arg = None, 0
    for c in range(len(t)):
        worst = 0
        for y in t.adj[c]:
            size = sub[y] if parent[y] == c else n - sub[c] - 1
            # the up-component loses the one vertex it shares with c
            if size > worst:
                worst = size
        if best is None or worst < best:
            best, arg = worst, c
    return arg


def _greedy_split(comps: list[CentreComponent]):
    order = sorted(range(len(comps)), key=lambda i: (-len(comps[i].vertices), comps[i].blocks[0]))
    sides = ([], [])
    weight = [0, 0]
    for i in order:
        side = 0 if weight[0] <= weight[1] else 1
        sides[side].append(i)
        weight[side] += len(comps[i].vertices)
    return sides, weight


def balance_colouring(t: ReducedBlockTree, n: Optional[int] = None,
                      start: Optional[int] = None) -> BalancedColouring:
    """Centre block plus a red/blue colouring of T - B* with the weights within a factor 3.

    The components around the centre are packed greedily, largest first,
    into the lighter class.  That can only break the factor 3 when a single
    component carries more than three quarters of the weight; the centre
    then moves one step into that component and the packing is redone.
    From the weighted centre no move is ever needed; ``start`` lets the
    search begin elsewhere.
    """
    d = t.decomposition
    n = d.n if n is None else n
    if d.n_components != 1:
        raise NotConnectedError("balanced colouring needs a connected graph")
    if any(4 * len(b) >= n for b in d.blocks):
        raise PreconditionError("some block has at least n/4 vertices")
    c = weighted_centre(t, n) if start is None else start
    for _ in range(len(t) + 1):
        comps = centre_components(t, c)
        (a, b), (wa, wb) = _greedy_split(comps)
        red, blue = (a, b) if wa >= wb else (b, a)
        w_red, w_blue = max(wa, wb), min(wa, wb)
        if w_red <= 3 * w_blue:
            colour = {}
            s_red, s_blue = set(), set()
            for i in red:
                for blk in comps[i].blocks:
                    colour[blk] = Colour.RED
                s_red |= comps[i].vertices
            for i in blue:
                for blk in comps[i].blocks:
                    colour[blk] = Colour.BLUE
                s_blue |= comps[i].vertices
            return BalancedColouring(c, colour, frozenset(s_red), frozenset(s_blue))
        heavy = max(comps, key=lambda x: len(x.vertices))
        c = heavy.attach_block
    raise RuntimeError("balanced colouring did not settle")  # unreachable by the exchange bound


def check_balanced_colouring(t: ReducedBlockTree, col: BalancedColouring, n: Optional[int] = None) -> bool:
    d = t.decomposition
    n = d.n if n is None else n
    centre = d.blocks[col.centre]
    if set(col.colour) != set(range(len(t))) - {col.centre}:
        return False
    for comp in centre_components(t, col.centre):
        if len({col.colour[b] for b in comp.blocks}) != 1:
            return False
    if not len(col.S_blue) <= len(col.S_red) <= 3 * len(col.S_blue):
        return False
    parts = (centre, col.S_red, col.S_blue)
    if sum(len(p) for p in parts) != n or set().union(*parts) != set(range(1, n + 1)):
        return False
    return True


# -- branches -----------------------------------------------------------------

class SizeClass(str, enum.Enum):
    SMALL = "small"
    BIG = "big"


@dataclass(frozen=True)
class BranchInfo:
    root_vertex: int
    blocks: tuple
    vertex_set: frozenset
    size_class: SizeClass


def _make_branch(v: int, comps: list[CentreComponent], n: int) -> BranchInfo:
    blocks = tuple(sorted(b for comp in comps for b in comp.blocks))
    verts = frozenset().union(*(comp.vertices for comp in comps)) if comps else frozenset()
    size = SizeClass.SMALL if 8 * len(verts) <= n else SizeClass.BIG
    return BranchInfo(v, blocks, verts, size)


def branch_rooted_at(t: ReducedBlockTree, centre: int, v: int, n: Optional[int] = None) -> BranchInfo:
    d = t.decomposition
    n = d.n if n is None else n
    if v not in d.blocks[centre]:
        raise InvalidArgumentError(f"vertex {v} is not in the centre block")
    comps = [c for c in centre_components(t, centre) if c.attach_vertex == v]
    return _make_branch(v, comps, n)


def branches_of(t: ReducedBlockTree, centre: int, n: Optional[int] = None) -> dict[int, BranchInfo]:
    """Every nonempty branch at ``centre``, keyed by its root vertex."""
    d = t.decomposition
    n = d.n if n is None else n
    grouped: dict[int, list[CentreComponent]] = {}
    for comp in centre_components(t, centre):
        grouped.setdefault(comp.attach_vertex, []).append(comp)
    return {v: _make_branch(v, grouped[v], n) for v in sorted(grouped)}
