"""Structural invariant checkers shared by the block tests and the acceptance suite."""
from __future__ import annotations

from itertools import product

from semirandom.blocks import centre_components, check_balanced_colouring, leaf_blocks


def konig_bound(d) -> bool:
    bl = d.blocks
    return all(len(bl[i] & bl[j]) <= 1 for i in range(len(bl)) for j in range(i + 1, len(bl)))


def edges_in_exactly_one_block(g, d) -> bool:
    for u in range(1, g.n + 1):
        for v in g.adj[u]:
            if u < v:
                owners = [b for b in d.blocks if u in b and v in b]
                if len(owners) != 1 or d.blocks[d.block_of_edge(u, v)] != owners[0]:
                    return False
    return len(d.edge_block) == sum(len(g.adj[v]) for v in range(1, g.n + 1)) // 2


def subtree_property(t) -> bool:
    d = t.decomposition
    for v in range(1, d.n + 1):
        ids = set(d.vertex_blocks[v])
        start = next(iter(ids))
        seen = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for y in t.adj[x]:
                if y in ids and y not in seen:
                    seen.add(y)
                    stack.append(y)
        if seen != ids:
            return False
    return True


def is_spanning_tree(t) -> bool:
    k = len(t)
    if len(t.edges()) != k - 1:
        return False
    seen = {0}
    stack = [0]
    while stack:
        x = stack.pop()
        for y in t.adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    bl = t.blocks
    return len(seen) == k and all(bl[a] & bl[b] for a, b in t.edges())


def leaves_are_big(t) -> bool:
    return all(len(t.blocks[b]) >= 3 for b in leaf_blocks(t))


def k2_blocks_have_two_sides(t) -> bool:
    """Every bridge block {u, v} has tree neighbours through u and through v."""
    bl = t.blocks
    for b, blk in enumerate(bl):
        if len(blk) == 2:
            u, v = sorted(blk)
            nu = [x for x in t.adj[b] if u in bl[x]]
            nv = [x for x in t.adj[b] if v in bl[x]]
            if not nu or not nv:
                return False
    return True


def colouring_exists(t, n) -> bool:
    """Brute force over every centre and every monochromatic-component colouring."""
    for c in range(len(t)):
        sizes = [len(comp.vertices) for comp in centre_components(t, c)]
        for bits in product((0, 1), repeat=len(sizes)):
            red = sum(s for s, b in zip(sizes, bits) if b)
            blue = sum(s for s, b in zip(sizes, bits) if not b)
            if blue <= red <= 3 * blue:
                return True
    return False


__all__ = ["check_balanced_colouring", "colouring_exists", "edges_in_exactly_one_block",
           "is_spanning_tree", "k2_blocks_have_two_sides", "konig_bound", "leaves_are_big",
           "subtree_property"]
