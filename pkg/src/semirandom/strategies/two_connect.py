"""Three-phase pre-positional strategy for 2-connectivity.

1. min-degree process until minimum degree 2;
2. smallest-component strategy until connected;
3. repair of the block structure with o(n) targeted edges.

In phase 3 every sub-stage is a loop "fix a circle, repeat until the square
lands in a target set"; rounds that miss are recorded as failures.  The
block decomposition is recomputed between sub-stages.
"""
from __future__ import annotations

from ..blocks import (Colour, SizeClass, balance_colouring, block_decomposition,
                      branches_of, leaf_blocks, reduced_block_tree)
from ..errors import InvalidArgumentError, VariantError
from ..process import (BudgetExhausted, PhasedTrace, Process, ProcessVariant,
                       RunConfig, StopReason)
from .connect import ConnectSmallestComponent
from .mindegree import MinDegreePre

PHASES = ("phase1_2min", "phase2_connect", "phase3_2connect")
MAX_REPAIR_PASSES = 3


def _member(s):
    return s.__contains__


def _member_except(s, x):
    return lambda u: u != x and u in s


def _outside(s):
    return lambda u: u not in s


def _only_vertex(a: frozenset, b: frozenset) -> int:
    (v,) = a & b
    return v


def _drive(p: Process, strategy) -> None:
    """Play a pre-positional strategy round by round until it declares completion."""
    g = p.graph
    while not strategy.finished(g):
        circle, accept = strategy.choose(g)
        square, used = p.pre_round(circle, accept)
        strategy.observe(square, circle, used)


def _absorb_leaf_cuts(p: Process) -> int:
    """Attach every leaf block of the block-cut tree across its cut vertex."""
    g = p.graph
    d = block_decomposition(g)
    if len(d.blocks) == 1:
        return 0
    n = g.n
    everything = frozenset(range(1, n + 1))
    done = 0
    for bid, block in enumerate(d.blocks):
        cuts = [v for v in block if v in d.cut_vertices]
        if len(cuts) != 1:
            continue
        v = cuts[0]
        rest = block - {v}
        if 2 * len(rest) <= n:
            p.pre_until_used(min(rest), _outside(block))
        else:
            p.pre_until_used(min(everything - block), _member(rest))
        done += 1
    return done


def _case_big_block(p: Process, d, t, centre: int) -> None:
    blocks = d.blocks
    star = blocks[centre]
    parent, _ = t.rooted_at(centre)
    for leaf in leaf_blocks(t):
        if leaf == centre:
            continue
        x = _only_vertex(blocks[leaf], blocks[parent[leaf]])
        b = leaf
        while parent[b] != centre:
            b = parent[b]
        y = _only_vertex(blocks[b], star)
        p.pre_until_used(min(blocks[leaf] - {x}), _member_except(star, y))


def _case_balanced(p: Process, d, t) -> None:
    g = p.graph
    n = g.n
    col = balance_colouring(t, n)
    c = col.centre
    blocks = d.blocks
    parent, _ = t.rooted_at(c)
    branches = branches_of(t, c, n)
    root_of = {}
    for v, br in branches.items():
        for b in br.blocks:
            root_of[b] = v
    opposite = {Colour.RED: col.S_blue, Colour.BLUE: col.S_red}
    leaves = [L for L in leaf_blocks(t) if L != c]

    def rank(L):
        br = branches[root_of[L]]
        return (br.size_class is SizeClass.BIG, col.colour[L] is Colour.RED, L)

    for L in sorted(leaves, key=rank):
        vL = _only_vertex(blocks[L], blocks[parent[L]])
        br = branches[root_of[L]]
        target = opposite[col.colour[L]]
        if br.size_class is SizeClass.SMALL:
            target = target - br.vertex_set
        p.pre_until_used(min(blocks[L] - {vL}), _member(target))

    _absorb_leaf_cuts(p)

    for v, br in branches.items():
        if br.size_class is not SizeClass.BIG:
            continue
        S = br.vertex_set
        if not _separates(g, v, S):
            continue
        # step 1: make G[S] connected
        conn = ConnectSmallestComponent(universe=S, label=p.phase)
        conn.start(g, p.rng)
        _drive(p, conn)
        # step 2: bridge S to the rest of G - v
        if _separates(g, v, S):
            other = frozenset(range(1, n + 1)) - S - {v}
            small, large = (S, other) if len(S) <= len(other) else (other, S)
            p.pre_until_used(min(small), _member(large))


def _separates(g, v: int, S: frozenset) -> bool:
    """True if S is a union of components of G - v (nothing leaves S except via v)."""
    adj = g.adj
    for x in S:
        for y in adj[x]:
            if y != v and y not in S:
                return False
    return True


def _repair_pass(p: Process, certificates: dict) -> bool:
    """One pass of phase 3; returns False if the graph was already 2-connected."""
    g = p.graph
    d = block_decomposition(g)
    if len(d.blocks) == 1:
        return False
    t = reduced_block_tree(d)
    n = g.n
    big = [b for b in range(len(d.blocks)) if 4 * len(d.blocks[b]) >= n]
    if big:
        centre = max(big, key=lambda b: (len(d.blocks[b]), -b))
        certificates.setdefault("cases", []).append("big-block")
        _case_big_block(p, d, t, centre)
        _absorb_leaf_cuts(p)
    else:
        certificates.setdefault("cases", []).append("balanced")
        _case_balanced(p, d, t)
    return True


def repair_phase(p: Process, passes: int = MAX_REPAIR_PASSES, certificates=None) -> bool:
    """Run up to ``passes`` repair passes on a connected graph; True once 2-connected."""
    certificates = {} if certificates is None else certificates
    for _ in range(passes):
        if not _repair_pass(p, certificates):
            break
    return _two_connected(p.graph)


def _two_connected(g) -> bool:
    d = block_decomposition(g)
    return d.n_components == 1 and len(d.blocks) == 1 and len(d.blocks[0]) == g.n


def run_two_connect(config: RunConfig, passes: int = MAX_REPAIR_PASSES) -> PhasedTrace:
    """Make the graph 2-connected; see the module docstring for the phases."""
    if config.variant is not ProcessVariant.PRE:
        raise VariantError("run_two_connect plays the pre-positional process")
    if config.n < 5:
        raise InvalidArgumentError(f"2-connect strategy needs n >= 5, got {config.n}")
    p = Process(config)
    g = p.graph
    certificates: dict = {"cases": []}
    reason = StopReason.BUDGET_EXHAUSTED
    try:
        p.set_phase(PHASES[0])
        strat = MinDegreePre()
        strat.start(g, p.rng)
        while g.min_degree() < 2:
            circle, accept = strat.choose(g)
            p.pre_round(circle, accept)

        p.set_phase(PHASES[1])
        conn = ConnectSmallestComponent(label=PHASES[1])
        conn.start(g, p.rng)
        _drive(p, conn)

        p.set_phase(PHASES[2])
        if repair_phase(p, passes, certificates):
            reason = StopReason.PROPERTY_REACHED
    except BudgetExhausted:
        pass
    certificates["repair_passes"] = len(certificates["cases"])
    return PhasedTrace(p.trace(reason), certificates)
