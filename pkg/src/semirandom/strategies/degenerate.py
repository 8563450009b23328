"""Embedding a fixed d-degenerate graph H by growing stars.

H is built vertex by vertex in reverse peeling order, so each new vertex
has at most d already-embedded neighbours.  For every such neighbour the
strategy keeps choosing it as the circle for a fixed number of rounds; the
squares that land outside the current embedding form its star.  Any vertex
hit by all the stars extends the embedding.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Union

from ..errors import InvalidArgumentError, InvalidSizeError, VariantError
from ..graph import SimpleGraph
from ..process import (BudgetExhausted, PhasedTrace, Process, ProcessVariant,
                       RunConfig, StopReason)

MAX_LEVEL_ATTEMPTS = 3


@dataclass(frozen=True)
class PatternGraph:
    graph: SimpleGraph
    degeneracy: int
    elimination_order: tuple  # peeled first .. peeled last

    @property
    def build_order(self) -> tuple:
        return tuple(reversed(self.elimination_order))


def degeneracy_ordering(H: SimpleGraph) -> PatternGraph:
    """Peel a minimum-degree vertex repeatedly (smallest label on ties)."""
    if H.n < 1:
        raise InvalidSizeError("pattern graph must have at least one vertex")
    left = set(range(1, H.n + 1))
    deg = {v: len(H.adj[v]) for v in left}
    order = []
    d = 0
    while left:
        v = min(left, key=lambda x: (deg[x], x))
        d = max(d, deg[v])
        order.append(v)
        left.discard(v)
        for w in H.adj[v]:
            if w in left:
                deg[w] -= 1
    return PatternGraph(H, d, tuple(order))


def one_subdivision(H: SimpleGraph) -> SimpleGraph:
    """Replace every edge uv by a path u-x-v through a new vertex x.

    New vertices are numbered n+1, n+2, ... in sorted edge order.
    """
    edges = []
    for i, (u, v) in enumerate(H.sorted_edges()):
        x = H.n + 1 + i
        edges += [(u, x), (x, v)]
    return SimpleGraph.from_edges(H.n + H.m, edges)


def _const(c: float) -> Callable[[int], float]:
    return lambda n: c


G_BUDGETS: dict[str, Callable[[int], float]] = {
    "ln": lambda n: math.log(n),
    "sqrtln": lambda n: math.sqrt(math.log(n)),
    "loglog": lambda n: math.log(max(math.log(n), math.e)),
}


def budget_function(name: str) -> Callable[[int], float]:
    """Look up a named growth function; ``const:<x>`` gives a constant."""
    if name in G_BUDGETS:
        return G_BUDGETS[name]
    if name.startswith("const:"):
        try:
            c = float(name.split(":", 1)[1])
        except ValueError:
            raise InvalidArgumentError(f"bad constant in budget {name!r}") from None
        if c <= 0:
            raise InvalidArgumentError("budget constant must be positive")
        return _const(c)
    raise InvalidArgumentError(f"unknown budget function {name!r}; try {sorted(G_BUDGETS)} or const:<x>")


def level_rounds(n: int, m: int, d: int, g_value: float) -> int:
    """Rounds spent on each star while embedding the m-th vertex."""
    return math.ceil(g_value * 2 ** m / (2 * d) * n ** ((d - 1) / d))


def total_budget(n: int, h: int, d: int, g_value: float) -> int:
    return math.floor(g_value * 2 ** h * n ** ((d - 1) / d))


def run_degenerate_subgraph(config: RunConfig, H: Union[PatternGraph, SimpleGraph],
                            g_budget: Union[str, Callable[[int], float]] = "ln",
                            attempts: int = MAX_LEVEL_ATTEMPTS) -> PhasedTrace:
    if config.variant is not ProcessVariant.PRE:
        raise VariantError("run_degenerate_subgraph plays the pre-positional process")
    pattern = H if isinstance(H, PatternGraph) else degeneracy_ordering(H)
    Hg = pattern.graph
    d = pattern.degeneracy
    n = config.n
    if Hg.n > n:
        raise InvalidArgumentError(f"pattern has {Hg.n} vertices but n = {n}")
    if Hg.m and d < 1:
        raise InvalidArgumentError("degeneracy must be >= 1")
    gfun = budget_function(g_budget) if isinstance(g_budget, str) else g_budget
    gval = gfun(n)
    budget = total_budget(n, Hg.n, d, gval) if d else 0
    cap = budget if not config.max_rounds else min(budget, config.max_rounds)
    if d and cap == 0:
        cap = 1  # zero would mean unbounded
    p = Process(RunConfig(n, config.seed, cap, config.variant))
    image: dict[int, int] = {}
    in_image = bytearray(n + 1)
    next_free = 1
    reason = StopReason.PROPERTY_REACHED
    levels = {}
    try:
        for m, h in enumerate(pattern.build_order, 1):
            back = sorted(u for u in Hg.adj[h] if u in image)
            if not back:
                while in_image[next_free]:
                    next_free += 1
                z = next_free
            else:
                p.set_phase(f"level{m}")
                R = level_rounds(n, m, d, gval)
                stars = {u: set() for u in back}
                z = None
                for attempt in range(attempts):
                    for u in back:
                        circle = image[u]
                        star = stars[u]
                        for _ in range(R):
                            square, used = p.pre_round(circle, _outside_image(in_image))
                            if used:
                                star.add(square)
                    common = set.intersection(*(stars[u] for u in back))
                    if common:
                        z = min(common)
                        levels[m] = attempt + 1
                        break
                if z is None:
                    reason = StopReason.BUDGET_EXHAUSTED
                    break
            image[h] = z
            in_image[z] = 1
    except BudgetExhausted:
        reason = StopReason.BUDGET_EXHAUSTED
    certificates = {
        "embedding": dict(sorted(image.items())) if reason is StopReason.PROPERTY_REACHED else None,
        "degeneracy": d,
        "budget": budget,
        "level_attempts": levels,
    }
    trace = p.trace(reason)
    # report the caller's config rather than the capped one
    trace.config = config
    return PhasedTrace(trace, certificates)


def _outside_image(in_image: bytearray):
    return lambda s: not in_image[s]
