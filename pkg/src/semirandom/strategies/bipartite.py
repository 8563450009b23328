"""Dense bipartite subgraph across a small left side A = [ceil(sqrt m)]."""
from __future__ import annotations

import math

from ..errors import InvalidArgumentError, VariantError
from ..process import (BudgetExhausted, PhasedTrace, Process, ProcessVariant,
                       RunConfig, StopReason)


def side_size(m: int) -> int:
    return math.isqrt(m - 1) + 1 if m > 0 else 0


def run_bipartite(config: RunConfig, m: int) -> PhasedTrace:
    """Give each vertex i of A, one after another, ceil(sqrt m) new neighbours in B.

    During phase i the circle is always i, and a round fails when the
    square is in A or already adjacent to i.
    """
    if config.variant is not ProcessVariant.PRE:
        raise VariantError("run_bipartite plays the pre-positional process")
    n = config.n
    if m < 1:
        raise InvalidArgumentError(f"m must be >= 1, got {m}")
    a = side_size(m)
    if 4 * a > n:
        raise InvalidArgumentError(f"need 4*ceil(sqrt(m)) <= n, got m={m}, n={n}")
    p = Process(config)
    adj = p.graph.adj
    reason = StopReason.PROPERTY_REACHED
    try:
        for i in range(1, a + 1):
            p.set_phase(f"phase{i}")
            nbrs = adj[i]
            have = sum(1 for w in nbrs if w > a)

            def accept(s, nbrs=nbrs):
                return s > a and s not in nbrs

            while have < a:
                _, used = p.pre_round(i, accept)
                have += used
    except BudgetExhausted:
        reason = StopReason.BUDGET_EXHAUSTED
    certificates = {"A": [1, a], "B": [a + 1, n], "m": m}
    return PhasedTrace(p.trace(reason), certificates)
