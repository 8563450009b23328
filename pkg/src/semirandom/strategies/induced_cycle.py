"""Post-positional construction of an induced cycle on [n-1] with sink n."""
from __future__ import annotations

from ..errors import InvalidArgumentError, VariantError
from ..process import (BudgetExhausted, PhasedTrace, Process, ProcessVariant,
                       RunConfig, StopReason, Strategy)


class SinkCycle(Strategy):
    """First visit of v < n joins v to its successor on the cycle, else dump on n.

    The successor of n-1 is 1.  Every cycle edge is added exactly once and
    every other edge touches the sink, so [n-1] never gets a chord.
    """

    variant = ProcessVariant.POST
    phase = "cycle"

    def start(self, graph, rng):
        self.rng = rng
        self.n = graph.n
        self.hit = bytearray(graph.n + 1)
        self.remaining = graph.n - 1

    def choose(self, graph, square):
        n = self.n
        if square < n and not self.hit[square]:
            self.hit[square] = 1
            self.remaining -= 1
            return (square + 1 if square < n - 1 else 1), True
        return n, False

    def finished(self, graph) -> bool:
        return self.remaining == 0


def run_induced_cycle(config: RunConfig) -> PhasedTrace:
    if config.variant is not ProcessVariant.POST:
        raise VariantError("no pre-positional strategy builds an induced (n-1)-cycle")
    n = config.n
    if n < 4:
        raise InvalidArgumentError(f"induced cycle needs n >= 4, got {n}")
    p = Process(config)
    strat = SinkCycle()
    strat.start(p.graph, p.rng)
    p.set_phase(strat.phase)
    reason = StopReason.PROPERTY_REACHED
    try:
        while not strat.finished(p.graph):
            p.step(strat)
    except BudgetExhausted:
        reason = StopReason.BUDGET_EXHAUSTED
    return PhasedTrace(p.trace(reason), {"cycle": list(range(1, n))})
