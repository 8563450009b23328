"""Round execution for the pre- and post-positional processes.

A :class:`Process` owns the evolving graph and the two random streams of a
run.  The order of events inside a round is what separates the variants:

* post-positional: the square is drawn first and handed to the strategy,
  which then names the circle;
* pre-positional: the strategy names the circle (plus an acceptance test
  over the square) before the square is drawn.  The strategy never sees
  the square in this variant because :meth:`Process.pre_round` takes the
  circle as an argument and only then samples.

Each round consumes exactly one draw from the square stream.
"""
from __future__ import annotations

import enum
import statistics
from array import array
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Callable, NamedTuple, Optional

from .errors import InvalidArgumentError, InvalidSizeError, StrategyFault
from .graph import SemiRandomGraph
from .rng import RandomStream, SquareStream, run_streams, split_seed

_MAX_SEED = 2**64 - 1


class ProcessVariant(str, enum.Enum):
    PRE = "pre"
    POST = "post"

    @classmethod
    def parse(cls, value) -> "ProcessVariant":
        if isinstance(value, cls):
            return value
        v = str(value).lower().replace("-", "").replace("_", "")
        if v in ("pre", "prepositional"):
            return cls.PRE
        if v in ("post", "postpositional"):
            return cls.POST
        raise InvalidArgumentError(f"unknown process variant {value!r}")


class StopReason(str, enum.Enum):
    PROPERTY_REACHED = "PropertyReached"
    BUDGET_EXHAUSTED = "BudgetExhausted"
    STRATEGY_DECLARED = "StrategyDeclared"


@dataclass(frozen=True)
class RunConfig:
    n: int
    seed: int = 0
    max_rounds: int = 0  # 0 means unbounded
    variant: ProcessVariant = ProcessVariant.POST

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise InvalidSizeError(f"n must be a positive integer, got {self.n!r}")
        if not 0 <= int(self.seed) <= _MAX_SEED:
            raise InvalidArgumentError(f"seed must fit in 64 unsigned bits, got {self.seed!r}")
        if self.max_rounds < 0:
            raise InvalidArgumentError("max_rounds must be >= 0")
        object.__setattr__(self, "variant", ProcessVariant.parse(self.variant))

    def to_dict(self) -> dict:
        return {"n": self.n, "seed": int(self.seed), "max_rounds": self.max_rounds,
                "variant": self.variant.value}


class RoundOutcome(NamedTuple):
    round: int
    square: int
    circle: int
    used: bool
    phase_label: str


class BudgetExhausted(Exception):
    """Raised inside a run when the next round would exceed ``max_rounds``."""


class Strategy:
    """Base class for strategies.

    Post-positional strategies implement ``choose(graph, square)`` returning
    ``(circle, used)``.  Pre-positional strategies implement
    ``choose(graph)`` returning ``(circle, accept)``, where ``accept`` is a
    predicate over the square that is revealed afterwards (``None`` means
    the edge is always used).  ``phase`` is read by the engine before every
    round and becomes the round's phase label.
    """

    variant: ProcessVariant = ProcessVariant.POST
    phase: str = "main"

    def start(self, graph: SemiRandomGraph, rng: RandomStream) -> None:
        self.rng = rng

    def choose(self, graph, square=None):
        raise NotImplementedError

    def observe(self, square: int, circle: int, used: bool) -> None:
        pass

    def finished(self, graph) -> bool:
        return False


class Process:
    """Mutable state of one run: graph, random streams, phase accounting."""

    def __init__(self, config: RunConfig):
        self.config = config
        self.n = config.n
        self.graph = SemiRandomGraph(config.n)
        sq, st = run_streams(config.seed)
        self.squares = SquareStream(config.n, sq)
        self.rng = RandomStream(st)
        self._labels: list[str] = []
        self._label_index: dict[str, int] = {}
        self._phase_of_round = array("H")
        self._owned: list[int] = []
        self._current = -1
        self.set_phase("main")

    @property
    def rounds(self) -> int:
        return self.graph.rounds

    @property
    def phase(self) -> str:
        return self._labels[self._current]

    def set_phase(self, label: str) -> None:
        idx = self._label_index.get(label)
        if idx == self._current and idx is not None:
            return
        if idx is not None:
            # phases occupy contiguous round intervals: a label that already
            # owns rounds can only resume if it also owns the latest round
            if self._owned[idx] and self._phase_of_round[-1] != idx:
                raise ValueError(f"phase {label!r} re-entered after other phases ran")
            self._current = idx
            return
        self._label_index[label] = len(self._labels)
        self._labels.append(label)
        self._owned.append(0)
        self._current = len(self._labels) - 1

    def _budget_check(self) -> None:
        budget = self.config.max_rounds
        if budget and self.graph.rounds >= budget:
            raise BudgetExhausted(budget)

    def _check_circle(self, circle) -> None:
        if not isinstance(circle, int) or not 1 <= circle <= self.n:
            raise StrategyFault(f"strategy returned circle {circle!r} outside [1, {self.n}]")

    def _record(self, square: int, circle: int, used: bool) -> None:
        self.graph.add_semirandom_edge(square, circle, used)
        self._phase_of_round.append(self._current)
        self._owned[self._current] += 1

    def pre_round(self, circle: int, accept: Optional[Callable[[int], bool]] = None) -> tuple[int, bool]:
        """Commit ``circle``, then draw the square.  Returns ``(square, used)``."""
        self._budget_check()
        self._check_circle(circle)
        square = self.squares.next()
        used = True if accept is None else bool(accept(square))
        self._record(square, circle, used)
        return square, used

    def pre_until_used(self, circle: int, accept: Callable[[int], bool]) -> int:
        """Repeat ``pre_round`` with a fixed circle until a round is used."""
        while True:
            square, used = self.pre_round(circle, accept)
            if used:
                return square

    def post_round(self, choose: Callable[[int], tuple[int, bool]]) -> tuple[int, int, bool]:
        """Draw the square, then let ``choose(square)`` name the circle."""
        self._budget_check()
        square = self.squares.next()
        circle, used = choose(square)
        self._check_circle(circle)
        used = bool(used)
        self._record(square, circle, used)
        return square, circle, used

    def step(self, strategy: Strategy) -> RoundOutcome:
        """Play one round of ``strategy`` in the configured variant."""
        g = self.graph
        if self.config.variant is ProcessVariant.PRE:
            if strategy.variant is not ProcessVariant.PRE:
                raise StrategyFault("post-positional strategy cannot drive a pre-positional process")
            circle, accept = strategy.choose(g)
            self.set_phase(strategy.phase)
            square, used = self.pre_round(circle, accept)
        else:
            if strategy.variant is ProcessVariant.PRE:
                # a pre-positional strategy is a valid post-positional one (it ignores the square)
                circle, accept = strategy.choose(g)
                self.set_phase(strategy.phase)
                square, circle, used = self.post_round(
                    lambda s: (circle, True if accept is None else accept(s)))
            else:
                box = []

                def choose(s):
                    c, u = strategy.choose(g, s)
                    box.append(strategy.phase)
                    return c, u

                self._budget_check()
                square = self.squares.next()
                circle, used = choose(square)
                self._check_circle(circle)
                used = bool(used)
                self.set_phase(box[0])
                self._record(square, circle, used)
        strategy.observe(square, circle, used)
        return RoundOutcome(g.rounds, square, circle, used, self.phase)

    def preload(self, edges, label: str = "given") -> None:
        """Record fixed ``(square, circle)`` edges as rounds without drawing.

        Used to start an experiment from a prescribed graph; the rounds are
        labelled ``label`` so they can be told apart in the trace.
        """
        self.set_phase(label)
        for square, circle in edges:
            self._check_circle(square)
            self._check_circle(circle)
            self._record(square, circle, True)

    def trace(self, reason: StopReason) -> "RunTrace":
        return RunTrace(self.config, self.graph, StopReason(reason),
                        list(self._labels), array("H", self._phase_of_round))


@dataclass(eq=False)
class RunTrace:
    config: RunConfig
    final_graph: SemiRandomGraph
    stopped_reason: StopReason
    labels: list
    phase_of_round: array = field(repr=False)

    @property
    def rounds(self) -> int:
        return self.final_graph.rounds

    @property
    def outcomes(self) -> list[RoundOutcome]:
        labels = self.labels
        return [RoundOutcome(e.round, e.square, e.circle, e.used, labels[p])
                for e, p in zip(self.final_graph.iter_edges(), self.phase_of_round)]

    @cached_property
    def phase_rounds(self) -> dict[str, int]:
        counts = [0] * len(self.labels)
        for p in self.phase_of_round:
            counts[p] += 1
        return {lab: counts[i] for i, lab in enumerate(self.labels) if counts[i] or lab != "main"}

    @cached_property
    def phase_boundaries(self) -> dict[str, tuple[int, int]]:
        bounds: dict[str, tuple[int, int]] = {}
        for r, p in enumerate(self.phase_of_round, 1):
            lab = self.labels[p]
            first = bounds[lab][0] if lab in bounds else r
            bounds[lab] = (first, r)
        return bounds

    @cached_property
    def failure_counts(self) -> dict[str, int]:
        counts = dict.fromkeys(self.phase_rounds, 0)
        used = self.final_graph._used
        for i, p in enumerate(self.phase_of_round):
            if not used[i]:
                lab = self.labels[p]
                counts[lab] = counts.get(lab, 0) + 1
        return counts

    @property
    def failures(self) -> int:
        return self.rounds - self.final_graph.used_count()

    def records(self) -> list[tuple]:
        """Comparable per-round tuples ``(round, square, circle, used, phase)``."""
        return [tuple(o) for o in self.outcomes]


@dataclass(eq=False)
class PhasedTrace:
    trace: RunTrace
    certificates: dict = field(default_factory=dict)

    @property
    def phase_rounds(self) -> dict[str, int]:
        return self.trace.phase_rounds

    @property
    def rounds(self) -> int:
        return self.trace.rounds

    @property
    def final_graph(self) -> SemiRandomGraph:
        return self.trace.final_graph

    @property
    def stopped_reason(self) -> StopReason:
        return self.trace.stopped_reason


def step(process: Process, strategy: Strategy) -> RoundOutcome:
    return process.step(strategy)


def run_until(config: RunConfig, strategy: Strategy, stop: Callable[[SemiRandomGraph], bool]) -> RunTrace:
    """Run ``strategy`` until ``stop(graph)`` holds (checked on G_0 first)."""
    p = Process(config)
    g = p.graph
    strategy.start(g, p.rng)
    p.set_phase(strategy.phase)
    try:
        while True:
            if stop(g):
                reason = StopReason.PROPERTY_REACHED
                break
            if strategy.finished(g):
                reason = StopReason.STRATEGY_DECLARED
                break
            p.step(strategy)
    except BudgetExhausted:
        reason = StopReason.BUDGET_EXHAUSTED
    return p.trace(reason)


def coupled_run(config: RunConfig, pre_strategy: Strategy, rounds: int) -> tuple[RunTrace, RunTrace]:
    """Drive a pre-positional run and a post-positional copy off one square sequence.

    Both processes are seeded identically, so their square streams are
    equal draw for draw; the post-positional player copies every circle of
    the pre-positional one and applies the same acceptance test to the
    square it is shown.
    """
    if pre_strategy.variant is not ProcessVariant.PRE:
        raise InvalidArgumentError("coupled_run needs a pre-positional strategy")
    if rounds < 0:
        raise InvalidArgumentError("rounds must be >= 0")
    a = Process(replace(config, variant=ProcessVariant.PRE, max_rounds=0))
    b = Process(replace(config, variant=ProcessVariant.POST, max_rounds=0))
    pre_strategy.start(a.graph, a.rng)
    for _ in range(rounds):
        circle, accept = pre_strategy.choose(a.graph)
        a.set_phase(pre_strategy.phase)
        b.set_phase(pre_strategy.phase)
        square, used = a.pre_round(circle, accept)
        b.post_round(lambda s: (circle, True if accept is None else accept(s)))
        pre_strategy.observe(square, circle, used)
    return a.trace(StopReason.STRATEGY_DECLARED), b.trace(StopReason.STRATEGY_DECLARED)


@dataclass(frozen=True)
class HittingTimeEstimate:
    trials: int
    successes: int
    success_fraction: float
    mean: Optional[float]
    std: Optional[float]
    minimum: Optional[float]
    median: Optional[float]
    maximum: Optional[float]

    @property
    def moments_defined(self) -> bool:
        return self.successes > 0

    @classmethod
    def from_rounds(cls, rounds: list, n: int) -> "HittingTimeEstimate":
        """Summarise per-trial round counts; ``None`` marks a failed trial."""
        if not rounds:
            raise InvalidArgumentError("at least one trial is required")
        ok = [r / n for r in rounds if r is not None]
        k = len(ok)
        if not k:
            return cls(len(rounds), 0, 0.0, None, None, None, None, None)
        return cls(
            trials=len(rounds),
            successes=k,
            success_fraction=k / len(rounds),
            mean=statistics.fmean(ok),
            std=statistics.stdev(ok) if k > 1 else 0.0,
            minimum=min(ok),
            median=statistics.median(ok),
            maximum=max(ok),
        )

    def to_dict(self) -> dict:
        return {
            "trials": self.trials,
            "successes": self.successes,
            "success_fraction": self.success_fraction,
            "rounds_per_n_mean": self.mean,
            "rounds_per_n_std": self.std,
            "rounds_per_n_min": self.minimum,
            "rounds_per_n_median": self.median,
            "rounds_per_n_max": self.maximum,
            "moments_defined": self.moments_defined,
        }


def _one_trial(args):
    config, strategy_factory, stop = args
    tr = run_until(config, strategy_factory(), stop)
    ok = tr.stopped_reason is StopReason.PROPERTY_REACHED
    return tr.rounds if ok else None


def trial_configs(config: RunConfig, trials: int, master_seed: int) -> list[RunConfig]:
    return [replace(config, seed=split_seed(master_seed, i)) for i in range(trials)]


def estimate_hitting_time(config: RunConfig, strategy_factory: Callable[[], Strategy],
                          stop: Callable, trials: int, master_seed: int,
                          workers: int = 1, order=None) -> HittingTimeEstimate:
    """Monte Carlo hitting time over ``trials`` independent runs.

    Trial ``i`` runs with seed ``split_seed(master_seed, i)``.  ``order``
    optionally permutes the execution order; results are folded by trial
    index either way, as they are when ``workers > 1``.
    """
    if trials < 1:
        raise InvalidArgumentError("trials must be >= 1")
    configs = trial_configs(config, trials, master_seed)
    idx = list(order) if order is not None else list(range(trials))
    if sorted(idx) != list(range(trials)):
        raise InvalidArgumentError("order must be a permutation of the trial indices")
    tasks = [(configs[i], strategy_factory, stop) for i in idx]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_one_trial, tasks))
    else:
        results = [_one_trial(t) for t in tasks]
    by_index = [None] * trials
    for i, r in zip(idx, results):
        by_index[i] = r
    return HittingTimeEstimate.from_rounds(by_index, config.n)
