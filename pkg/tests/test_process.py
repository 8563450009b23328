from __future__ import annotations

import math
from collections import Counter

import numpy as np
import pytest

from semirandom.errors import InvalidArgumentError, StrategyFault
from semirandom.graph import SemiRandomGraph
from semirandom.oracles import HasEdge, MinDegreeAtLeast, Never
from semirandom.process import (HittingTimeEstimate, Process, ProcessVariant, RunConfig, StopReason,
                                Strategy, coupled_run, estimate_hitting_time, run_until)
from semirandom.rng import RandomStream, SquareStream, split_seed
from semirandom.strategies import MinDegreePre, strat_min_degree


class Fixed(Strategy):
    """Pre-positional: always the same circle, always used."""

    variant = ProcessVariant.PRE

    def __init__(self, v=1):
        self.v = v

    def choose(self, g):
        return self.v, None


class Echo(Strategy):
    """Post-positional: circle := square."""

    def choose(self, g, square):
        return square, True


class Other(Strategy):
    """Post-positional on n=2: the vertex that is not the square."""

    def choose(self, g, square):
        return 3 - square, True


class Bad(Strategy):
    def choose(self, g, square):
        return g.n + 1, True


def test_n1_only_loops():
    tr = run_until(RunConfig(1, 3, 5), Echo(), Never())
    assert tr.rounds == 5 and tr.stopped_reason is StopReason.BUDGET_EXHAUSTED
    assert all(o.square == 1 and o.circle == 1 for o in tr.outcomes)


def test_echo_strategy_only_loops():
    tr = run_until(RunConfig(10, 1, 50), Echo(), Never())
    assert tr.final_graph.min_degree() == 0
    assert all(tr.final_graph.degree(v) == 0 for v in range(1, 11))


def test_pre_n2_fixed_circle_probability():
    # one uniform draw from {1, 2}: the edge {1, 2} appears iff the square is 2
    hits = 0
    trials = 4000
    for s in range(trials):
        tr = run_until(RunConfig(2, s, 1, "pre"), Fixed(1), Never())
        hits += tr.final_graph.degree(1)
    assert abs(hits / trials - 0.5) < 4 * math.sqrt(0.25 / trials)


def test_strategy_fault():
    with pytest.raises(StrategyFault):
        run_until(RunConfig(4, 0, 10), Bad(), Never())


def test_run_until_stops_at_first_edge():
    tr = run_until(RunConfig(5, 0), Echo(), HasEdge())
    assert tr.rounds == 1 and tr.stopped_reason is StopReason.PROPERTY_REACHED


def test_run_until_checks_initial_graph():
    tr = run_until(RunConfig(5, 0), Echo(), lambda g: True)
    assert tr.rounds == 0 and tr.outcomes == [] and tr.stopped_reason is StopReason.PROPERTY_REACHED


def test_run_until_min_degree_one_n2():
    tr = run_until(RunConfig(2, 9), Other(), MinDegreeAtLeast(1))
    assert tr.rounds == 1


def test_strategy_declared():
    class Done(Echo):
        def finished(self, g):
            return g.rounds >= 3

    tr = run_until(RunConfig(5, 0), Done(), Never())
    assert tr.rounds == 3 and tr.stopped_reason is StopReason.STRATEGY_DECLARED


def test_config_validation():
    with pytest.raises(ValueError):
        RunConfig(0)
    with pytest.raises(InvalidArgumentError):
        RunConfig(3, seed=-1)
    with pytest.raises(InvalidArgumentError):
        RunConfig(3, seed=2**64)
    with pytest.raises(InvalidArgumentError):
        RunConfig(3, max_rounds=-1)
    assert RunConfig(3, variant="pre").variant is ProcessVariant.PRE


def test_pre_strategy_commits_before_draw():
    """The square stream is untouched while a pre-positional strategy decides."""
    p = Process(RunConfig(50, 4, 0, "pre"))
    seen = []

    class Spy(Strategy):
        variant = ProcessVariant.PRE

        def choose(self, g):
            seen.append(p.squares.drawn)
            return 1, None

    s = Spy()
    for r in range(20):
        p.step(s)
        assert seen[-1] == r  # no draw has been made for this round yet
    assert p.squares.drawn == 20


def test_one_draw_per_round():
    p = Process(RunConfig(30, 1))
    s = strat_min_degree("post")
    s.start(p.graph, p.rng)
    for _ in range(100):
        p.step(s)
    assert p.squares.drawn == 100


def test_determinism_double_run():
    a = run_until(RunConfig(300, 77), strat_min_degree("post"), MinDegreeAtLeast(2))
    b = run_until(RunConfig(300, 77), strat_min_degree("post"), MinDegreeAtLeast(2))
    assert a.records() == b.records() and a.phase_boundaries == b.phase_boundaries


def test_square_uniformity_chi_square():
    n, T = 10, 10**6
    stream = SquareStream(n, np.random.Generator(np.random.PCG64(2024)))
    counts = Counter(stream.next() for _ in range(T))
    expected = T / n
    sigma = math.sqrt(T * (1 / n) * (1 - 1 / n))
    assert set(counts) == set(range(1, n + 1))
    for v in range(1, n + 1):
        assert abs(counts[v] - expected) < 4 * sigma
    chi2 = sum((counts[v] - expected) ** 2 / expected for v in counts)
    assert chi2 < 27.88  # 0.999 quantile with 9 degrees of freedom


def test_random_stream_below_range():
    rs = RandomStream(np.random.Generator(np.random.PCG64(1)))
    vals = [rs.below(7) for _ in range(5000)]
    assert min(vals) == 0 and max(vals) == 6


def test_split_seed_depends_only_on_master_and_index():
    assert split_seed(5, 3) == split_seed(5, 3)
    assert len({split_seed(5, i) for i in range(100)}) == 100
    assert split_seed(5, 0) != split_seed(6, 0)


def test_coupled_run_zero_rounds():
    a, b = coupled_run(RunConfig(5, 1), MinDegreePre(), 0)
    assert a.rounds == b.rounds == 0


def test_coupled_run_identical_small():
    a, b = coupled_run(RunConfig(5, 7), MinDegreePre(), 100)
    assert a.records() == b.records()
    assert a.config.variant is ProcessVariant.PRE and b.config.variant is ProcessVariant.POST


def test_coupled_run_needs_pre_strategy():
    with pytest.raises(InvalidArgumentError):
        coupled_run(RunConfig(5, 7), strat_min_degree("post"), 10)


def test_phase_accounting():
    p = Process(RunConfig(10, 0, 0, "pre"))
    p.set_phase("a")
    for _ in range(3):
        p.pre_round(1)
    p.set_phase("b")
    p.set_phase("c")
    p.pre_round(2, lambda s: False)
    tr = p.trace(StopReason.STRATEGY_DECLARED)
    assert tr.phase_rounds == {"a": 3, "b": 0, "c": 1}
    assert tr.phase_boundaries == {"a": (1, 3), "c": (4, 4)}
    assert tr.failure_counts == {"a": 0, "b": 0, "c": 1}
    assert sum(tr.phase_rounds.values()) == tr.rounds
    with pytest.raises(ValueError):
        p.set_phase("a")


def test_budget_is_a_normal_outcome():
    tr = run_until(RunConfig(100, 0, 7), Echo(), Never())
    assert tr.rounds == 7 and tr.stopped_reason is StopReason.BUDGET_EXHAUSTED


def test_estimate_first_edge_exact():
    est = estimate_hitting_time(RunConfig(40), Echo, HasEdge(), 10, 3)
    assert est.trials == 10 and est.success_fraction == 1.0
    assert est.mean == 1 / 40 and est.std == 0.0


def test_estimate_all_fail_flags_moments():
    est = estimate_hitting_time(RunConfig(10, 0, 5), Echo, Never(), 4, 0)
    assert est.successes == 0 and est.success_fraction == 0.0
    assert not est.moments_defined and est.mean is None


def test_estimate_partial_failures():
    est = HittingTimeEstimate.from_rounds([10, None, 30], 10)
    assert est.successes == 2 and est.success_fraction == pytest.approx(2 / 3)
    assert est.mean == 2.0 and est.minimum == 1.0 and est.maximum == 3.0


def _factory():
    return strat_min_degree("post")


def test_estimate_independent_of_order_and_workers():
    cfg = RunConfig(200)
    base = estimate_hitting_time(cfg, _factory, MinDegreeAtLeast(2), 6, 11)
    rev = estimate_hitting_time(cfg, _factory, MinDegreeAtLeast(2), 6, 11, order=range(5, -1, -1))
    par = estimate_hitting_time(cfg, _factory, MinDegreeAtLeast(2), 6, 11, workers=2)
    assert base == rev == par


def test_preload_records_given_edges():
    p = Process(RunConfig(4, 0, 0, "pre"))
    p.preload([(1, 2), (2, 3)])
    assert p.graph.rounds == 2 and p.squares.drawn == 0
    assert isinstance(p.graph, SemiRandomGraph)
