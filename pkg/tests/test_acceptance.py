"""Full-scale acceptance experiments, one test per criterion.

Each test records a ``PASS``/``FAIL`` line with the measured numbers; the
lines are printed in the terminal summary (see conftest.py).  Running this
file directly prints the same lines without pytest.
"""
from __future__ import annotations

import io
import math
import random
import statistics
import sys

import pytest

from semirandom.blocks import (balance_colouring, block_decomposition, check_balanced_colouring,
                               reduced_block_tree)
from semirandom.constants import closed_form_alpha, coupon_collector_mean
from semirandom.graph import is_connected
from semirandom.harness import ExperimentSpec, execute
from semirandom.oracles import (MinDegreeAtLeast, Never, brute_force_blocks, check_embedding,
                                contains_subgraph, crossing_edges, is_acyclic, is_induced_cycle_on,
                                is_k_connected)
from semirandom.process import RunConfig, StopReason, coupled_run, estimate_hitting_time, run_until
from semirandom.rng import split_seed
from semirandom.strategies import (MinDegreePre, run_bipartite, run_connect,
                                   run_degenerate_subgraph, run_induced_cycle, run_k_min,
                                   run_two_connect, strat_min_degree)

from blockcheck import (colouring_exists, edges_in_exactly_one_block,
                        is_spanning_tree, k2_blocks_have_two_sides, konig_bound, leaves_are_big,
                        subtree_property)
from conftest import ACCEPTANCE_LINES, complete, cycle, random_simple_graph

pytestmark = pytest.mark.acceptance

MASTER = 20240601


def seeds(count, salt):
    return [split_seed(MASTER + salt, i) for i in range(count)]


def report(num, title, ok, detail):
    line = f"criterion {num}: {'PASS' if ok else 'FAIL'}  {title}  [{detail}]"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def _kmin_mean(k, salt):
    n = 10**5
    vals = [run_k_min(RunConfig(n, s), k).rounds / n for s in seeds(20, salt)]
    return statistics.fmean(vals), statistics.stdev(vals)


def test_1_alpha2():
    mean, sd = _kmin_mean(2, 1)
    ref = closed_form_alpha(2)
    report(1, "k-min k=2 mean rounds/n within 0.02 of alpha_2", abs(mean - ref) <= 0.02,
           f"mean={mean:.5f} sd={sd:.5f} alpha_2={ref:.6f}")


def test_2_alpha3():
    mean, sd = _kmin_mean(3, 2)
    ref = closed_form_alpha(3)
    report(2, "k-min k=3 mean rounds/n within 0.03 of alpha_3", abs(mean - ref) <= 0.03,
           f"mean={mean:.5f} sd={sd:.5f} alpha_3={ref:.6f}")


def test_3_coupling():
    same = 0
    for s in seeds(100, 3):
        a, b = coupled_run(RunConfig(1000, s), MinDegreePre(), 5000)
        same += a.records() == b.records() and a.rounds == b.rounds == 5000
    report(3, "coupled pre/post traces identical record-for-record", same == 100,
           f"identical_traces={same}/100")


def test_4_connect():
    n = 10**5
    within, fail_ok, connected = 0, 0, 0
    worst_rounds, worst_fail = 0, 0
    for s in seeds(20, 4):
        pt = run_connect(RunConfig(n, s, 0, "pre"))
        within += pt.rounds <= 1.05 * n
        fail_ok += pt.trace.failures <= 50 * math.log(n) ** 2
        connected += is_connected(pt.final_graph)
        worst_rounds = max(worst_rounds, pt.rounds)
        worst_fail = max(worst_fail, pt.trace.failures)
    ok = within >= 19 and fail_ok == 20 and connected == 20
    report(4, "connect: rounds<=1.05n in >=95%, failures<=50 ln^2 n, connected 100%", ok,
           f"within={within}/20 max_rounds/n={worst_rounds / n:.5f} max_failures={worst_fail} "
           f"connected={connected}/20")


def test_5_two_connect():
    n = 5 * 10**4
    ref = closed_form_alpha(2)
    passed, total_ok, late_ok = 0, 0, 0
    ratios, lates = [], []
    for s in seeds(10, 5):
        pt = run_two_connect(RunConfig(n, s, 0, "pre"))
        passed += pt.stopped_reason is StopReason.PROPERTY_REACHED and is_k_connected(pt.final_graph, 2)
        r = pt.rounds / n
        late = pt.phase_rounds["phase2_connect"] + pt.phase_rounds["phase3_2connect"]
        ratios.append(r)
        lates.append(late)
        total_ok += r <= ref + 0.05
        late_ok += late <= 0.1 * n
    ok = passed == 10 and total_ok == 10 and late_ok >= 9
    report(5, "2-connect: oracle 100%, rounds/n<=alpha_2+0.05, phases 2+3<=0.1n in >=90%", ok,
           f"2-connected={passed}/10 max_rounds/n={max(ratios):.5f} max_phase23={max(lates)}")


def _structural_instances():
    rnd = random.Random(MASTER)
    for _ in range(10**4):
        n = rnd.randint(1, 8)
        yield random_simple_graph(rnd, n, rnd.choice([0.2, 0.3, 0.45, 0.6, 0.8]))


def test_6_structure():
    bad = []
    count = 0
    for g in _structural_instances():
        count += 1
        d = block_decomposition(g)
        if {frozenset(b) for b in d.blocks} != brute_force_blocks(g):
            bad.append(("definition", g))
        if not (konig_bound(d) and edges_in_exactly_one_block(g, d)):
            bad.append(("blocks", g))
        if d.n_components == 1:
            t = reduced_block_tree(d)
            if not (is_spanning_tree(t) and subtree_property(t)):
                bad.append(("tree", g))
            if g.n >= 3 and min(len(g.adj[v]) for v in range(1, g.n + 1)) >= 2:
                if not (leaves_are_big(t) and k2_blocks_have_two_sides(t)):
                    bad.append(("leaves", g))
    # every 2-min output, plus the colouring wherever its precondition holds
    colourings = 0
    from test_blocks import cactus
    rnd = random.Random(MASTER + 6)
    extra = [run_k_min(RunConfig(n, s), 2).final_graph for n in (200, 1000) for s in seeds(20, 6)]
    extra += [cactus(rnd.randint(9, 80), rnd, rnd.choice([1, 2, 3, 4])) for _ in range(300)]
    for g in extra:
        count += 1
        d = block_decomposition(g)
        if not (konig_bound(d) and edges_in_exactly_one_block(g, d)):
            bad.append(("blocks", g))
        if d.n_components != 1:
            continue
        t = reduced_block_tree(d)
        if not (is_spanning_tree(t) and subtree_property(t)):
            bad.append(("tree", g))
        if min(len(g.adj[v]) for v in range(1, g.n + 1)) >= 2:
            if not (leaves_are_big(t) and k2_blocks_have_two_sides(t)):
                bad.append(("leaves", g))
        if all(4 * len(b) < g.n for b in d.blocks):
            col = balance_colouring(t, g.n)
            colourings += 1
            if not check_balanced_colouring(t, col, g.n):
                bad.append(("colouring", g))
            if len(t) <= 12 and not colouring_exists(t, g.n):
                bad.append(("brute-colouring", g))
    report(6, "structural property suite, zero tolerance", not bad and colourings > 0,
           f"instances={count} colourings_checked={colourings} violations={len(bad)}")


def test_7_bipartite():
    n, m = 10**4, 10**6
    a = 1000
    within, certified = 0, 0
    ratios = []
    for s in seeds(10, 7):
        pt = run_bipartite(RunConfig(n, s, 0, "pre"), m)
        ratios.append(pt.rounds / m)
        within += pt.rounds <= 1.1 * m
        certified += crossing_edges(pt.final_graph, range(1, a + 1), range(a + 1, n + 1)) >= m
    ok = within >= 10 * 0.95 and certified == 10
    report(7, "bipartite: rounds<=1.1m in >=95%, crossing edges>=m in 100%", ok,
           f"within={within}/10 rounds/m min={min(ratios):.4f} max={max(ratios):.4f} "
           f"certified={certified}/10")


def test_8_degenerate():
    n = 10**4
    details = []
    ok = True
    for name, H in (("C4", cycle(4)), ("K4", complete(4))):
        wins = 0
        for s in seeds(50, 8 if name == "C4" else 88):
            pt = run_degenerate_subgraph(RunConfig(n, s, 0, "pre"), H, "ln")
            e = pt.certificates["embedding"]
            if (pt.stopped_reason is StopReason.PROPERTY_REACHED and pt.rounds <= pt.certificates["budget"]
                    and check_embedding(pt.final_graph, H, e)
                    and contains_subgraph(pt.final_graph, H) is not None):
                wins += 1
        ok &= wins >= 45
        details.append(f"{name}={wins}/50")
    report(8, "degenerate subgraph embedded within budget in >=90% per pattern", ok, " ".join(details))


def test_9_induced_cycle():
    n = 10**4
    target = coupon_collector_mean(n)
    rounds, induced = [], 0
    for s in seeds(20, 9):
        pt = run_induced_cycle(RunConfig(n, s))
        rounds.append(pt.rounds)
        induced += is_induced_cycle_on(pt.final_graph, range(1, n))
    mean = statistics.fmean(rounds)
    ok = induced == 20 and abs(mean / target - 1) <= 0.07 and max(rounds) <= 2 * n * math.log(n)
    report(9, "induced (n-1)-cycle: oracle 100%, mean within 7% of n H_{n-1}, all <= 2n ln n", ok,
           f"induced={induced}/20 mean={mean:.0f} target={target:.0f} ratio={mean / target:.4f} "
           f"max={max(rounds)} cap={2 * n * math.log(n):.0f}")


def test_10_acyclicity():
    n = 10**5
    t = math.floor(math.sqrt(n) / math.log(n))
    cyclic = 0
    for s in seeds(200, 10):
        tr = run_until(RunConfig(n, s, t), strat_min_degree("post"), Never())
        assert tr.rounds == t
        cyclic += not is_acyclic(tr.final_graph)
    report(10, "2-min strategy for floor(sqrt n / ln n) rounds: cycle in <=10% of 200", cyclic <= 20,
           f"t={t} cyclic={cyclic}/200")


def _report_bytes(spec_dict):
    out = io.StringIO()
    err = io.StringIO()
    code = execute(ExperimentSpec.from_dict(dict(spec_dict)), out, err)
    return code, out.getvalue(), err.getvalue()


SPECS = [
    {"command": "estimate", "strategy": "kmin", "n": 3000, "k": 2, "trials": 4, "seed": 1},
    {"command": "estimate", "strategy": "s-min-star", "n": 2000, "k": 3, "trials": 3, "seed": 2},
    {"command": "estimate", "strategy": "connect", "n": 3000, "trials": 3, "seed": 3},
    {"command": "estimate", "strategy": "two-connect", "n": 2000, "trials": 3, "seed": 4},
    {"command": "estimate", "strategy": "degenerate", "pattern": "K4", "n": 2000, "trials": 3, "seed": 5},
    {"command": "estimate", "strategy": "bipartite", "m": 400, "n": 2000, "trials": 3, "seed": 6},
    {"command": "estimate", "strategy": "induced-cycle", "n": 1000, "trials": 3, "seed": 7,
     "format": "csv"},
    {"command": "couple", "strategy": "kmin", "n": 200, "rounds": 500, "trials": 5, "seed": 8},
]


def _factory():
    return strat_min_degree("post")


def test_11_determinism():
    problems = []
    for spec in SPECS:
        spec = dict(spec, omit_timing=True)
        a = _report_bytes(spec)
        b = _report_bytes(spec)
        if a != b or a[0] != 0:
            problems.append(spec["strategy"])
        if spec["command"] == "estimate":
            c = _report_bytes(dict(spec, workers=2))
            if c != a:
                problems.append(spec["strategy"] + "/workers")
    cfg = RunConfig(2000)
    base = estimate_hitting_time(cfg, _factory, MinDegreeAtLeast(2), 8, 99)
    shuffled = list(range(8))
    random.Random(1).shuffle(shuffled)
    other = estimate_hitting_time(cfg, _factory, MinDegreeAtLeast(2), 8, 99, order=shuffled)
    if base != other:
        problems.append("estimator-order")
    report(11, "byte-identical replays; estimates independent of scheduling", not problems,
           f"specs={len(SPECS)} problems={problems}")


if __name__ == "__main__":
    failed = 0
    tests = [(int(name.split("_")[1]), fn) for name, fn in globals().items() if name.startswith("test_")]
    for _, fn in sorted(tests):
        try:
            fn()
        except AssertionError:
            failed += 1
    sys.exit(1 if failed else 0)
