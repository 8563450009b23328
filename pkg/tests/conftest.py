from __future__ import annotations

import random

import pytest

from semirandom.graph import SimpleGraph


def random_simple_graph(rnd: random.Random, n: int, p: float) -> SimpleGraph:
    edges = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1) if rnd.random() < p]
    return SimpleGraph.from_edges(n, edges)


def make(n, edges):
    return SimpleGraph.from_edges(n, edges)


def cycle(n):
    return make(n, [(i, i % n + 1) for i in range(1, n + 1)])


def path(n):
    return make(n, [(i, i + 1) for i in range(1, n)])


def complete(n):
    return make(n, [(a, b) for a in range(1, n + 1) for b in range(a + 1, n + 1)])


@pytest.fixture
def rnd():
    return random.Random(12345)


# one line per acceptance criterion, printed after the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
