"""Minimum-degree strategies and the k-min process."""
from __future__ import annotations

from functools import partial
from operator import ne

from ..errors import InvalidArgumentError
from ..oracles import MinDegreeAtLeast
from ..process import ProcessVariant, RunConfig, RunTrace, Strategy, run_until


class MinDegreePost(Strategy):
    """Circle uniform over the min-degree vertices not in N[square].

    If every min-degree vertex is the square or one of its neighbours the
    round fails; the edge is then recorded as a loop on the square so it
    leaves the simple graph untouched.
    """

    variant = ProcessVariant.POST
    phase = "kmin"

    def choose(self, g, square):
        bucket = g.min_degree_vertices()
        s = len(bucket)
        nbrs = g.adj[square]
        below = self.rng.below
        if s <= 4 * (len(nbrs) + 1):
            allowed = [v for v in bucket if v != square and v not in nbrs]
            if not allowed:
                return square, False
            return allowed[below(len(allowed))], True
        # at most a quarter of the bucket is excluded, so rejection is cheap
        while True:
            v = bucket[below(s)]
            if v != square and v not in nbrs:
                return v, True


class MinDegreePre(Strategy):
    """Circle uniform over the min-degree vertices; fails iff the square hits it."""

    variant = ProcessVariant.PRE
    phase = "kmin"

    def choose(self, g):
        bucket = g.min_degree_vertices()
        v = bucket[self.rng.below(len(bucket))]
        return v, partial(ne, v)


class SMinStarPost(Strategy):
    """Circle uniform over the smallest-degree vertices of V minus the square.

    Multi-edges are allowed, so the round always counts.
    """

    variant = ProcessVariant.POST
    phase = "kmin"

    def choose(self, g, square):
        bucket = g.min_degree_vertices()
        if len(bucket) == 1 and bucket[0] == square:
            d = g.min_degree() + 1
            while not g.vertices_of_degree(d):
                d += 1
            bucket = g.vertices_of_degree(d)
            return bucket[self.rng.below(len(bucket))], True
        s = len(bucket)
        while True:
            v = bucket[self.rng.below(s)]
            if v != square:
                return v, True


class SMinStarPre(MinDegreePre):
    """Pre-positional reading: commit to a min-degree vertex, fail on a loop."""


def strat_min_degree(variant=ProcessVariant.POST) -> Strategy:
    if ProcessVariant.parse(variant) is ProcessVariant.PRE:
        return MinDegreePre()
    return MinDegreePost()


def strat_s_min_star(variant=ProcessVariant.POST) -> Strategy:
    if ProcessVariant.parse(variant) is ProcessVariant.PRE:
        return SMinStarPre()
    return SMinStarPost()


def run_k_min(config: RunConfig, k: int) -> RunTrace:
    """Play the min-degree strategy until every vertex has ``k`` distinct neighbours."""
    if k < 1 or k >= config.n:
        raise InvalidArgumentError(f"k-min needs 1 <= k < n, got k={k}, n={config.n}")
    return run_until(config, strat_min_degree(config.variant), MinDegreeAtLeast(k))
