"""Constructive strategies and their phase-orchestrated runners."""
from __future__ import annotations

from .bipartite import run_bipartite, side_size
from .connect import (ComponentTracker, ConnectSmallestComponent, phase_index,
                      run_connect, strat_connect_smallest_component)
from .degenerate import (G_BUDGETS, PatternGraph, budget_function, degeneracy_ordering,
                         level_rounds, one_subdivision, run_degenerate_subgraph,
                         total_budget)
from .induced_cycle import SinkCycle, run_induced_cycle
from .mindegree import (MinDegreePost, MinDegreePre, SMinStarPost, SMinStarPre,
                        run_k_min, strat_min_degree, strat_s_min_star)
from .two_connect import PHASES as TWO_CONNECT_PHASES
from .two_connect import run_two_connect

__all__ = [
    "ComponentTracker", "ConnectSmallestComponent", "G_BUDGETS", "MinDegreePost",
    "MinDegreePre", "PatternGraph", "SMinStarPost", "SMinStarPre", "SinkCycle",
    "TWO_CONNECT_PHASES", "budget_function", "degeneracy_ordering", "level_rounds",
    "one_subdivision", "phase_index", "run_bipartite", "run_connect",
    "run_degenerate_subgraph", "run_induced_cycle", "run_k_min", "run_two_connect",
    "side_size", "strat_connect_smallest_component", "strat_min_degree",
    "strat_s_min_star", "total_budget",
]
