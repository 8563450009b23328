"""Simulation of semi-random graph processes.

Each round one endpoint (the square) is uniform on [n] and the other (the
circle) is picked by a strategy, either after seeing the square
(post-positional) or before (pre-positional).
"""
from __future__ import annotations

from .blocks import (BalancedColouring, BlockDecomposition, BranchInfo, ReducedBlockTree,
                     balance_colouring, block_cut_tree, block_decomposition, block_graph,
                     branch_rooted_at, leaf_blocks, reduced_block_tree)
from .constants import closed_form_alpha, coupon_collector_mean
from .errors import SemiRandomError
from .graph import (EdgeRecord, SemiRandomGraph, SimpleGraph, add_semirandom_edge, components,
                    distinct_degree, new_graph, parse_simple_graph, simple_view)
from .oracles import (contains_subgraph, crossing_edges, has_min_degree, is_acyclic,
                      is_induced_cycle_on, is_k_connected, vertex_connectivity)
from .process import (HittingTimeEstimate, PhasedTrace, Process, ProcessVariant, RunConfig,
                      RunTrace, StopReason, Strategy, coupled_run, estimate_hitting_time,
                      run_until, step)

__all__ = [
    "BalancedColouring",
    "BlockDecomposition",
    "BranchInfo",
    "EdgeRecord",
    "HittingTimeEstimate",
    "PhasedTrace",
    "Process",
    "ProcessVariant",
    "ReducedBlockTree",
    "RunConfig",
    "RunTrace",
    "SemiRandomError",
    "SemiRandomGraph",
    "SimpleGraph",
    "StopReason",
    "Strategy",
    "add_semirandom_edge",
    "balance_colouring",
    "block_cut_tree",
    "block_decomposition",
    "block_graph",
    "branch_rooted_at",
    "closed_form_alpha",
    "components",
    "contains_subgraph",
    "coupled_run",
    "coupon_collector_mean",
    "crossing_edges",
    "distinct_degree",
    "estimate_hitting_time",
    "has_min_degree",
    "is_acyclic",
    "is_induced_cycle_on",
    "is_k_connected",
    "leaf_blocks",
    "new_graph",
    "parse_simple_graph",
    "reduced_block_tree",
    "run_until",
    "simple_view",
    "step",
    "vertex_connectivity",
]

__version__ = "0.1.0"
