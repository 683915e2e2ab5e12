"""Computing functions over acyclic networks: equivalence classes, cut bounds, codes."""

from .bounds import (
    BoundReport,
    CutRatio,
    enumerate_cuts,
    min_cut_A,
    min_cut_bound,
    min_cut_K,
    prop1_capacity,
    prop2_bound,
    rate_certificate,
)
from .code import NetworkCode, SearchConfig, exhaustive_search, execute, verify
from .equivalence import count_R, count_W, partition
from .function import TargetFunction, builtin
from .instances import instance
from .network import Edge, Network, split_sources
from .tree import construct, plan, tree_capacity_report

__all__ = [
    "BoundReport", "CutRatio", "Edge", "Network", "NetworkCode", "SearchConfig",
    "TargetFunction", "builtin", "construct", "count_R", "count_W", "enumerate_cuts",
    "execute", "exhaustive_search", "instance", "min_cut_A", "min_cut_K", "min_cut_bound",
    "partition", "plan", "prop1_capacity", "prop2_bound", "rate_certificate",
    "split_sources", "tree_capacity_report", "verify",
]
