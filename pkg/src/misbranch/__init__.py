"""Exact maximum independent set by branch-and-reduce with pluggable branching."""

from .branching import Strategy
from .estimator import MaximumIndependentSet
from .graph import Graph, build_graph
from .oracle import brute_force_mis
from .solver import SolveReport, SolverConfig, solve

__all__ = [
    "Graph",
    "MaximumIndependentSet",
    "SolveReport",
    "SolverConfig",
    "Strategy",
    "brute_force_mis",
    "build_graph",
    "solve",
]

__version__ = "0.1.0"
