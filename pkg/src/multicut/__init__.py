"""Exact edge-multicut solver with cut enumeration, reductions and a 2-SAT endgame."""

from multicut.graph import GraphError, Instance, MultiGraph, UncuttableError
from multicut.kernels import BACKEND
from multicut.solver import SolveConfig, SolveResult, Verdict, brute_force, solve, verify_multicut

__all__ = [
    "BACKEND",
    "GraphError",
    "Instance",
    "MultiGraph",
    "SolveConfig",
    "SolveResult",
    "UncuttableError",
    "Verdict",
    "brute_force",
    "solve",
    "verify_multicut",
]
__version__ = "0.1.0"
