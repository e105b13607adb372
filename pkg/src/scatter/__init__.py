"""Vertex deletion to scattered graph classes given by finite forbidden families."""
from .classes import ClassFamily, ForbiddenFamily, PatternGraph, builtin, class_family, is_scattered_modulator
from .graph import Graph
from .instances import CompressionInstance, ScatteredInstance, SolveResult
from .solver import SolverConfig, solve

__all__ = [
    "ClassFamily", "ForbiddenFamily", "PatternGraph", "builtin", "class_family",
    "is_scattered_modulator", "Graph", "CompressionInstance", "ScatteredInstance",
    "SolveResult", "SolverConfig", "solve",
]
__version__ = "0.1.0"
