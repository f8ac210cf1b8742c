"""Exact spanning-tree and 2-forest counting and resistance distance,
with reductions across cut vertices and 2-separators."""

from .forests import count_2forests_det, count_2forests_pair, count_trees_det
from .graph import MultiGraph, build, identify, natural_split, split, two_switch
from .resistance import resistance
from .separation import Solver, solve

__all__ = [
    "MultiGraph",
    "Solver",
    "build",
    "count_2forests_det",
    "count_2forests_pair",
    "count_trees_det",
    "identify",
    "natural_split",
    "resistance",
    "solve",
    "split",
    "two_switch",
]

__version__ = "0.1.0"
