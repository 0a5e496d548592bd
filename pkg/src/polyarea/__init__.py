"""Exact Min-Area and Max-Area polygonization of planar point sets by branch-and-cut."""
from .instance import Instance, Polygonization, SolutionRecord, parse_instance, validate_polygonization
from .solver import DEFAULT_PRESET, PRESETS, solve

__all__ = [
    "Instance",
    "Polygonization",
    "SolutionRecord",
    "parse_instance",
    "validate_polygonization",
    "solve",
    "PRESETS",
    "DEFAULT_PRESET",
]
