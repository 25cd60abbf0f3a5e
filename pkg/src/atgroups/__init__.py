"""Finite p-groups with a unique A_2-subgroup: enumeration, lattices, A_t levels."""

__version__ = "0.1.0"

from .engine import ConcreteGroup, enumerate_group
from .presentation import FreeWord, Presentation, load_presentation, parse_presentation

__all__ = [
    "ConcreteGroup",
    "FreeWord",
    "Presentation",
    "enumerate_group",
    "load_presentation",
    "parse_presentation",
]
