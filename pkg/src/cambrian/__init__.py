"""Sortable elements, Cambrian cones and torsion pairs for acyclic quivers."""

from .coxeter import CoxeterGroup, GroupElement
from .quiver import Quiver, parse_quiver

__all__ = ["CoxeterGroup", "GroupElement", "Quiver", "parse_quiver"]
