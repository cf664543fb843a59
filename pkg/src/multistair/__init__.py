"""Representation types of multi-graded staircase algebras and nilpotent tuples."""

__version__ = "0.1.0"
