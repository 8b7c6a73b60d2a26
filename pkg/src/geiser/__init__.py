"""Exact calculus of Geiser involutions on cuspidal curves and of curves against a nodal cubic."""

__version__ = "0.1.0"
