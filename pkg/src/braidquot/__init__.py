"""Totally symmetric sets and braid group quotient searches in finite groups."""

__version__ = "0.1.0"
