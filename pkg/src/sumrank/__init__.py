"""Exact combinatorics and seeded experiments for sum-rank metric codes."""

__version__ = "0.1.0"
