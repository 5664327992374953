"""Exact construction of gl(2|2) representations from a boson-fermion realization."""

__version__ = "0.1.0"
