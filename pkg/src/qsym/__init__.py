"""Exact workbench for classical r-matrices, Lie bialgebras and quantum sl2."""

__version__ = "0.1.0"
