"""Scripts package for the grasshopper planner.

- cli: the `grasshopper` command (simulate, enlarge, decompose, search, ...)
"""
from scripts.cli import build_parser, main

__all__ = [
    "build_parser",
    "main",
]
