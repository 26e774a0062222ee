"""Configuration module for the grasshopper planner.

Reads from environment variables which can be set directly or loaded from a
.env file; see .env.example for details.

Usage:
    from config import NODE_CAP, SEARCH_DEPTH, get_settings
    from config import load_config  # Call once at startup to load .env
"""

from .config import (
    # Search
    NODE_CAP,
    SEARCH_STRATEGY,
    SEARCH_DEPTH,
    # Output
    FLOAT_DIGITS,
    SVG_MARGIN,
    SVG_SIZE,
    VERBOSE,
    # Helpers
    get_settings,
    load_config,
)

__all__ = [
    # Search
    "NODE_CAP",
    "SEARCH_STRATEGY",
    "SEARCH_DEPTH",
    # Output
    "FLOAT_DIGITS",
    "SVG_MARGIN",
    "SVG_SIZE",
    "VERBOSE",
    # Helpers
    "get_settings",
    "load_config",
]
