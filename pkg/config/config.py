"""Configuration for the grasshopper planner.

Reads from environment variables which can be set directly or loaded from a
.env file; see .env.example for details.

Configuration precedence:
1. Command-line flags (handled by scripts/cli.py)
2. Environment variables
3. .env file in project root
4. Defaults defined here (lowest priority)

This module is imported by:
- scripts/cli.py (defaults for search, rendering and output)
"""

import os
from pathlib import Path
from typing import Optional

from grasshopper.constants import (
    DEFAULT_FLOAT_DIGITS,
    DEFAULT_NODE_CAP,
    DEFAULT_SEARCH_DEPTH,
    DEFAULT_SVG_MARGIN,
    DEFAULT_SVG_SIZE,
    SEARCH_STRATEGIES,
)

# Lazy-loaded flag to avoid loading .env multiple times
_config_loaded = False


def load_config(env_file: Optional[Path] = None) -> None:
    """Load configuration from .env file.

    Safe to call multiple times (subsequent calls are no-ops).

    Args:
        env_file: Path to .env file. Defaults to project root .env
    """
    global _config_loaded
    if _config_loaded:
        return

    try:
        from dotenv import load_dotenv

        if env_file is None:
            # config/ -> project root
            env_file = Path(__file__).parent.parent / ".env"

        if env_file.exists():
            load_dotenv(env_file, override=False)

        _config_loaded = True
    except ImportError:
        # python-dotenv not required if env vars are set directly
        pass


# Auto-load config on import (safe - uses override=False)
load_config()


# =============================================================================
# Helper Functions
# =============================================================================

def _get_env(key: str, default: Optional[str] = None) -> Optional[str]:
    """Get environment variable with fallback."""
    return os.environ.get(key, default)


def _get_env_int(key: str, default: int) -> int:
    """Get integer from environment variable."""
    val = os.environ.get(key)
    if val is None or val == "":
        return default
    try:
        return int(val)
    except ValueError:
        return default


def _get_env_float(key: str, default: float) -> float:
    """Get float from environment variable."""
    val = os.environ.get(key)
    if val is None or val == "":
        return default
    try:
        return float(val)
    except ValueError:
        return default


def _get_env_bool(key: str, default: bool = False) -> bool:
    """Get boolean from environment variable."""
    val = os.environ.get(key)
    if val is None or val == "":
        return default
    return val.lower() in ("true", "1", "yes", "on")


# =============================================================================
# Search
# =============================================================================

# Upper bound on distinct states kept by BFS (nodes expanded for IDDFS)
NODE_CAP = _get_env_int("GRASSHOPPER_NODE_CAP", DEFAULT_NODE_CAP)

# bfs or iddfs
SEARCH_STRATEGY = _get_env("GRASSHOPPER_SEARCH_STRATEGY", "bfs")
if SEARCH_STRATEGY not in SEARCH_STRATEGIES:
    SEARCH_STRATEGY = "bfs"

SEARCH_DEPTH = _get_env_int("GRASSHOPPER_SEARCH_DEPTH", DEFAULT_SEARCH_DEPTH)


# =============================================================================
# Output
# =============================================================================

# Significant digits of printed floats
FLOAT_DIGITS = _get_env_int("GRASSHOPPER_FLOAT_DIGITS", DEFAULT_FLOAT_DIGITS)

# Fraction of the bounding box added on every side of rendered SVGs
SVG_MARGIN = _get_env_float("GRASSHOPPER_SVG_MARGIN", DEFAULT_SVG_MARGIN)

SVG_SIZE = _get_env_int("GRASSHOPPER_SVG_SIZE", DEFAULT_SVG_SIZE)

# Print [tag] progress lines on stderr
VERBOSE = _get_env_bool("GRASSHOPPER_VERBOSE", False)


def get_settings() -> dict[str, object]:
    """Current settings as a plain dict, read fresh from the environment."""
    strategy = _get_env("GRASSHOPPER_SEARCH_STRATEGY", "bfs")
    return {
        "node_cap": _get_env_int("GRASSHOPPER_NODE_CAP", DEFAULT_NODE_CAP),
        "search_strategy": strategy if strategy in SEARCH_STRATEGIES else "bfs",
        "search_depth": _get_env_int("GRASSHOPPER_SEARCH_DEPTH", DEFAULT_SEARCH_DEPTH),
        "float_digits": _get_env_int("GRASSHOPPER_FLOAT_DIGITS", DEFAULT_FLOAT_DIGITS),
        "svg_margin": _get_env_float("GRASSHOPPER_SVG_MARGIN", DEFAULT_SVG_MARGIN),
        "svg_size": _get_env_int("GRASSHOPPER_SVG_SIZE", DEFAULT_SVG_SIZE),
        "verbose": _get_env_bool("GRASSHOPPER_VERBOSE", False),
    }
