"""Central constants for the grasshopper planner.

Pure constants only, no configuration reading here.
All configuration is handled by the config/ module.
"""

from __future__ import annotations

# ============================================================================
# Exit Codes
# ============================================================================
EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_INVALID_INPUT = 2
EXIT_IMPOSSIBLE = 3

# ============================================================================
# CLI Commands
# ============================================================================
COMMANDS = [
    "simulate",
    "enlarge",
    "decompose",
    "check-membership",
    "gadget",
    "normalize",
    "search",
    "render",
    "certify",
    "make-config",
]

# ============================================================================
# Backends
# ============================================================================
BACKEND_RATIONAL = "rational"
BACKEND_CYCLOTOMIC = "cyclotomic"

# ============================================================================
# Regular polygons that cannot be enlarged
# ============================================================================
# N=3 keeps the triangle area, N=4 and N=6 stay on a square / triangular lattice.
IMPOSSIBLE_POLYGONS = {
    3: "a jump never changes the area of the triangle spanned by the three pieces",
    4: "the pieces stay on the integer lattice spanned by the square, "
    "so no larger square is reachable",
    6: "the pieces stay on the triangular lattice spanned by the hexagon, "
    "so no larger hexagon is reachable",
}

# ============================================================================
# Similarity verdicts
# ============================================================================
SIMILAR_LARGER = "similar_larger"
SIMILAR_NOT_LARGER = "similar_not_larger"
NOT_SIMILAR = "not_similar"
VERDICTS = [SIMILAR_LARGER, SIMILAR_NOT_LARGER, NOT_SIMILAR]

# ============================================================================
# Search
# ============================================================================
SEARCH_STRATEGIES = ["bfs", "iddfs"]
GOAL_SIMILAR_LARGER = "similar-larger"
GOAL_EXACT_TARGET = "exact-target"
DEFAULT_NODE_CAP = 50_000_000
DEFAULT_SEARCH_DEPTH = 4

# ============================================================================
# Output formatting
# ============================================================================
DEFAULT_FLOAT_DIGITS = 12
DEFAULT_SVG_MARGIN = 0.05
DEFAULT_SVG_SIZE = 600

# ============================================================================
# Decomposer
# ============================================================================
# Batches of AddTwice ops up to this size are emitted literally; larger
# batches become commutator words when a third index is available.
TRANSVECTION_LITERAL_LIMIT = 32
# decompose() multiplies words up to this length back as a self-check.
DECOMPOSE_CHECK_LIMIT = 200_000

# ============================================================================
# Known sequences
# ============================================================================
# Takes the regular pentagon to one that is sqrt(5) + 2 times larger.
PENTAGON_SEQUENCE = "4/0 4/3 2/0 3/2 4/1 1/2 1/3 3/1 2/3 1/3 3/0 2/4 1/4 4/0"
