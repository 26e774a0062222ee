"""Grasshopper jumps: exact planning and verification of point-reflection moves.

Pieces sit at points; a jump moves one piece to its mirror image through
another. This package provides:

- exact_algebra: integer matrices, GF(2) matrices, cyclotomic integers
- configuration: configurations, jumps, simulation, translations, lattice checks
- decomposer: products of elementary involutions (membership and words)
- planner: enlarging sequences for regular polygons and certificate checks
- search: bounded BFS / IDDFS for short enlarging sequences
- similarity, formats, render: verdicts, file formats and SVG output
"""

from grasshopper.configuration import (
    Backend,
    Configuration,
    Jump,
    JumpSequence,
    apply_jump,
    apply_matrix,
    apply_sequence,
    elementary_involution,
    lattice_vector,
    normalize_sequence,
    rational_configuration,
    regular_polygon,
    regular_polygon_with_center,
    sequence_to_matrix,
    special_piece_lattice_check,
    trajectory,
    translate,
    translation_gadget,
    unit_square,
    unit_triangle,
)
from grasshopper.decomposer import decompose, is_member, transvection_word
from grasshopper.errors import (
    GrasshopperError,
    ImpossibleError,
    InvalidCertificateError,
    InvalidInputError,
    MembershipError,
    SingularMatrixError,
    VerificationError,
)
from grasshopper.exact_algebra import (
    CyclotomicInt,
    IntMatrix,
    Mod2Matrix,
    cyc_div,
    cyc_sign,
    det,
    mod2_order,
    reduce_mod2,
)
from grasshopper.planner import (
    EnlargementPlan,
    build_B,
    build_M,
    certify_matrix,
    choose_index,
    plan_enlargement,
    verify_similarity_enlargement,
)
from grasshopper.render import render_svg
from grasshopper.search import Goal, SearchReport, SearchSpec, bfs_search, canonicalize, iddfs_search, search
from grasshopper.similarity import Similarity, classify, find_similarity, is_regular_polygon

__all__ = [
    # configuration
    "Backend",
    "Configuration",
    "Jump",
    "JumpSequence",
    "apply_jump",
    "apply_matrix",
    "apply_sequence",
    "elementary_involution",
    "lattice_vector",
    "normalize_sequence",
    "rational_configuration",
    "regular_polygon",
    "regular_polygon_with_center",
    "sequence_to_matrix",
    "special_piece_lattice_check",
    "trajectory",
    "translate",
    "translation_gadget",
    "unit_square",
    "unit_triangle",
    # decomposer
    "decompose",
    "is_member",
    "transvection_word",
    # errors
    "GrasshopperError",
    "ImpossibleError",
    "InvalidCertificateError",
    "InvalidInputError",
    "MembershipError",
    "SingularMatrixError",
    "VerificationError",
    # exact_algebra
    "CyclotomicInt",
    "IntMatrix",
    "Mod2Matrix",
    "cyc_div",
    "cyc_sign",
    "det",
    "mod2_order",
    "reduce_mod2",
    # planner
    "EnlargementPlan",
    "build_B",
    "build_M",
    "certify_matrix",
    "choose_index",
    "plan_enlargement",
    "verify_similarity_enlargement",
    # render
    "render_svg",
    # search
    "Goal",
    "SearchReport",
    "SearchSpec",
    "bfs_search",
    "canonicalize",
    "iddfs_search",
    "search",
    # similarity
    "Similarity",
    "classify",
    "find_similarity",
    "is_regular_polygon",
]
