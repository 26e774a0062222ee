#!/usr/bin/env python
"""Command-line surface for the grasshopper planner.

Usage:
    grasshopper simulate data/pentagon.json data/pentagon.jumps
    grasshopper enlarge 7 --out plans/heptagon.json
    grasshopper decompose matrix.json
    grasshopper search data/square.json --depth 4
    grasshopper render data/pentagon.json data/pentagon.jumps --out pentagon.svg

Exit codes: 0 success, 1 verification failure, 2 invalid input,
3 no enlargement possible for this N.

See .env.example for the configuration options.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Callable

# Add parent directory to path for imports
sys.path.insert(0, str(Path(__file__).parent.parent))

from config import get_settings, load_config  # noqa: E402

load_config()

from grasshopper.configuration import (  # noqa: E402
    Configuration,
    JumpSequence,
    apply_sequence,
    lattice_vector,
    normalize_sequence,
    point_scale,
    point_sub,
    point_to_float,
    regular_polygon,
    regular_polygon_with_center,
    special_piece_lattice_check,
    translate,
    translation_gadget,
    unit_square,
    unit_triangle,
)
from grasshopper.constants import (  # noqa: E402
    EXIT_IMPOSSIBLE,
    EXIT_INVALID_INPUT,
    EXIT_OK,
    EXIT_VERIFICATION_FAILED,
    GOAL_EXACT_TARGET,
    GOAL_SIMILAR_LARGER,
    NOT_SIMILAR,
    SEARCH_STRATEGIES,
    VERDICTS,
)
from grasshopper.decomposer import decompose, is_member  # noqa: E402
from grasshopper.errors import (  # noqa: E402
    GrasshopperError,
    ImpossibleError,
    InvalidInputError,
    VerificationError,
)
from grasshopper.exact_algebra import Mod2Matrix, det, reduce_mod2  # noqa: E402
from grasshopper.formats import (  # noqa: E402
    configuration_to_dict,
    dump_configuration,
    format_float,
    format_jumps,
    format_point,
    load_configuration,
    load_jumps,
    load_matrix,
    write_text_atomic,
)
from grasshopper.planner import certify_matrix, plan_enlargement, verify_similarity_enlargement  # noqa: E402
from grasshopper.render import render_svg  # noqa: E402
from grasshopper.search import Goal, SearchSpec, search  # noqa: E402
from grasshopper.similarity import find_similarity, is_regular_polygon  # noqa: E402


# =============================================================================
# Output helpers
# =============================================================================

def _log(tag: str, message: str) -> None:
    print(f"[{tag}] {message}", file=sys.stderr)


def _progress(tag: str, verbose: bool) -> Callable[[str], None]:
    if verbose:
        return lambda message: _log(tag, message)
    return lambda message: None


def _dump_json(payload: Any) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _emit(text: str, out: Path | None) -> None:
    """stdout, or an atomic write to `out`."""
    if out is None:
        sys.stdout.write(text)
        return
    write_text_atomic(out, text)
    _log("write", str(out))


def _float_point(p: Any, digits: int) -> str:
    return "(" + ", ".join(format_float(x, digits) for x in point_to_float(p)) + ")"


# =============================================================================
# Commands
# =============================================================================

def cmd_simulate(args: argparse.Namespace) -> int:
    start = load_configuration(args.config)
    jumps = load_jumps(args.jumps)
    if args.reverse:
        jumps = jumps.inverse()
    final = apply_sequence(start, jumps)
    sim = find_similarity(start, final)
    verdict = NOT_SIMILAR if sim is None else sim.verdict
    regular = is_regular_polygon(final)
    digits = args.digits

    if args.json:
        payload = {
            "final": configuration_to_dict(final),
            "floats": [list(point_to_float(p)) for p in final.positions],
            "jumps": len(jumps),
            "regular_polygon": regular,
            "verdict": verdict,
            "scale": None if sim is None else sim.scale_float,
        }
        sys.stdout.write(_dump_json(payload))
    else:
        print(f"jumps: {len(jumps)}")
        for k, p in enumerate(final.positions):
            print(f"piece {k}: {format_point(p)}  ~ {_float_point(p, digits)}")
        print(f"regular {final.n_pieces}-gon: {'yes' if regular else 'no'}")
        print(f"verdict: {verdict}")
        if sim is not None:
            print(f"scale: {format_float(sim.scale_float, digits)}")

    if args.out is not None:
        write_text_atomic(args.out, dump_configuration(final))
        _log("write", str(args.out))
    if args.expect is not None and args.expect != verdict:
        print(f"[!] expected {args.expect}, got {verdict}", file=sys.stderr)
        return EXIT_VERIFICATION_FAILED
    return EXIT_OK


def cmd_enlarge(args: argparse.Namespace) -> int:
    plan = plan_enlargement(args.n, progress=_progress("plan", args.verbose))
    _log("plan", f"N={plan.n_pieces}: i={plan.index}, t={plan.t}, {plan.word_length} jumps, "
         f"scale {format_float(float(plan.scale()), args.digits)}")
    if args.out is None:
        sys.stdout.write(_dump_json(plan.to_dict()))
        return EXIT_OK
    jumps_out = args.jumps_out or args.out.with_suffix(".jumps")
    write_text_atomic(args.out, _dump_json(plan.to_dict()))
    write_text_atomic(jumps_out, format_jumps(plan.jumps))
    _log("write", f"{args.out}, {jumps_out}")
    return EXIT_OK


def cmd_decompose(args: argparse.Namespace) -> int:
    matrix = load_matrix(args.matrix)
    jumps = decompose(matrix)
    _log("decompose", f"{matrix.n}x{matrix.n} matrix -> {len(jumps)} jumps")
    _emit(format_jumps(jumps), args.out)
    return EXIT_OK


def cmd_check_membership(args: argparse.Namespace) -> int:
    matrix = load_matrix(args.matrix)
    d = det(matrix)
    parity = reduce_mod2(matrix) == Mod2Matrix.identity(matrix.n)
    member = is_member(matrix)
    sys.stdout.write(_dump_json({"member": member, "det": d, "parity_ok": parity}))
    return EXIT_OK if member else EXIT_VERIFICATION_FAILED


def cmd_gadget(args: argparse.Namespace) -> int:
    c = load_configuration(args.config)
    gadget = translation_gadget(c, args.piece)
    shift = point_scale(2, point_sub(c.positions[args.piece], c.special))
    if apply_sequence(c, gadget) != translate(c, shift):
        raise VerificationError(f"gadget for piece {args.piece} does not translate by {format_point(shift)}")
    _log("verify", f"{len(gadget)} jumps translate every piece by {format_point(shift)}")
    _emit(format_jumps(gadget), args.out)
    return EXIT_OK


def cmd_normalize(args: argparse.Namespace) -> int:
    c = load_configuration(args.config)
    jumps = load_jumps(args.jumps)
    w, stationary = normalize_sequence(c, jumps)
    final = apply_sequence(c, jumps)
    if translate(apply_sequence(c, stationary), lattice_vector(c, w)) != final:
        raise VerificationError("normalized run translated by 2Pw differs from the original run")
    in_lattice = special_piece_lattice_check(c, final)
    if not in_lattice:
        raise VerificationError(f"special piece ended at {format_point(final.special)}, outside 2L")
    _log("verify", f"w={list(w)}, {len(stationary)} stationary jumps, special piece in 2L")
    if args.out is not None:
        write_text_atomic(args.out, format_jumps(stationary))
        _log("write", str(args.out))
    payload = {"w": list(w), "jumps": str(stationary), "length": len(stationary), "special_in_2L": in_lattice}
    sys.stdout.write(_dump_json(payload))
    return EXIT_OK


def cmd_search(args: argparse.Namespace) -> int:
    start = load_configuration(args.config)
    if args.goal == GOAL_EXACT_TARGET:
        if args.target is None:
            raise InvalidInputError("--goal exact-target needs --target CONFIG")
        goal = Goal.exact_target(load_configuration(args.target))
    else:
        goal = Goal.similar_larger()
    spec = SearchSpec(start, goal, args.depth, dedup=not args.no_dedup, node_cap=args.node_cap)
    report = search(spec, args.strategy, progress=_progress("search", args.verbose))
    outcome = "found" if report.found is not None else ("none (exhaustive)" if report.exhaustive else "none (partial)")
    _log("search", f"{outcome}; {report.nodes_expanded} nodes expanded, depth {report.depth_reached}")
    _emit(_dump_json(report.to_dict()), args.out)
    return EXIT_OK


def cmd_render(args: argparse.Namespace) -> int:
    start = load_configuration(args.config)
    jumps = load_jumps(args.jumps) if args.jumps is not None else JumpSequence()
    svg = render_svg(start, jumps, margin=args.margin, size=args.size)
    _emit(svg, args.out)
    return EXIT_OK


def cmd_certify(args: argparse.Namespace) -> int:
    c = load_configuration(args.config)
    matrix = load_matrix(args.matrix)
    if args.verdict_only:
        verdict = verify_similarity_enlargement(c, matrix)
        print(verdict)
        return EXIT_OK
    plan = certify_matrix(c, matrix, progress=_progress("certify", args.verbose))
    _log("certify", f"t={plan.t}, {plan.word_length} jumps, scale {format_float(float(plan.scale()), args.digits)}")
    _emit(_dump_json(plan.to_dict()), args.out)
    return EXIT_OK


def cmd_make_config(args: argparse.Namespace) -> int:
    c: Configuration
    if args.polygon is not None:
        if args.center:
            if args.order is not None:
                raise InvalidInputError("--order is not supported together with --center")
            c = regular_polygon_with_center(args.polygon)
        else:
            c = regular_polygon(args.polygon, order=args.order)
    elif args.square:
        c = unit_square()
    elif args.triangle:
        c = unit_triangle()
    else:
        raise InvalidInputError("choose one of --polygon N, --square, --triangle")
    _emit(dump_configuration(c), args.out)
    return EXIT_OK


# =============================================================================
# Argument parsing
# =============================================================================

def build_parser() -> argparse.ArgumentParser:
    """Parser whose defaults come from the environment and .env at call time."""
    settings = get_settings()
    parser = argparse.ArgumentParser(
        prog="grasshopper",
        description="Plan and verify grasshopper jump sequences with exact arithmetic",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
    grasshopper simulate data/pentagon.json data/pentagon.jumps   # sqrt(5)+2 larger pentagon
    grasshopper enlarge 5 --out plans/pentagon.json               # plan + plans/pentagon.jumps
    grasshopper check-membership matrix.json                      # exit 1 if not a product
    grasshopper search data/square.json --depth 4                 # exhaustive negative
    grasshopper make-config --polygon 7 --out heptagon.json
        """,
    )
    parser.add_argument(
        "-v",
        "--verbose",
        action="store_true",
        default=settings["verbose"],
        help="Print [tag] progress lines on stderr",
    )
    parser.add_argument(
        "--digits",
        type=int,
        default=settings["float_digits"],
        metavar="N",
        help=f"Significant digits of printed floats (default: {settings['float_digits']})",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("simulate", help="Apply a jump sequence and classify the result")
    p.add_argument("config", type=Path, help="Configuration JSON")
    p.add_argument("jumps", type=Path, help="Jump sequence file (i/j tokens)")
    p.add_argument("--reverse", action="store_true", help="Apply the inverse sequence instead")
    p.add_argument(
        "--expect",
        choices=VERDICTS,
        metavar="VERDICT",
        help=f"Exit 1 unless the verdict matches. Choices: {', '.join(VERDICTS)}",
    )
    p.add_argument("--json", action="store_true", help="Print a JSON report instead of text")
    p.add_argument("--out", type=Path, metavar="PATH", help="Write the final configuration JSON")
    p.set_defaults(handler=cmd_simulate)

    p = sub.add_parser("enlarge", help="Plan a sequence enlarging the regular N-gon")
    p.add_argument("n", type=int, metavar="N", help="Number of pieces / polygon vertices")
    p.add_argument("--out", type=Path, metavar="PATH", help="Plan JSON path (default: stdout)")
    p.add_argument(
        "--jumps-out",
        type=Path,
        metavar="PATH",
        help="Jump sequence path (default: --out with suffix .jumps)",
    )
    p.set_defaults(handler=cmd_enlarge)

    p = sub.add_parser("decompose", help="Write a matrix as jumps (elementary involutions)")
    p.add_argument("matrix", type=Path, help='Matrix JSON: [[...], ...] or {"matrix": [[...]]}')
    p.add_argument("--out", type=Path, metavar="PATH", help="Jump sequence path (default: stdout)")
    p.set_defaults(handler=cmd_decompose)

    p = sub.add_parser("check-membership", help="Is the matrix a product of elementary involutions?")
    p.add_argument("matrix", type=Path, help="Matrix JSON")
    p.set_defaults(handler=cmd_check_membership)

    p = sub.add_parser("gadget", help="Translation gadget S_a for a configuration")
    p.add_argument("config", type=Path, help="Configuration JSON")
    p.add_argument("piece", type=int, metavar="A", help="Ordinary piece defining the translation")
    p.add_argument("--out", type=Path, metavar="PATH", help="Jump sequence path (default: stdout)")
    p.set_defaults(handler=cmd_gadget)

    p = sub.add_parser("normalize", help="Rewrite a sequence so the special piece never moves")
    p.add_argument("config", type=Path, help="Configuration JSON")
    p.add_argument("jumps", type=Path, help="Jump sequence file")
    p.add_argument("--out", type=Path, metavar="PATH", help="Write the stationary sequence here")
    p.set_defaults(handler=cmd_normalize)

    p = sub.add_parser("search", help="Bounded search for a short enlarging sequence")
    p.add_argument("config", type=Path, help="Start configuration JSON")
    p.add_argument(
        "--depth",
        type=int,
        default=settings["search_depth"],
        metavar="D",
        help=f"Maximum sequence length (default: {settings['search_depth']})",
    )
    p.add_argument(
        "--goal",
        choices=[GOAL_SIMILAR_LARGER, GOAL_EXACT_TARGET],
        default=GOAL_SIMILAR_LARGER,
        help=f"Goal predicate (default: {GOAL_SIMILAR_LARGER})",
    )
    p.add_argument("--target", type=Path, metavar="PATH", help="Target configuration for exact-target")
    p.add_argument(
        "--node-cap",
        type=int,
        default=settings["node_cap"],
        metavar="N",
        help=f"Stop after this many distinct states (default: {settings['node_cap']})",
    )
    p.add_argument(
        "--strategy",
        choices=SEARCH_STRATEGIES,
        default=settings["search_strategy"],
        help=f"Search strategy (default: {settings['search_strategy']})",
    )
    p.add_argument("--no-dedup", action="store_true", help="Do not deduplicate states (BFS)")
    p.add_argument("--out", type=Path, metavar="PATH", help="Report JSON path (default: stdout)")
    p.set_defaults(handler=cmd_search)

    p = sub.add_parser("render", help="Draw a jump sequence as SVG")
    p.add_argument("config", type=Path, help="Planar configuration JSON")
    p.add_argument("jumps", type=Path, nargs="?", help="Jump sequence file (default: no jumps)")
    p.add_argument("--out", type=Path, metavar="PATH", help="SVG path (default: stdout)")
    p.add_argument(
        "--margin",
        type=float,
        default=settings["svg_margin"],
        metavar="F",
        help=f"Margin as a fraction of the bounding box (default: {settings['svg_margin']})",
    )
    p.add_argument(
        "--size",
        type=int,
        default=settings["svg_size"],
        metavar="PX",
        help=f"SVG width in pixels (default: {settings['svg_size']})",
    )
    p.set_defaults(handler=cmd_render)

    p = sub.add_parser("certify", help="Turn an enlarging |det|=1 matrix into verified jumps")
    p.add_argument("config", type=Path, help="Configuration JSON, special piece at the origin")
    p.add_argument("matrix", type=Path, help="Integer matrix JSON with |det| = 1")
    p.add_argument(
        "--verdict-only",
        action="store_true",
        help="Only classify P @ A against P (similar_larger, similar_not_larger, not_similar)",
    )
    p.add_argument("--out", type=Path, metavar="PATH", help="Plan JSON path (default: stdout)")
    p.set_defaults(handler=cmd_certify)

    p = sub.add_parser("make-config", help="Write a standard configuration JSON")
    shape = p.add_mutually_exclusive_group(required=True)
    shape.add_argument("--polygon", type=int, metavar="N", help="Regular N-gon (cyclotomic backend)")
    shape.add_argument("--square", action="store_true", help="Unit square (rational backend)")
    shape.add_argument("--triangle", action="store_true", help="Right unit triangle (rational backend)")
    p.add_argument("--center", action="store_true", help="Add the polygon center as a further piece")
    p.add_argument("--order", type=int, metavar="K", help="Cyclotomic order K; Z[zeta_K] must hold the N-th roots of unity (default: N)")
    p.add_argument("--out", type=Path, metavar="PATH", help="Output path (default: stdout)")
    p.set_defaults(handler=cmd_make_config)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except ImpossibleError as exc:
        print(f"[!] {exc}", file=sys.stderr)
        return EXIT_IMPOSSIBLE
    except (InvalidInputError, OSError) as exc:
        print(f"[!] {exc}", file=sys.stderr)
        return EXIT_INVALID_INPUT
    except VerificationError as exc:
        print(f"[!] verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFICATION_FAILED
    except GrasshopperError as exc:
        print(f"[!] {exc}", file=sys.stderr)
        return EXIT_VERIFICATION_FAILED


if __name__ == "__main__":
    sys.exit(main())
