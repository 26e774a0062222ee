"""File formats: configuration JSON, jump-sequence text, matrix JSON.

Configuration JSON:
    {"dim": 2, "backend": "rational", "points": [["0", "0"], ["1/2", "1"]]}
    {"dim": 2, "backend": {"cyclotomic": 5}, "points": [[0, 0, 0, 0], [-1, 1, 0, 0]]}

Jump text: whitespace-separated "i/j" tokens (piece i jumps over piece j);
"#" starts a comment that runs to the end of the line.
"""

from __future__ import annotations

import json
import os
import re
from fractions import Fraction
from pathlib import Path
from typing import Any

from .configuration import Backend, Configuration, Jump, JumpSequence, Point
from .constants import BACKEND_CYCLOTOMIC, BACKEND_RATIONAL, DEFAULT_FLOAT_DIGITS
from .errors import InvalidInputError
from .exact_algebra import CyclotomicInt, IntMatrix

_TOKEN = re.compile(r"^(\d+)/(\d+)$")


# =============================================================================
# Configuration JSON
# =============================================================================


def backend_from_json(value: Any) -> Backend:
    if value == BACKEND_RATIONAL:
        return Backend.rational()
    if isinstance(value, dict) and set(value) == {BACKEND_CYCLOTOMIC}:
        order = value[BACKEND_CYCLOTOMIC]
        if not isinstance(order, int) or isinstance(order, bool):
            raise InvalidInputError(f"cyclotomic order must be an integer, got {order!r}")
        return Backend.cyclotomic(order)
    raise InvalidInputError(
        f'backend must be "rational" or {{"cyclotomic": N}}, got {value!r}'
    )


def backend_to_json(backend: Backend) -> str | dict[str, int]:
    if backend.is_cyclotomic:
        return {BACKEND_CYCLOTOMIC: backend.order}  # type: ignore[dict-item]
    return BACKEND_RATIONAL


def _parse_rational(value: Any, where: str) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (str, int)):
        raise InvalidInputError(f"{where}: expected a \"p/q\" string, got {value!r}")
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidInputError(f"{where}: invalid rational {value!r}") from exc


def configuration_from_dict(data: Any) -> Configuration:
    if not isinstance(data, dict):
        raise InvalidInputError("configuration JSON must be an object")
    missing = {"dim", "backend", "points"} - set(data)
    if missing:
        raise InvalidInputError(f"configuration JSON is missing {sorted(missing)}")
    dim = data["dim"]
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise InvalidInputError(f"dim must be a positive integer, got {dim!r}")
    backend = backend_from_json(data["backend"])
    points = data["points"]
    if not isinstance(points, list):
        raise InvalidInputError("points must be an array")

    positions: list[Point] = []
    for k, point in enumerate(points):
        if not isinstance(point, list):
            raise InvalidInputError(f"point {k} must be an array, got {point!r}")
        if backend.is_cyclotomic:
            if not all(isinstance(c, int) and not isinstance(c, bool) for c in point):
                raise InvalidInputError(f"point {k}: cyclotomic coefficients must be integers")
            positions.append(CyclotomicInt.from_poly(backend.order, point))  # type: ignore[arg-type]
        else:
            positions.append(tuple(_parse_rational(x, f"point {k}") for x in point))
    return Configuration(dim, backend, tuple(positions))


def configuration_to_dict(c: Configuration) -> dict[str, Any]:
    if c.backend.is_cyclotomic:
        points = [list(p.coeffs) for p in c.positions]  # type: ignore[union-attr]
    else:
        points = [[str(x) for x in p] for p in c.positions]  # type: ignore[union-attr]
    return {"dim": c.dim, "backend": backend_to_json(c.backend), "points": points}


def load_configuration(path: str | Path) -> Configuration:
    return configuration_from_dict(load_json(path))


def dump_configuration(c: Configuration) -> str:
    return json.dumps(configuration_to_dict(c), indent=2) + "\n"


# =============================================================================
# Jump text
# =============================================================================


def parse_jumps(text: str) -> JumpSequence:
    jumps: list[Jump] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        for token in line.split("#", 1)[0].split():
            match = _TOKEN.match(token)
            if not match:
                raise InvalidInputError(f"line {lineno}: bad jump token {token!r}, expected i/j")
            jumps.append(Jump(int(match.group(1)), int(match.group(2))))
    return JumpSequence(tuple(jumps))


def format_jumps(s: JumpSequence, per_line: int = 20) -> str:
    tokens = [str(j) for j in s]
    lines = [" ".join(tokens[k : k + per_line]) for k in range(0, len(tokens), per_line)]
    return "\n".join(lines) + "\n" if lines else ""


def load_jumps(path: str | Path) -> JumpSequence:
    return parse_jumps(Path(path).read_text(encoding="utf-8"))


# =============================================================================
# Matrices
# =============================================================================


def matrix_from_json(data: Any) -> IntMatrix:
    if isinstance(data, dict):
        if "matrix" not in data:
            raise InvalidInputError('matrix JSON object needs a "matrix" key')
        data = data["matrix"]
    if not isinstance(data, list) or not all(isinstance(row, list) for row in data):
        raise InvalidInputError("matrix must be an array of integer rows")
    return IntMatrix(data)


def load_matrix(path: str | Path) -> IntMatrix:
    return matrix_from_json(load_json(path))


# =============================================================================
# Helpers
# =============================================================================


def load_json(path: str | Path) -> Any:
    text = Path(path).read_text(encoding="utf-8")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"{path}: invalid JSON: {exc}") from exc


def format_float(value: float, digits: int = DEFAULT_FLOAT_DIGITS) -> str:
    return f"{value:.{digits}g}"


def format_point(p: Point) -> str:
    """Exact rendering: "(p/q, r/s)" or the coefficient vector "[c0, c1, ...]"."""
    if isinstance(p, CyclotomicInt):
        return str(list(p.coeffs))
    return "(" + ", ".join(str(x) for x in p) + ")"


def write_text_atomic(path: str | Path, text: str) -> None:
    """Write via a temporary file so a failed run leaves no partial output."""
    target = Path(path)
    if target.parent and not target.parent.exists():
        target.parent.mkdir(parents=True, exist_ok=True)
    tmp = target.with_name(target.name + ".tmp")
    tmp.write_text(text, encoding="utf-8")
    os.replace(tmp, target)
