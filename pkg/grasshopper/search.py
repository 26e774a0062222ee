"""Bounded exhaustive search for short jump sequences.

States are exact position tuples; jumps are expanded in lexicographic
(mover, over) order so results are deterministic. Every state also carries a
float shadow of its positions, updated by the same reflections, which feeds
the cheap pre-filter of the similar-larger goal. Verdicts are always exact.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Any, Callable, Hashable

from .configuration import Configuration, Jump, JumpSequence, Point, apply_sequence, point_to_float, reflect
from .constants import (
    DEFAULT_NODE_CAP,
    GOAL_EXACT_TARGET,
    GOAL_SIMILAR_LARGER,
    SEARCH_STRATEGIES,
    SIMILAR_LARGER,
)
from .errors import InvalidInputError, VerificationError
from .exact_algebra import CyclotomicInt
from .similarity import classify

Progress = Callable[[str], None]
FloatState = list[tuple[float, ...]]

# relative tolerance of the float pre-filter; exact confirmation follows
_PREFILTER_TOL = 1e-7


def _silent(_: str) -> None:
    pass


# =============================================================================
# Spec, goal and report
# =============================================================================


@dataclass(frozen=True)
class Goal:
    kind: str
    target: Configuration | None = None

    @classmethod
    def similar_larger(cls) -> Goal:
        return cls(GOAL_SIMILAR_LARGER)

    @classmethod
    def exact_target(cls, target: Configuration) -> Goal:
        return cls(GOAL_EXACT_TARGET, target)

    def __post_init__(self) -> None:
        if self.kind not in (GOAL_SIMILAR_LARGER, GOAL_EXACT_TARGET):
            raise InvalidInputError(f"unknown goal {self.kind!r}")
        if self.kind == GOAL_EXACT_TARGET and self.target is None:
            raise InvalidInputError("exact-target goal needs a target configuration")


@dataclass(frozen=True)
class SearchSpec:
    start: Configuration
    goal: Goal
    max_depth: int
    dedup: bool = True
    node_cap: int = DEFAULT_NODE_CAP

    def __post_init__(self) -> None:
        if self.max_depth < 1:
            raise InvalidInputError(f"max_depth must be at least 1, got {self.max_depth}")
        if self.node_cap < 1:
            raise InvalidInputError(f"node cap must be positive, got {self.node_cap}")
        target = self.goal.target
        if target is not None:
            if target.backend != self.start.backend or target.dim != self.start.dim:
                raise InvalidInputError(f"target is {target.backend}, start is {self.start.backend}")
            if target.n_pieces != self.start.n_pieces:
                raise InvalidInputError(
                    f"target has {target.n_pieces} pieces, start has {self.start.n_pieces}"
                )


@dataclass(frozen=True)
class SearchReport:
    found: JumpSequence | None
    nodes_expanded: int
    depth_reached: int
    exhaustive: bool
    strategy: str = "bfs"

    def to_dict(self) -> dict[str, Any]:
        return {
            "found": None if self.found is None else str(self.found),
            "length": None if self.found is None else len(self.found),
            "nodes_expanded": self.nodes_expanded,
            "depth_reached": self.depth_reached,
            "exhaustive": self.exhaustive,
            "strategy": self.strategy,
        }


def canonicalize(c: Configuration) -> Hashable:
    """Exact coordinate tuple; pieces stay distinguishable."""
    return tuple(_point_key(p) for p in c.positions)


def _point_key(p: Point) -> Hashable:
    if isinstance(p, CyclotomicInt):
        return p.coeffs
    return tuple((x.numerator, x.denominator) for x in p)


def _moves(n_pieces: int) -> list[Jump]:
    return [Jump(m, o) for m in range(n_pieces) for o in range(n_pieces) if m != o]


# =============================================================================
# Goal checking
# =============================================================================


def _sorted_sq_distances(floats: FloatState) -> list[float]:
    out = []
    for a in range(len(floats)):
        for b in range(a + 1, len(floats)):
            out.append(sum((x - y) ** 2 for x, y in zip(floats[a], floats[b])))
    out.sort()
    return out


class _GoalChecker:
    def __init__(self, spec: SearchSpec) -> None:
        self.start = spec.start
        self.goal = spec.goal
        self.reference = _sorted_sq_distances([point_to_float(p) for p in spec.start.positions])

    def __call__(self, positions: tuple[Point, ...], floats: FloatState) -> bool:
        if self.goal.kind == GOAL_EXACT_TARGET:
            return positions == self.goal.target.positions  # type: ignore[union-attr]
        if not self._prefilter(floats):
            return False
        return classify(self.start, self.start.with_positions(positions)) == SIMILAR_LARGER

    def _prefilter(self, floats: FloatState) -> bool:
        ref = self.reference
        if not ref or ref[-1] == 0:
            return False
        cand = _sorted_sq_distances(floats)
        ratio = cand[-1] / ref[-1]
        if ratio < 1 - _PREFILTER_TOL:
            return False
        scale = cand[-1] * _PREFILTER_TOL + 1e-12
        return all(abs(c - ratio * r) <= scale for c, r in zip(cand, ref))


def _step(positions: tuple[Point, ...], floats: FloatState, jump: Jump) -> tuple[tuple[Point, ...], FloatState]:
    new_positions = list(positions)
    new_positions[jump.mover] = reflect(positions[jump.mover], positions[jump.over])
    new_floats = list(floats)
    new_floats[jump.mover] = tuple(2 * o - m for m, o in zip(floats[jump.mover], floats[jump.over]))
    return tuple(new_positions), new_floats


def _state_key(positions: tuple[Point, ...]) -> Hashable:
    return tuple(_point_key(p) for p in positions)


def _confirm(spec: SearchSpec, path: tuple[Jump, ...]) -> JumpSequence:
    """Replay a found path from the start; the goal must hold exactly."""
    found = JumpSequence(path)
    final = apply_sequence(spec.start, found)
    if spec.goal.kind == GOAL_EXACT_TARGET:
        ok = final == spec.goal.target
    else:
        ok = classify(spec.start, final) == SIMILAR_LARGER
    if not ok:
        raise VerificationError(f"replay of {found} does not satisfy {spec.goal.kind}")
    return found


# =============================================================================
# Breadth-first search
# =============================================================================


def bfs_search(spec: SearchSpec, progress: Progress = _silent) -> SearchReport:
    """Shortest goal sequence up to max_depth, or an exhaustive negative.

    When the dedup set (or, without dedup, the frontier) reaches node_cap the
    search stops with exhaustive=False.
    """
    check = _GoalChecker(spec)
    start = spec.start.positions
    floats = [point_to_float(p) for p in start]
    if check(start, floats):
        return SearchReport(JumpSequence(), 0, 0, False, "bfs")

    moves = _moves(spec.start.n_pieces)
    seen = {_state_key(start)}
    queue: deque[tuple[tuple[Point, ...], FloatState, tuple[Jump, ...]]] = deque([(start, floats, ())])
    nodes = 0
    depth_reached = 0

    while queue:
        positions, floats, path = queue.popleft()
        depth = len(path)
        if depth >= spec.max_depth:
            continue
        if depth > depth_reached:
            progress(f"reached depth {depth}: {nodes} expanded, {len(seen)} distinct states")
            depth_reached = depth
        nodes += 1
        for jump in moves:
            new_positions, new_floats = _step(positions, floats, jump)
            new_path = path + (jump,)
            if spec.dedup:
                key = _state_key(new_positions)
                if key in seen:
                    continue
                seen.add(key)
            if check(new_positions, new_floats):
                return SearchReport(_confirm(spec, new_path), nodes, depth + 1, False, "bfs")
            queue.append((new_positions, new_floats, new_path))
            if (len(seen) if spec.dedup else len(queue)) >= spec.node_cap:
                progress(f"node cap {spec.node_cap} reached at depth {depth + 1}")
                return SearchReport(None, nodes, depth, False, "bfs")

    return SearchReport(None, nodes, spec.max_depth, True, "bfs")


# =============================================================================
# Iterative deepening
# =============================================================================


class _NodeCapReached(Exception):
    pass


def iddfs_search(spec: SearchSpec, progress: Progress = _silent) -> SearchReport:
    """Depth-limited DFS with growing limits; memory stays proportional to depth.

    The same jump twice in a row is skipped (it is the identity). node_cap
    bounds the total number of expanded nodes.
    """
    check = _GoalChecker(spec)
    start = spec.start.positions
    floats = [point_to_float(p) for p in start]
    if check(start, floats):
        return SearchReport(JumpSequence(), 0, 0, False, "iddfs")

    moves = _moves(spec.start.n_pieces)
    nodes = 0

    def dive(positions: tuple[Point, ...], floats: FloatState, path: list[Jump], limit: int) -> bool:
        nonlocal nodes
        if nodes >= spec.node_cap:
            raise _NodeCapReached
        nodes += 1
        for jump in moves:
            if path and path[-1] == jump:
                continue
            new_positions, new_floats = _step(positions, floats, jump)
            path.append(jump)
            if check(new_positions, new_floats):
                return True
            if len(path) < limit and dive(new_positions, new_floats, path, limit):
                return True
            path.pop()
        return False

    depth_reached = 0
    for limit in range(1, spec.max_depth + 1):
        path: list[Jump] = []
        try:
            hit = dive(start, floats, path, limit)
        except _NodeCapReached:
            progress(f"node cap {spec.node_cap} reached during limit {limit}")
            return SearchReport(None, nodes, depth_reached, False, "iddfs")
        if hit:
            return SearchReport(_confirm(spec, tuple(path)), nodes, limit, False, "iddfs")
        depth_reached = limit
        progress(f"limit {limit} done: {nodes} expanded")

    return SearchReport(None, nodes, spec.max_depth, True, "iddfs")


def search(spec: SearchSpec, strategy: str = "bfs", progress: Progress = _silent) -> SearchReport:
    if strategy not in SEARCH_STRATEGIES:
        raise InvalidInputError(f"unknown strategy {strategy!r}, expected one of {SEARCH_STRATEGIES}")
    if strategy == "iddfs":
        return iddfs_search(spec, progress)
    return bfs_search(spec, progress)
