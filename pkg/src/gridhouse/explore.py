"""Least-visited greedy exploration under a step budget.

The agent repeatedly moves to the 4-neighbor whose visit count (walking
value) is lowest, breaking ties uniformly at random, until the budget is
spent or every reachable cell has been visited. Perception runs at every
cell along the way and feeds the agent's object memory.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from random import Random
from typing import NamedTuple, Optional

from .world import GridMap, Position, WorldObject, line_blocked


class StartNotWalkable(ValueError):
    pass


class Move(Enum):
    UP = (0, -1)
    DOWN = (0, 1)
    LEFT = (-1, 0)
    RIGHT = (1, 0)

    def apply(self, pos: Position) -> Position:
        dx, dy = self.value
        return Position(pos.x + dx, pos.y + dy)


MOVES: tuple[Move, ...] = tuple(Move)


class MemoryEntry(NamedTuple):
    id: int
    name: str
    pos: Position


@dataclass
class ObjectMemory:
    """What the agent knows about objects: one entry per object id."""

    entries: dict[int, MemoryEntry] = field(default_factory=dict)

    def remember(self, obj: WorldObject) -> None:
        self.entries[obj.id] = MemoryEntry(obj.id, obj.name, obj.pos)

    def update_position(self, obj_id: int, pos: Position) -> None:
        old = self.entries[obj_id]
        self.entries[obj_id] = MemoryEntry(old.id, old.name, pos)

    def find_by_name(self, name: str) -> Optional[MemoryEntry]:
        matches = [e for e in self.entries.values() if e.name == name]
        return min(matches, key=lambda e: e.id) if matches else None

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries.values())

    def copy(self) -> "ObjectMemory":
        return ObjectMemory(dict(self.entries))


@dataclass(frozen=True)
class ExplorationResult:
    visited: frozenset[Position]
    memory: ObjectMemory
    walking_values: dict[Position, int]
    steps_taken: int
    trace: tuple[Position, ...]


def legal_moves(grid_map: GridMap, pos: Position) -> list[Move]:
    """Moves whose target cell is in bounds and walkable."""
    out = []
    for move in MOVES:
        target = move.apply(pos)
        if grid_map.is_walkable(target.x, target.y):
            out.append(move)
    return out


def _perception_index(grid_map: GridMap, radius: float) -> dict[Position, list[WorldObject]]:
    """For each cell, the objects within ``radius`` (before sight checks)."""
    r = min(radius, float(max(grid_map.width, grid_map.height)))
    span = int(math.floor(r))
    offsets = [
        (dx, dy)
        for dx in range(-span, span + 1)
        for dy in range(-span, span + 1)
        if dx * dx + dy * dy <= r * r
    ]
    index: dict[Position, list[WorldObject]] = {}
    for obj in grid_map.objects:
        for dx, dy in offsets:
            cell = Position(obj.pos.x + dx, obj.pos.y + dy)
            if grid_map.in_bounds(cell.x, cell.y):
                index.setdefault(cell, []).append(obj)
    return index


def explore(
    grid_map: GridMap,
    start: Position,
    mas: int,
    radius: float = 3.0,
    seed: int = 0,
) -> ExplorationResult:
    """Run the walking-value walk from ``start`` for at most ``mas`` steps.

    Stops early when no legal move exists or when the whole reachable
    region has been visited. Never-visited cells count as walking value
    0; ties among minimal-value moves are broken uniformly at random
    from the seeded generator, so the run is a pure function of
    (map, start, mas, radius, seed).
    """
    if not grid_map.is_walkable(start.x, start.y):
        raise StartNotWalkable(f"start {start} is not walkable")
    if mas < 0:
        raise ValueError("mas must be non-negative")

    rng = Random(seed)
    near = _perception_index(grid_map, radius)
    walking_values: dict[Position, int] = {}
    memory = ObjectMemory()
    visited: set[Position] = set()
    # Walkable cells adjacent to the visited region but not yet visited.
    frontier: set[Position] = set()
    trace = [start]

    def visit(cell: Position) -> None:
        visited.add(cell)
        frontier.discard(cell)
        for move in MOVES:
            n = move.apply(cell)
            if grid_map.is_walkable(n.x, n.y) and n not in visited:
                frontier.add(n)
        # Perceiving a cell twice adds nothing: objects are static here.
        for obj in near.get(cell, ()):
            if obj.id not in memory.entries and not line_blocked(grid_map, cell, obj.pos):
                memory.remember(obj)

    visit(start)
    cur = start
    steps = 0
    while steps < mas:
        walking_values[cur] = walking_values.get(cur, 0) + 1
        moves = legal_moves(grid_map, cur)
        if not moves:
            break
        if not frontier:
            break  # every reachable cell visited and counted
        best = min(walking_values.get(m.apply(cur), 0) for m in moves)
        candidates = [m for m in moves if walking_values.get(m.apply(cur), 0) == best]
        move = candidates[0] if len(candidates) == 1 else rng.choice(candidates)
        cur = move.apply(cur)
        steps += 1
        trace.append(cur)
        if cur not in visited:
            visit(cur)

    return ExplorationResult(
        visited=frozenset(visited),
        memory=memory,
        walking_values=walking_values,
        steps_taken=steps,
        trace=tuple(trace),
    )


def coverage(result: ExplorationResult, grid_map: GridMap) -> float:
    """Fraction of the map's walkable cells the run visited."""
    return len(result.visited) / grid_map.walkable_count
