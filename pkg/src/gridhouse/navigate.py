"""Section-level path planning and cell-level trajectory assembly.

Room-to-room routes come from breadth-first search over the section
graph; between rooms the agent aims for a boundary cell, and within a
room it walks straight L-shaped legs, falling back to heuristic search
when furniture blocks the straight line.
"""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass
from typing import Optional, Sequence

from .segment import BoundaryPoint, SectionGraph, Segmentation
from .world import GridMap, Position, SectionLabel

WAYPOINT_BOUNDARY = "boundary crossing"
WAYPOINT_PICKUP = "object pickup"
WAYPOINT_DESTINATION = "destination"


class Unreachable(ValueError):
    pass


class UnlabeledPosition(ValueError):
    """Trajectory endpoint lies on a cell without a section label."""


@dataclass(frozen=True)
class Trajectory:
    """A full cell-level walk with its section-crossing waypoints."""

    waypoints: tuple[Position, ...]
    steps: tuple[Position, ...]
    annotations: tuple[str, ...]  # one reason per waypoint

    @property
    def end(self) -> Position:
        return self.steps[-1]


def section_path(
    graph: SectionGraph, src: SectionLabel, dst: SectionLabel
) -> list[SectionLabel]:
    """Shortest room sequence from src to dst by edge count.

    Among equal-length paths the lexicographically smallest one (by
    label declaration order) is returned.
    """
    if src not in graph.nodes or dst not in graph.nodes:
        raise Unreachable(f"{src.value} or {dst.value} not in section graph")
    if src is dst:
        return [src]
    dist: dict[SectionLabel, int] = {dst: 0}
    queue = deque([dst])
    while queue:
        cur = queue.popleft()
        for n in graph.neighbors(cur):
            if n not in dist:
                dist[n] = dist[cur] + 1
                queue.append(n)
    if src not in dist:
        raise Unreachable(f"no section path {src.value} -> {dst.value}")
    path = [src]
    cur = src
    while cur is not dst:
        cur = min(
            (n for n in graph.neighbors(cur) if dist.get(n, -1) == dist[cur] - 1),
            key=lambda s: s.order,
        )
        path.append(cur)
    return path


def select_boundary(
    edge_boundaries: Sequence[BoundaryPoint], cur: Position, next_goal: Position
) -> Position:
    """Boundary cell minimizing the two-leg Manhattan detour, ties by (y, x)."""
    if not edge_boundaries:
        raise ValueError("empty boundary set")

    def cost(bp: BoundaryPoint) -> tuple[int, int, int]:
        b = bp.pos
        through = abs(cur.x - b.x) + abs(cur.y - b.y) + abs(b.x - next_goal.x) + abs(
            b.y - next_goal.y
        )
        return (through, b.y, b.x)

    return min(edge_boundaries, key=cost).pos


def _l_path(frm: Position, to: Position, x_first: bool) -> list[Position]:
    path = [frm]
    x, y = frm
    sx = 1 if to.x > x else -1
    sy = 1 if to.y > y else -1
    if x_first:
        while x != to.x:
            x += sx
            path.append(Position(x, y))
        while y != to.y:
            y += sy
            path.append(Position(x, y))
    else:
        while y != to.y:
            y += sy
            path.append(Position(x, y))
        while x != to.x:
            x += sx
            path.append(Position(x, y))
    return path


def _astar(grid_map: GridMap, frm: Position, to: Position) -> list[Position]:
    """Shortest walkable path via best-first search with Manhattan heuristic."""

    def h(p: Position) -> int:
        return abs(p.x - to.x) + abs(p.y - to.y)

    counter = 0
    open_heap: list[tuple[int, int, int, Position]] = [(h(frm), 0, counter, frm)]
    g: dict[Position, int] = {frm: 0}
    came: dict[Position, Position] = {}
    while open_heap:
        _, cost, _, cur = heapq.heappop(open_heap)
        if cur == to:
            path = [cur]
            while cur in came:
                cur = came[cur]
                path.append(cur)
            path.reverse()
            return path
        if cost > g[cur]:
            continue
        for dx, dy in ((0, -1), (0, 1), (-1, 0), (1, 0)):
            nxt = Position(cur.x + dx, cur.y + dy)
            if not grid_map.is_walkable(nxt.x, nxt.y):
                continue
            ng = cost + 1
            if ng < g.get(nxt, 1 << 30):
                g[nxt] = ng
                came[nxt] = cur
                counter += 1
                heapq.heappush(open_heap, (ng + h(nxt), ng, counter, nxt))
    raise Unreachable(f"no walkable path {frm} -> {to}")


def local_path(grid_map: GridMap, frm: Position, to: Position) -> list[Position]:
    """Cell path between two walkable cells, both endpoints included.

    Tries the x-first L-shaped leg, then y-first, then falls back to
    heuristic search (which returns a shortest path).
    """
    for pos in (frm, to):
        if not grid_map.is_walkable(pos.x, pos.y):
            raise Unreachable(f"{pos} is not walkable")
    for x_first in (True, False):
        path = _l_path(frm, to, x_first)
        if all(grid_map.walkable[p.y, p.x] for p in path):
            return path
    return _astar(grid_map, frm, to)


def plan_trajectory(
    grid_map: GridMap,
    seg: Segmentation,
    graph: SectionGraph,
    cur: Position,
    goals: Sequence[Position],
    goal_tags: Optional[Sequence[str]] = None,
) -> Trajectory:
    """Walk plan visiting ``goals`` in order through section boundaries.

    For every goal: route sections by BFS, cross each section edge at the
    boundary cell nearest the leg, and connect the pieces with local
    paths. ``goal_tags`` annotates each goal waypoint (defaults to
    destination).
    """
    tags = list(goal_tags) if goal_tags is not None else [WAYPOINT_DESTINATION] * len(goals)
    if len(tags) != len(goals):
        raise ValueError("goal_tags must match goals")
    steps: list[Position] = [cur]
    waypoints: list[Position] = []
    annotations: list[str] = []
    pos = cur
    for goal, tag in zip(goals, tags):
        src_section = seg.label_at(pos)
        dst_section = seg.label_at(goal)
        if src_section is None or dst_section is None:
            raise UnlabeledPosition(f"{pos if src_section is None else goal} has no label")
        spath = section_path(graph, src_section, dst_section)
        for a, b in zip(spath, spath[1:]):
            boundary = select_boundary(graph.boundary_for(a, b), pos, goal)
            leg = local_path(grid_map, pos, boundary)
            steps.extend(leg[1:])
            pos = boundary
            waypoints.append(boundary)
            annotations.append(WAYPOINT_BOUNDARY)
        leg = local_path(grid_map, pos, goal)
        steps.extend(leg[1:])
        pos = goal
        waypoints.append(goal)
        annotations.append(tag)
    return Trajectory(tuple(waypoints), tuple(steps), tuple(annotations))
