"""House-plan data model: grid, objects, knowledge base, perception.

The world is a rectangular cell grid. Walls and furniture occupy
non-walkable cells; movable items sit on walkable cells and never block
movement. Ground-truth room labels are evaluation-only data carried by
the map and are never consulted by the agent's own algorithms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from enum import Enum
from random import Random
from typing import Iterator, NamedTuple, Optional

import numpy as np


class SectionLabel(Enum):
    """The six room categories a cell can belong to.

    Declaration order is the fixed tie-break order used by histogram
    argmax and by section-path tie-breaking.
    """

    KITCHEN = "Kitchen"
    LIVING_ROOM = "LivingRoom"
    BEDROOM = "Bedroom"
    STUDIO = "Studio"
    BATHROOM = "Bathroom"
    BALCONY = "Balcony"

    @property
    def letter(self) -> str:
        return _SECTION_TO_LETTER[self]

    @property
    def order(self) -> int:
        return _SECTION_ORDER[self]


SECTIONS: tuple[SectionLabel, ...] = tuple(SectionLabel)
_SECTION_ORDER = {s: i for i, s in enumerate(SECTIONS)}
_SECTION_TO_LETTER = {
    SectionLabel.KITCHEN: "K",
    SectionLabel.LIVING_ROOM: "L",
    SectionLabel.BEDROOM: "B",
    SectionLabel.STUDIO: "S",
    SectionLabel.BATHROOM: "T",
    SectionLabel.BALCONY: "A",
}
LETTER_TO_SECTION = {v: k for k, v in _SECTION_TO_LETTER.items()}
_SECTION_BY_NAME = {s.value: s for s in SECTIONS}


def section_from_name(name: str) -> SectionLabel:
    try:
        return _SECTION_BY_NAME[name]
    except KeyError:
        raise ValueError(f"unknown section name {name!r}") from None


class Position(NamedTuple):
    """Grid cell coordinate; x grows rightward, y grows downward."""

    x: int
    y: int


class PlanError(ValueError):
    """Malformed plan file."""


class UnknownCellChar(PlanError):
    pass


class ObjectOutOfBounds(PlanError):
    pass


class ObjectOnWall(PlanError):
    """Movable object placed on a non-walkable cell."""


class DuplicateObjectId(PlanError):
    pass


class EmptyMap(PlanError):
    """Plan contains no walkable cell."""


class KnowledgeError(ValueError):
    """Malformed or inconsistent knowledge file."""


class NoCellInSection(ValueError):
    """Sampling drew a section with no free walkable cell."""


@dataclass(frozen=True)
class WorldObject:
    """A named item on the map.

    Unmovable objects (furniture, fixtures) conventionally occupy
    non-walkable cells; movable items must sit on walkable cells.
    """

    id: int
    name: str
    pos: Position
    movable: bool
    section_hint: Optional[SectionLabel] = None


@dataclass(frozen=True, eq=False)
class GridMap:
    """Walkability grid plus object placements and optional ground truth.

    ``walkable`` is a (height, width) bool array indexed [y, x].
    ``ground_truth`` is a (height, width) int8 array of SectionLabel
    ordinals, -1 where unlabeled; it is evaluation-only data.
    Treat instances as immutable after construction.
    """

    width: int
    height: int
    walkable: np.ndarray
    objects: tuple[WorldObject, ...] = ()
    ground_truth: Optional[np.ndarray] = None

    def __post_init__(self) -> None:
        if self.width <= 0 or self.height <= 0 or not self.walkable.any():
            raise EmptyMap("map has no walkable cell")
        seen_ids: set[int] = set()
        for obj in self.objects:
            if obj.id in seen_ids:
                raise DuplicateObjectId(f"object id {obj.id} appears twice")
            seen_ids.add(obj.id)
            if not self.in_bounds(obj.pos.x, obj.pos.y):
                raise ObjectOutOfBounds(f"object {obj.name!r} at {obj.pos} is off-map")
            if obj.movable and not self.is_walkable(obj.pos.x, obj.pos.y):
                raise ObjectOnWall(f"movable object {obj.name!r} at {obj.pos} is on a wall")
        if self.ground_truth is not None:
            labeled = self.ground_truth >= 0
            if (labeled & ~self.walkable).any():
                raise PlanError("ground-truth label on a non-walkable cell")

    def in_bounds(self, x: int, y: int) -> bool:
        return 0 <= x < self.width and 0 <= y < self.height

    def is_walkable(self, x: int, y: int) -> bool:
        return self.in_bounds(x, y) and bool(self.walkable[y, x])

    @property
    def walkable_count(self) -> int:
        return int(self.walkable.sum())

    def walkable_cells(self) -> Iterator[Position]:
        ys, xs = np.nonzero(self.walkable)
        for y, x in zip(ys.tolist(), xs.tolist()):
            yield Position(x, y)

    def gt_label(self, pos: Position) -> Optional[SectionLabel]:
        if self.ground_truth is None or not self.in_bounds(pos.x, pos.y):
            return None
        idx = int(self.ground_truth[pos.y, pos.x])
        return SECTIONS[idx] if idx >= 0 else None

    def object_by_id(self, obj_id: int) -> WorldObject:
        for obj in self.objects:
            if obj.id == obj_id:
                return obj
        raise KeyError(obj_id)


@dataclass(frozen=True)
class KnowledgeBase:
    """Per-object-name likelihood of appearing in each section.

    ``entries`` maps an object name to (section, weight) pairs; weights
    are in (0, 1] and sum to at most 1 per name. ``key_of`` marks names
    whose mere sight decides a cell's section.
    """

    entries: dict[str, tuple[tuple[SectionLabel, float], ...]]
    key_of: dict[str, SectionLabel] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for name, pairs in self.entries.items():
            if not pairs:
                raise KnowledgeError(f"{name!r} has no section weights")
            total = 0.0
            for section, weight in pairs:
                if not 0.0 < weight <= 1.0:
                    raise KnowledgeError(f"{name!r} weight {weight} outside (0, 1]")
                total += weight
            if total > 1.0 + 1e-9:
                raise KnowledgeError(f"{name!r} weights sum to {total} > 1")
        for name, section in self.key_of.items():
            pairs = dict(self.entries.get(name, ()))
            if pairs.get(section) != 1.0:
                raise KnowledgeError(
                    f"key object {name!r} must carry weight 1.0 for {section.value}"
                )

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(self.entries)


# --- plan file format -------------------------------------------------------
#
# Two parts separated by a line of "---":
#   part 1: grid rows, "." walkable / "#" non-walkable
#   part 2: object lines "id name x y movable(0|1) [Section]", then an
#           optional "sections:" block of per-row single-letter labels
#           (K L B S T A, "." = unlabeled).

WALKABLE_CHAR = "."
WALL_CHAR = "#"


def parse_plan(text: str) -> GridMap:
    """Parse plan-file contents into a validated GridMap."""
    lines = text.splitlines()
    sep = None
    for i, line in enumerate(lines):
        if line.strip() == "---":
            sep = i
            break
    grid_lines = lines[:sep] if sep is not None else lines
    rest = lines[sep + 1 :] if sep is not None else []

    grid_lines = [ln for ln in grid_lines if ln.strip() != ""]
    if not grid_lines:
        raise EmptyMap("plan has no grid rows")
    width = len(grid_lines[0])
    height = len(grid_lines)
    walkable = np.zeros((height, width), dtype=bool)
    for y, row in enumerate(grid_lines):
        if len(row) != width:
            raise PlanError(f"row {y} has length {len(row)}, expected {width}")
        for x, ch in enumerate(row):
            if ch == WALKABLE_CHAR:
                walkable[y, x] = True
            elif ch == WALL_CHAR:
                pass
            else:
                raise UnknownCellChar(f"unknown cell char {ch!r} at ({x}, {y})")

    objects: list[WorldObject] = []
    ground_truth: Optional[np.ndarray] = None
    i = 0
    while i < len(rest):
        line = rest[i].strip()
        if line == "":
            i += 1
            continue
        if line == "sections:":
            rows = rest[i + 1 : i + 1 + height]
            if len(rows) != height:
                raise PlanError("sections block must have one row per grid row")
            ground_truth = np.full((height, width), -1, dtype=np.int8)
            for y, row in enumerate(rows):
                if len(row) != width:
                    raise PlanError(f"sections row {y} has wrong length")
                for x, ch in enumerate(row):
                    if ch == ".":
                        continue
                    if ch not in LETTER_TO_SECTION:
                        raise PlanError(f"unknown section letter {ch!r}")
                    ground_truth[y, x] = LETTER_TO_SECTION[ch].order
            i += 1 + height
            continue
        parts = line.split()
        if len(parts) not in (5, 6):
            raise PlanError(f"bad object line: {line!r}")
        try:
            obj_id = int(parts[0])
            x, y = int(parts[2]), int(parts[3])
            movable = bool(int(parts[4]))
        except ValueError as exc:
            raise PlanError(f"bad object line: {line!r}") from exc
        hint = section_from_name(parts[5]) if len(parts) == 6 else None
        objects.append(WorldObject(obj_id, parts[1], Position(x, y), movable, hint))
        i += 1

    return GridMap(width, height, walkable, tuple(objects), ground_truth)


def serialize_plan(grid_map: GridMap) -> str:
    """Render a GridMap in the canonical plan format (inverse of parse_plan)."""
    out: list[str] = []
    for y in range(grid_map.height):
        out.append(
            "".join(
                WALKABLE_CHAR if grid_map.walkable[y, x] else WALL_CHAR
                for x in range(grid_map.width)
            )
        )
    out.append("---")
    for obj in grid_map.objects:
        line = f"{obj.id} {obj.name} {obj.pos.x} {obj.pos.y} {int(obj.movable)}"
        if obj.section_hint is not None:
            line += f" {obj.section_hint.value}"
        out.append(line)
    if grid_map.ground_truth is not None:
        out.append("sections:")
        for y in range(grid_map.height):
            row = []
            for x in range(grid_map.width):
                idx = int(grid_map.ground_truth[y, x])
                row.append("." if idx < 0 else SECTIONS[idx].letter)
            out.append("".join(row))
    return "\n".join(out) + "\n"


# --- knowledge file format --------------------------------------------------
#
# One line per object name: "name key_section|- section:weight[,...]".


def parse_knowledge(text: str) -> KnowledgeBase:
    entries: dict[str, tuple[tuple[SectionLabel, float], ...]] = {}
    key_of: dict[str, SectionLabel] = {}
    for raw in text.splitlines():
        line = raw.strip()
        if line == "" or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 3:
            raise KnowledgeError(f"bad knowledge line: {line!r}")
        name, key_part, weight_part = parts
        if name in entries:
            raise KnowledgeError(f"duplicate knowledge entry {name!r}")
        pairs = []
        for chunk in weight_part.split(","):
            try:
                sec_name, weight_str = chunk.split(":")
                pairs.append((section_from_name(sec_name), float(weight_str)))
            except ValueError as exc:
                raise KnowledgeError(f"bad weight chunk {chunk!r}") from exc
        entries[name] = tuple(pairs)
        if key_part != "-":
            key_of[name] = section_from_name(key_part)
    if not entries:
        raise KnowledgeError("knowledge file is empty")
    return KnowledgeBase(entries, key_of)


def serialize_knowledge(kb: KnowledgeBase) -> str:
    lines = []
    for name, pairs in kb.entries.items():
        key = kb.key_of.get(name)
        weights = ",".join(f"{s.value}:{w:g}" for s, w in pairs)
        lines.append(f"{name} {key.value if key else '-'} {weights}")
    return "\n".join(lines) + "\n"


# --- geometry ---------------------------------------------------------------


def trace_line(a: Position, b: Position) -> list[Position]:
    """Cells strictly between a and b crossed by the center-to-center segment.

    Integer DDA over cell-boundary crossings. When the segment passes
    exactly through a lattice corner the walk steps diagonally, so the two
    cells touched only at that corner are not reported. The reported set
    is symmetric in (a, b).
    """
    ax, ay = a
    bx, by = b
    dx, dy = bx - ax, by - ay
    adx, ady = abs(dx), abs(dy)
    sx = 1 if dx > 0 else -1
    sy = 1 if dy > 0 else -1
    x, y = ax, ay
    i = j = 0
    cells: list[Position] = []
    while (x, y) != (bx, by):
        lhs = (2 * i + 1) * ady  # next vertical-boundary crossing time, cross-multiplied
        rhs = (2 * j + 1) * adx
        if lhs < rhs:
            x += sx
            i += 1
        elif lhs > rhs:
            y += sy
            j += 1
        else:
            if i == adx and j == ady:  # a == b
                break
            x += sx
            y += sy
            i += 1
            j += 1
        if (x, y) != (bx, by):
            cells.append(Position(x, y))
    return cells


def line_blocked(grid_map: GridMap, a: Position, b: Position) -> bool:
    """True iff the sight line from a to b crosses a non-walkable cell.

    Endpoints are excluded, so an object on a wall cell does not occlude
    itself.
    """
    for cell in trace_line(a, b):
        if not grid_map.walkable[cell.y, cell.x]:
            return True
    return False


def perceive(grid_map: GridMap, pos: Position, radius: float) -> list[WorldObject]:
    """Objects within Euclidean ``radius`` of ``pos`` with clear line of sight.

    Sorted by (distance, id).
    """
    seen: list[tuple[float, int, WorldObject]] = []
    for obj in grid_map.objects:
        d = math.hypot(obj.pos.x - pos.x, obj.pos.y - pos.y)
        if d <= radius and not line_blocked(grid_map, pos, obj.pos):
            seen.append((d, obj.id, obj))
    seen.sort(key=lambda t: (t[0], t[1]))
    return [obj for _, _, obj in seen]


# --- object sampling --------------------------------------------------------


def sample_objects(grid_map: GridMap, kb: KnowledgeBase, seed: int) -> GridMap:
    """Instantiate movable items by sampling the knowledge distributions.

    Every knowledge-base name not already present on the map gets one
    movable instance: a section is drawn from the name's weight
    distribution, then a free walkable cell with that ground-truth label
    is drawn uniformly. Existing objects are preserved. Deterministic
    given (map, kb, seed).
    """
    if grid_map.ground_truth is None:
        raise ValueError("sample_objects requires a map with ground-truth labels")
    rng = Random(seed)
    present = {obj.name for obj in grid_map.objects}
    occupied = {obj.pos for obj in grid_map.objects}
    by_section: dict[SectionLabel, list[Position]] = {s: [] for s in SECTIONS}
    for y in range(grid_map.height):
        for x in range(grid_map.width):
            idx = int(grid_map.ground_truth[y, x])
            if idx >= 0:
                by_section[SECTIONS[idx]].append(Position(x, y))
    next_id = max((obj.id for obj in grid_map.objects), default=0) + 1
    new_objects: list[WorldObject] = []
    for name, pairs in kb.entries.items():
        if name in present:
            continue
        sections = [s for s, _ in pairs]
        weights = [w for _, w in pairs]
        section = rng.choices(sections, weights=weights)[0]
        free = [c for c in by_section[section] if c not in occupied]
        if not free:
            raise NoCellInSection(f"no free {section.value} cell for {name!r}")
        cell = free[rng.randrange(len(free))]
        occupied.add(cell)
        new_objects.append(WorldObject(next_id, name, cell, movable=True))
        next_id += 1
    return replace(grid_map, objects=grid_map.objects + tuple(new_objects))


def default_start(grid_map: GridMap) -> Position:
    """Top-right-most walkable cell; the conventional agent start."""
    for y in range(grid_map.height):
        xs = np.nonzero(grid_map.walkable[y])[0]
        if xs.size:
            return Position(int(xs[-1]), y)
    raise EmptyMap("map has no walkable cell")
