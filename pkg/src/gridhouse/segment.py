"""Section segmentation: histogram voting, boundary points, section graph.

Each cell accumulates, per section, the knowledge-weighted reciprocal
squared distance to every remembered object; sight lines crossing walls
are attenuated by the occlusion factor. A visible key object overrides
the vote entirely. Boundary points are labeled cells whose 4-neighbors
carry a different label; the section graph connects sections that share
at least one boundary point.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from .explore import ObjectMemory
from .world import (
    SECTIONS,
    GridMap,
    KnowledgeBase,
    Position,
    SectionLabel,
    line_blocked,
)


class NoEvidence(ValueError):
    """No remembered object has a knowledge-base entry."""


class UnknownObjectName(KeyError):
    pass


@dataclass(frozen=True)
class SegmentConfig:
    """Tuning knobs for histogram voting.

    ``occlusion_factor`` divides contributions whose sight line crosses a
    wall; ``min_sq_distance`` clamps the squared-distance denominator so
    an object on the cell itself cannot divide by zero.
    """

    occlusion_factor: float = 10.0
    min_sq_distance: float = 1.0

    def __post_init__(self) -> None:
        if self.occlusion_factor <= 1.0:
            raise ValueError("occlusion_factor must be > 1")


def empty_histogram() -> dict[SectionLabel, float]:
    return {s: 0.0 for s in SECTIONS}


def argmax_section(hist: dict[SectionLabel, float]) -> SectionLabel:
    """Highest-valued section; ties go to the earliest-declared label."""
    return max(SECTIONS, key=lambda s: (hist[s], -s.order))


def bin_contribution(
    cell: Position,
    obj,
    kb: KnowledgeBase,
    cfg: SegmentConfig,
    occluded: bool,
) -> dict[SectionLabel, float]:
    """Per-section histogram increments contributed by one remembered object.

    ``obj`` needs ``name`` and ``pos`` attributes (memory entries and
    world objects both qualify).
    """
    if obj.name not in kb.entries:
        raise UnknownObjectName(obj.name)
    d2 = (cell.x - obj.pos.x) ** 2 + (cell.y - obj.pos.y) ** 2
    denom = max(d2, cfg.min_sq_distance)
    n = cfg.occlusion_factor if occluded else 1.0
    out = empty_histogram()
    for section, weight in kb.entries[obj.name]:
        out[section] = weight / (n * denom)
    return out


def classify_cell(
    cell: Position,
    memory: ObjectMemory,
    kb: KnowledgeBase,
    grid_map: GridMap,
    cfg: SegmentConfig = SegmentConfig(),
) -> tuple[SectionLabel, dict[SectionLabel, float]]:
    """Assign a section to one cell from the remembered objects.

    A visible key object decides the cell outright (nearest by squared
    distance, then lowest id); otherwise the accumulated histogram's
    argmax wins. Objects without knowledge entries are ignored.
    """
    entries = sorted(
        (e for e in memory if e.name in kb.entries), key=lambda e: e.id
    )
    if not entries:
        raise NoEvidence(f"no remembered object with knowledge at {cell}")

    hist = empty_histogram()
    best_key: Optional[tuple[int, int, SectionLabel]] = None
    for entry in entries:
        occluded = line_blocked(grid_map, cell, entry.pos)
        for section, inc in bin_contribution(cell, entry, kb, cfg, occluded).items():
            hist[section] += inc
        if not occluded and entry.name in kb.key_of:
            d2 = (cell.x - entry.pos.x) ** 2 + (cell.y - entry.pos.y) ** 2
            cand = (d2, entry.id, kb.key_of[entry.name])
            if best_key is None or cand[:2] < best_key[:2]:
                best_key = cand
    if best_key is not None:
        return best_key[2], hist
    return argmax_section(hist), hist


@dataclass(frozen=True)
class Segmentation:
    """Per-cell section labels over the cells the agent classified."""

    width: int
    height: int
    labels: dict[Position, SectionLabel]
    no_evidence: frozenset[Position] = frozenset()

    def label_at(self, pos: Position) -> Optional[SectionLabel]:
        return self.labels.get(pos)

    @property
    def sections_present(self) -> frozenset[SectionLabel]:
        return frozenset(self.labels.values())

    def to_text(self) -> str:
        rows = []
        for y in range(self.height):
            rows.append(
                "".join(
                    lbl.letter if (lbl := self.labels.get(Position(x, y))) else "."
                    for x in range(self.width)
                )
            )
        return "\n".join(rows) + "\n"


# --- vectorized visibility --------------------------------------------------

_vis_cache: dict[tuple, np.ndarray] = {}
_VIS_CACHE_MAX = 20000


def _walls_token(grid_map: GridMap) -> tuple:
    return (grid_map.width, grid_map.height, grid_map.walkable.tobytes())


def visibility_mask(grid_map: GridMap, src: Position, _token: tuple | None = None) -> np.ndarray:
    """Boolean grid: True where the sight line from ``src`` is unblocked.

    Lockstep vectorized version of the scalar line tracer; results are
    cached per (wall layout, source) since segmentation re-queries the
    same sources for every cell.
    """
    token = _token if _token is not None else _walls_token(grid_map)
    key = (token, src.x, src.y)
    cached = _vis_cache.get(key)
    if cached is not None:
        return cached

    h, w = grid_map.height, grid_map.width
    not_walkable = ~grid_map.walkable
    bx, by = np.meshgrid(np.arange(w), np.arange(h))
    bx = bx.ravel()
    by = by.ravel()
    dx = bx - src.x
    dy = by - src.y
    adx = np.abs(dx)
    ady = np.abs(dy)
    sx = np.where(dx > 0, 1, -1)
    sy = np.where(dy > 0, 1, -1)
    x = np.full_like(bx, src.x)
    y = np.full_like(by, src.y)
    i = np.zeros_like(bx)
    j = np.zeros_like(by)
    blocked = np.zeros(bx.shape, dtype=bool)
    done = (x == bx) & (y == by)
    while not done.all():
        lhs = (2 * i + 1) * ady
        rhs = (2 * j + 1) * adx
        step_x = ~done & (lhs <= rhs)  # equality steps both axes (corner)
        step_y = ~done & (lhs >= rhs)
        x = x + np.where(step_x, sx, 0)
        i = i + step_x
        y = y + np.where(step_y, sy, 0)
        j = j + step_y
        arrived = (x == bx) & (y == by)
        mid = ~done & ~arrived
        blocked |= mid & not_walkable[y, x]
        done |= arrived
    visible = ~blocked.reshape(h, w)

    if len(_vis_cache) >= _VIS_CACHE_MAX:
        _vis_cache.clear()
    _vis_cache[key] = visible
    return visible


def segment(
    memory: ObjectMemory,
    visited: Iterable[Position],
    grid_map: GridMap,
    kb: KnowledgeBase,
    cfg: SegmentConfig = SegmentConfig(),
) -> Segmentation:
    """Classify every visited walkable cell; unvisited cells stay unlabeled.

    Cells with no usable evidence are recorded in ``no_evidence`` rather
    than failing the whole segmentation. Equivalent to running
    classify_cell per cell, computed grid-wide for speed.
    """
    cells = [c for c in visited if grid_map.is_walkable(c.x, c.y)]
    entries = sorted(
        (e for e in memory if e.name in kb.entries), key=lambda e: e.id
    )
    if not entries:
        return Segmentation(
            grid_map.width, grid_map.height, {}, frozenset(cells)
        )

    h, w = grid_map.height, grid_map.width
    token = _walls_token(grid_map)
    xs, ys = np.meshgrid(np.arange(w), np.arange(h))
    hist = np.zeros((len(SECTIONS), h, w))
    key_d2 = np.full((h, w), np.inf)
    key_lbl = np.full((h, w), -1, dtype=np.int8)
    for entry in entries:
        vis = visibility_mask(grid_map, entry.pos, token)
        d2 = (xs - entry.pos.x) ** 2 + (ys - entry.pos.y) ** 2
        denom = np.maximum(d2, cfg.min_sq_distance)
        n = np.where(vis, 1.0, cfg.occlusion_factor)
        for section, weight in kb.entries[entry.name]:
            hist[section.order] += weight / (n * denom)
        if entry.name in kb.key_of:
            better = vis & (d2 < key_d2)
            key_d2[better] = d2[better]
            key_lbl[better] = kb.key_of[entry.name].order

    voted = hist.argmax(axis=0)  # first max wins: declaration order
    labels: dict[Position, SectionLabel] = {}
    for cell in cells:
        k = key_lbl[cell.y, cell.x]
        idx = int(k) if k >= 0 else int(voted[cell.y, cell.x])
        labels[cell] = SECTIONS[idx]
    return Segmentation(w, h, labels)


def ground_truth_segmentation(grid_map: GridMap) -> Segmentation:
    """The map's own labels viewed as a (perfect) segmentation."""
    if grid_map.ground_truth is None:
        raise ValueError("map carries no ground-truth labels")
    labels: dict[Position, SectionLabel] = {}
    ys, xs = np.nonzero(grid_map.ground_truth >= 0)
    for y, x in zip(ys.tolist(), xs.tolist()):
        labels[Position(x, y)] = SECTIONS[int(grid_map.ground_truth[y, x])]
    return Segmentation(grid_map.width, grid_map.height, labels)


# --- boundary points and section graph --------------------------------------


def ordered_pair(a: SectionLabel, b: SectionLabel) -> tuple[SectionLabel, SectionLabel]:
    return (a, b) if a.order <= b.order else (b, a)


@dataclass(frozen=True)
class BoundaryPoint:
    """A labeled cell with a 4-neighbor in a different section."""

    pos: Position
    sections: tuple[SectionLabel, SectionLabel]  # canonical declaration order


_NEIGHBOR_OFFSETS = ((0, -1), (0, 1), (-1, 0), (1, 0))


def boundary_points(seg: Segmentation) -> list[BoundaryPoint]:
    """All (cell, neighboring-section) boundary pairs, sorted by (y, x, pair)."""
    out: list[BoundaryPoint] = []
    for pos in sorted(seg.labels, key=lambda p: (p.y, p.x)):
        own = seg.labels[pos]
        foreign: set[SectionLabel] = set()
        for dx, dy in _NEIGHBOR_OFFSETS:
            other = seg.labels.get(Position(pos.x + dx, pos.y + dy))
            if other is not None and other is not own:
                foreign.add(other)
        for section in sorted(foreign, key=lambda s: s.order):
            out.append(BoundaryPoint(pos, ordered_pair(own, section)))
    return out


@dataclass(frozen=True)
class SectionGraph:
    """Undirected section adjacency with per-edge boundary cells."""

    nodes: frozenset[SectionLabel]
    boundaries: dict[tuple[SectionLabel, SectionLabel], tuple[BoundaryPoint, ...]]

    @property
    def edges(self) -> frozenset[tuple[SectionLabel, SectionLabel]]:
        return frozenset(self.boundaries)

    def neighbors(self, section: SectionLabel) -> list[SectionLabel]:
        out = [b if a is section else a for a, b in self.boundaries if section in (a, b)]
        return sorted(out, key=lambda s: s.order)

    def boundary_for(
        self, a: SectionLabel, b: SectionLabel
    ) -> tuple[BoundaryPoint, ...]:
        return self.boundaries[ordered_pair(a, b)]


def build_section_graph(seg: Segmentation) -> SectionGraph:
    grouped: dict[tuple[SectionLabel, SectionLabel], list[BoundaryPoint]] = {}
    for bp in boundary_points(seg):
        grouped.setdefault(bp.sections, []).append(bp)
    return SectionGraph(
        nodes=seg.sections_present,
        boundaries={pair: tuple(points) for pair, points in grouped.items()},
    )
