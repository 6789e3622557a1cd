"""Natural-language commands: parse, compile to subtasks, execute.

A command is matched against small verb / object / section lexicons and
classified into one of four query kinds (Bring, Navigate, Find, Swap).
Each query compiles to a fixed primitive-action program which a live
session executes by planning and walking trajectories.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from typing import Callable, Optional, Sequence, Union

from .explore import ObjectMemory, explore
from .navigate import (
    WAYPOINT_DESTINATION,
    WAYPOINT_PICKUP,
    Trajectory,
    plan_trajectory,
)
from .segment import SectionGraph, Segmentation, SegmentConfig, build_section_graph, segment
from .world import (
    GridMap,
    KnowledgeBase,
    Position,
    SectionLabel,
    default_start,
    sample_objects,
)


# --- parse errors -----------------------------------------------------------


class ParseError(ValueError):
    pass


class NoVerbMatch(ParseError):
    pass


class MissingObject(ParseError):
    pass


class MissingSection(ParseError):
    pass


class AmbiguousQuery(ParseError):
    pass


# --- contextual queries -----------------------------------------------------


@dataclass(frozen=True)
class Bring:
    obj: str
    section: SectionLabel

    def __str__(self) -> str:
        return f"Bring[{self.obj},{self.section.value}]"


@dataclass(frozen=True)
class Navigate:
    section: SectionLabel

    def __str__(self) -> str:
        return f"Navigate[{self.section.value}]"


@dataclass(frozen=True)
class Find:
    obj: str

    def __str__(self) -> str:
        return f"Find[{self.obj}]"


@dataclass(frozen=True)
class Swap:
    obj_a: str
    obj_b: str

    def __str__(self) -> str:
        return f"Swap[{self.obj_a},{self.obj_b}]"


ContextualQuery = Union[Bring, Navigate, Find, Swap]

_VERB_CLASSES: dict[str, tuple[str, ...]] = {
    "bring": ("bring", "navigate"),
    "carry": ("bring", "navigate"),
    "want": ("bring", "navigate"),
    "get": ("bring", "navigate"),
    "serve": ("bring", "navigate"),
    "where": ("find",),
    "find": ("find",),
    "swap": ("swap",),
    "exchange": ("swap",),
    "come": ("navigate",),
    "go": ("navigate",),
    "navigate": ("navigate",),
}

_SECTION_TOKENS: dict[str, SectionLabel] = {
    "kitchen": SectionLabel.KITCHEN,
    "living_room": SectionLabel.LIVING_ROOM,
    "livingroom": SectionLabel.LIVING_ROOM,
    "bedroom": SectionLabel.BEDROOM,
    "studio": SectionLabel.STUDIO,
    "bathroom": SectionLabel.BATHROOM,
    "balcony": SectionLabel.BALCONY,
}

_CLASS_ORDER = ("bring", "navigate", "find", "swap")


@dataclass(frozen=True)
class Lexicon:
    """Object and section vocabularies used by the parser."""

    objects: frozenset[str]
    sections: dict[str, SectionLabel] = field(default_factory=lambda: dict(_SECTION_TOKENS))

    @classmethod
    def from_knowledge(cls, kb: KnowledgeBase) -> "Lexicon":
        return cls(objects=frozenset(kb.entries))


def _tokenize(text: str) -> list[str]:
    return re.findall(r"[a-z]+", text.lower())


def _scan_terms(tokens: list[str], lexicon: Lexicon) -> tuple[list[str], list[SectionLabel]]:
    """Longest-match scan for object and section mentions, in text order.

    Two-token vocabulary entries are written with an underscore
    (``gas_cooker`` matches the words "gas cooker").
    """
    objects: list[str] = []
    sections: list[SectionLabel] = []
    i = 0
    while i < len(tokens):
        if i + 1 < len(tokens):
            bigram = f"{tokens[i]}_{tokens[i + 1]}"
            if bigram in lexicon.objects:
                if bigram not in objects:
                    objects.append(bigram)
                i += 2
                continue
            if bigram in lexicon.sections:
                label = lexicon.sections[bigram]
                if label not in sections:
                    sections.append(label)
                i += 2
                continue
        tok = tokens[i]
        if tok in lexicon.objects:
            if tok not in objects:
                objects.append(tok)
        elif tok in lexicon.sections:
            label = lexicon.sections[tok]
            if label not in sections:
                sections.append(label)
        i += 1
    return objects, sections


def parse_command(text: str, lexicon: Lexicon) -> ContextualQuery:
    """Classify a natural-language command into a contextual query.

    Verb tokens nominate candidate query classes; the unique class whose
    parameters are all present wins. Multiple satisfiable classes raise
    AmbiguousQuery, none with a matched verb raises the specific
    missing-parameter error.
    """
    if not text.strip():
        raise ParseError("empty command")
    tokens = _tokenize(text)
    candidates: list[str] = []
    for tok in tokens:
        for cls in _VERB_CLASSES.get(tok, ()):
            if cls not in candidates:
                candidates.append(cls)
    if not candidates:
        raise NoVerbMatch(f"no verb recognized in {text!r}")
    objects, sections = _scan_terms(tokens, lexicon)

    complete: list[ContextualQuery] = []
    for cls in _CLASS_ORDER:
        if cls not in candidates:
            continue
        if cls == "bring" and objects and sections:
            complete.append(Bring(objects[0], sections[0]))
        elif cls == "navigate" and sections and not objects:
            complete.append(Navigate(sections[0]))
        elif cls == "find" and objects:
            complete.append(Find(objects[0]))
        elif cls == "swap" and len(objects) == 2:
            complete.append(Swap(objects[0], objects[1]))
    if len(complete) == 1:
        return complete[0]
    if len(complete) > 1:
        raise AmbiguousQuery(f"{text!r} matches {[str(q) for q in complete]}")
    if any(c in candidates for c in ("bring", "find")) and not objects:
        raise MissingObject(f"no known object mentioned in {text!r}")
    if any(c in candidates for c in ("bring", "navigate")) and not sections:
        raise MissingSection(f"no section mentioned in {text!r}")
    if "swap" in candidates and len(objects) != 2:
        raise MissingObject(f"swap needs exactly two objects, got {objects!r}")
    raise AmbiguousQuery(f"cannot resolve query class for {text!r}")


# --- subtasks ---------------------------------------------------------------

TARGET_OBJECT = "object"
TARGET_SECTION = "section"
TARGET_ORIGIN = "origin"


@dataclass(frozen=True)
class SubTask:
    """One primitive action: find / navigate / pickup / drop."""

    op: str
    target: str
    kind: str = TARGET_OBJECT

    def __str__(self) -> str:
        if self.kind == TARGET_ORIGIN:
            return f"{self.op}({self.target} origin)"
        return f"{self.op}({self.target})"


def find(obj: str) -> SubTask:
    return SubTask("find", obj)


def navigate_object(obj: str) -> SubTask:
    return SubTask("navigate", obj)


def navigate_section(section: SectionLabel) -> SubTask:
    return SubTask("navigate", section.value, TARGET_SECTION)


def navigate_origin(obj: str) -> SubTask:
    return SubTask("navigate", obj, TARGET_ORIGIN)


def pickup(obj: str) -> SubTask:
    return SubTask("pickup", obj)


def drop(obj: str) -> SubTask:
    return SubTask("drop", obj)


def compile_query(query: ContextualQuery) -> list[SubTask]:
    """Expand a contextual query into its primitive action program."""
    if isinstance(query, Bring):
        o = query.obj
        return [find(o), navigate_object(o), pickup(o), navigate_section(query.section), drop(o)]
    if isinstance(query, Navigate):
        return [navigate_section(query.section)]
    if isinstance(query, Find):
        return [navigate_object(query.obj)]
    if isinstance(query, Swap):
        a, b = query.obj_a, query.obj_b
        return [
            find(a),
            navigate_object(a),
            pickup(a),
            find(b),
            navigate_object(b),
            drop(a),
            pickup(b),
            navigate_origin(a),
            drop(b),
        ]
    raise TypeError(f"not a contextual query: {query!r}")


# --- execution --------------------------------------------------------------


class ExecutionError(ValueError):
    pass


class ObjectNotInMemory(ExecutionError):
    pass


class SectionUnknown(ExecutionError):
    pass


class HandsFull(ExecutionError):
    pass


class NotAdjacent(ExecutionError):
    pass


class NotCarrying(ExecutionError):
    pass


class NotMovable(ExecutionError):
    """pickup/drop may only reference movable objects."""


@dataclass
class AgentSession:
    """A live world the agent acts in after exploring and segmenting it.

    ``object_pos`` tracks true object positions as execution moves them;
    the static ``grid`` keeps walls and ground truth. The session is
    single-writer: one command executes at a time.
    """

    grid: GridMap
    kb: KnowledgeBase
    segmentation: Segmentation
    graph: SectionGraph
    memory: ObjectMemory
    agent_pos: Position
    object_pos: dict[int, Position]
    carrying: Optional[int] = None

    @classmethod
    def bootstrap(
        cls,
        grid: GridMap,
        kb: KnowledgeBase,
        mas: int = 4000,
        seed: int = 0,
        radius: float = 3.0,
        start: Optional[Position] = None,
        cfg: SegmentConfig = SegmentConfig(),
    ) -> "AgentSession":
        """Sample movable items, explore, segment, then open a session.

        Knowledge names already placed on the map are left alone, so a
        pre-populated map passes through unchanged.
        """
        from .harness import mix_seed

        if grid.ground_truth is not None:
            grid = sample_objects(grid, kb, mix_seed(seed, 0))
        origin = start if start is not None else default_start(grid)
        result = explore(grid, origin, mas, radius, mix_seed(seed, 1))
        seg = segment(result.memory, result.visited, grid, kb, cfg)
        graph = build_section_graph(seg)
        return cls(
            grid=grid,
            kb=kb,
            segmentation=seg,
            graph=graph,
            memory=result.memory,
            agent_pos=result.trace[-1],
            object_pos={obj.id: obj.pos for obj in grid.objects},
        )

    def clone(self) -> "AgentSession":
        return replace(
            self, memory=self.memory.copy(), object_pos=dict(self.object_pos)
        )

    def object_name(self, obj_id: int) -> str:
        return self.grid.object_by_id(obj_id).name

    def carrying_name(self) -> Optional[str]:
        return self.object_name(self.carrying) if self.carrying is not None else None


@dataclass(frozen=True)
class LogEntry:
    subtask: SubTask
    position: Position
    carrying: Optional[str]
    trajectory: Optional[Trajectory]


@dataclass(frozen=True)
class ObjectMove:
    obj_id: int
    name: str
    src: Position
    dst: Position


@dataclass(frozen=True)
class ExecutionLog:
    entries: tuple[LogEntry, ...]
    object_moves: tuple[ObjectMove, ...]


StepCallback = Callable[[Position, Optional[str], Optional[tuple[int, Optional[Position]]]], None]


def _nearest_section_cell(session: AgentSession, section: SectionLabel) -> Position:
    """Closest cell labeled ``section`` by walk distance, ties by (y, x)."""
    targets = {
        pos for pos, lbl in session.segmentation.labels.items() if lbl is section
    }
    if not targets:
        raise SectionUnknown(f"no cell labeled {section.value}")
    grid = session.grid
    layer = [session.agent_pos]
    seen = {session.agent_pos}
    while layer:
        found = [p for p in layer if p in targets]
        if found:
            return min(found, key=lambda p: (p.y, p.x))
        nxt_layer = []
        for cur in layer:
            for dx, dy in ((0, -1), (0, 1), (-1, 0), (1, 0)):
                nxt = Position(cur.x + dx, cur.y + dy)
                if nxt not in seen and grid.is_walkable(nxt.x, nxt.y):
                    seen.add(nxt)
                    nxt_layer.append(nxt)
        layer = nxt_layer
    raise SectionUnknown(f"no reachable cell labeled {section.value}")


def _object_walk_target(session: AgentSession, pos: Position) -> Position:
    """The object's cell if walkable, else its nearest walkable 4-neighbor."""
    if session.grid.is_walkable(pos.x, pos.y):
        return pos
    options = [
        Position(pos.x + dx, pos.y + dy)
        for dx, dy in ((0, -1), (0, 1), (-1, 0), (1, 0))
    ]
    options = [p for p in options if session.grid.is_walkable(p.x, p.y)]
    if not options:
        raise SectionUnknown(f"object cell {pos} has no walkable neighbor")
    return min(options, key=lambda p: (p.y, p.x))


def execute(
    session: AgentSession,
    plan: Sequence[SubTask],
    on_step: Optional[StepCallback] = None,
) -> ExecutionLog:
    """Run a subtask program against the session, mutating it.

    Object origins are recorded at plan start, so a later
    navigate-to-origin means the position the object had before this
    program ran. Raises an ExecutionError subclass on contract
    violations (unknown object, full hands, dropped nothing, ...).
    """
    initial_pos = dict(session.object_pos)
    origins: dict[str, Position] = {}
    for st in plan:
        if st.kind in (TARGET_OBJECT, TARGET_ORIGIN) and st.target not in origins:
            entry = session.memory.find_by_name(st.target)
            if entry is not None:
                origins[st.target] = entry.pos

    entries: list[LogEntry] = []

    def emit(move: Optional[tuple[int, Optional[Position]]] = None) -> None:
        if on_step is not None:
            on_step(session.agent_pos, session.carrying_name(), move)

    def walk(target: Position, tag: str) -> Trajectory:
        traj = plan_trajectory(
            session.grid,
            session.segmentation,
            session.graph,
            session.agent_pos,
            [target],
            [tag],
        )
        for cell in traj.steps[1:]:
            session.agent_pos = cell
            if session.carrying is not None:
                session.object_pos[session.carrying] = cell
            emit()
        return traj

    def lookup(name: str):
        entry = session.memory.find_by_name(name)
        if entry is None:
            raise ObjectNotInMemory(f"{name!r} is not in the agent's memory")
        return entry

    for st in plan:
        traj: Optional[Trajectory] = None
        if st.op == "find":
            lookup(st.target)
        elif st.op == "navigate":
            if st.kind == TARGET_SECTION:
                label = next(
                    (s for s in SectionLabel if s.value == st.target), None
                )
                if label is None:
                    raise SectionUnknown(f"unknown section {st.target!r}")
                traj = walk(_nearest_section_cell(session, label), WAYPOINT_DESTINATION)
            elif st.kind == TARGET_ORIGIN:
                if st.target not in origins:
                    raise ObjectNotInMemory(f"no recorded origin for {st.target!r}")
                traj = walk(origins[st.target], WAYPOINT_DESTINATION)
            else:
                entry = lookup(st.target)
                pos = session.object_pos.get(entry.id, entry.pos)
                traj = walk(_object_walk_target(session, pos), WAYPOINT_PICKUP)
        elif st.op == "pickup":
            entry = lookup(st.target)
            obj = session.grid.object_by_id(entry.id)
            if not obj.movable:
                raise NotMovable(f"{st.target!r} cannot be picked up")
            if session.carrying is not None:
                raise HandsFull(f"already carrying {session.carrying_name()!r}")
            pos = session.object_pos[entry.id]
            if abs(pos.x - session.agent_pos.x) + abs(pos.y - session.agent_pos.y) > 1:
                raise NotAdjacent(f"{st.target!r} at {pos} is out of reach")
            session.carrying = entry.id
            session.object_pos[entry.id] = session.agent_pos
            emit((entry.id, None))
        elif st.op == "drop":
            entry = lookup(st.target)
            if session.carrying != entry.id:
                raise NotCarrying(f"not carrying {st.target!r}")
            session.carrying = None
            session.object_pos[entry.id] = session.agent_pos
            session.memory.update_position(entry.id, session.agent_pos)
            emit((entry.id, session.agent_pos))
        else:
            raise ValueError(f"unknown subtask op {st.op!r}")
        entries.append(
            LogEntry(st, session.agent_pos, session.carrying_name(), traj)
        )

    moves = tuple(
        ObjectMove(obj_id, session.object_name(obj_id), initial_pos[obj_id], pos)
        for obj_id, pos in sorted(session.object_pos.items())
        if initial_pos.get(obj_id) != pos
    )
    return ExecutionLog(tuple(entries), moves)


def run_command(
    session: AgentSession,
    text: str,
    on_step: Optional[StepCallback] = None,
) -> tuple[ContextualQuery, list[SubTask], ExecutionLog]:
    """Parse, compile, and execute one command against the session."""
    query = parse_command(text, Lexicon.from_knowledge(session.kb))
    plan = compile_query(query)
    log = execute(session, plan, on_step)
    return query, plan, log
