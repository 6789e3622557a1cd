"""HTTP session service: world state, command execution, step events.

Each session owns one agent in one explored-and-segmented world.
Commands execute strictly one at a time per session against a working
copy that is committed only on success, so a failed command never
mutates the session. Every agent step becomes one event; subscribers
receive the stream over server-sent events, with replay from any
sequence number via ``Last-Event-ID`` or ``?since=``.
"""

from __future__ import annotations

import asyncio
import json
import time
import uuid
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Optional

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, StreamingResponse

from . import data as bundled
from .tasking import (
    AgentSession,
    ExecutionError,
    ParseError,
    run_command,
)
from .world import PlanError, Position, parse_knowledge, parse_plan

SESSION_TTL_SECONDS = 30 * 60

_ERROR_CODES = {
    "NoVerbMatch": "no_verb_match",
    "MissingObject": "missing_object",
    "MissingSection": "missing_section",
    "AmbiguousQuery": "ambiguous_query",
    "ParseError": "parse_error",
    "ObjectNotInMemory": "object_not_in_memory",
    "SectionUnknown": "section_unknown",
    "HandsFull": "hands_full",
    "NotAdjacent": "not_adjacent",
    "NotCarrying": "not_carrying",
    "NotMovable": "not_movable",
    "Unreachable": "unreachable",
    "UnlabeledPosition": "unlabeled_position",
}


def _error_body(exc: Exception) -> dict:
    code = _ERROR_CODES.get(type(exc).__name__, "error")
    return {"error": {"code": code, "message": str(exc)}}


@dataclass
class SessionRecord:
    id: str
    session: AgentSession
    seed: int
    mas: int
    created: float = field(default_factory=time.time)
    last_used: float = field(default_factory=time.time)
    seq: int = 0
    events: list[dict] = field(default_factory=list)
    subscribers: list[asyncio.Queue] = field(default_factory=list)
    lock: asyncio.Lock = field(default_factory=asyncio.Lock)

    def touch(self) -> None:
        self.last_used = time.time()

    def publish(self, payloads: list[dict]) -> None:
        for payload in payloads:
            self.seq += 1
            event = {"seq": self.seq, **payload}
            self.events.append(event)
            for queue in list(self.subscribers):
                queue.put_nowait(event)


class SessionStore:
    def __init__(self, plans_dir: Path):
        self.plans_dir = plans_dir
        self.records: dict[str, SessionRecord] = {}

    def _purge(self) -> None:
        cutoff = time.time() - SESSION_TTL_SECONDS
        for sid in [s for s, r in self.records.items() if r.last_used < cutoff]:
            del self.records[sid]

    def _plan_text(self, name: str, kind: str) -> str:
        path = self.plans_dir / f"{name}.{kind}"
        if not path.exists():
            raise PlanError(f"unknown {kind} {name!r}")
        return path.read_text()

    def create(self, body: dict) -> SessionRecord:
        self._purge()
        name = body.get("plan", "house40")
        plan_text = body.get("plan_text") or self._plan_text(name, "plan")
        knowledge_text = body.get("knowledge_text") or self._plan_text(name, "kb")
        seed = int(body.get("seed", 0))
        mas = int(body.get("mas", 4000))
        radius = float(body.get("radius", 3.0))
        grid = parse_plan(plan_text)
        kb = parse_knowledge(knowledge_text)
        session = AgentSession.bootstrap(grid, kb, mas=mas, seed=seed, radius=radius)
        record = SessionRecord(id=uuid.uuid4().hex[:12], session=session, seed=seed, mas=mas)
        self.records[record.id] = record
        return record

    def get(self, sid: str) -> Optional[SessionRecord]:
        self._purge()
        record = self.records.get(sid)
        if record:
            record.touch()
        return record


def state_document(record: SessionRecord) -> dict:
    s = record.session
    grid = s.grid
    walk_rows = [
        "".join("." if grid.walkable[y, x] else "#" for x in range(grid.width))
        for y in range(grid.height)
    ]
    sec_rows = []
    for y in range(grid.height):
        row = []
        for x in range(grid.width):
            label = s.segmentation.label_at(Position(x, y))
            row.append(label.letter if label else ".")
        sec_rows.append("".join(row))
    objects = [
        {
            "id": obj.id,
            "name": obj.name,
            "x": s.object_pos[obj.id].x,
            "y": s.object_pos[obj.id].y,
            "movable": obj.movable,
        }
        for obj in grid.objects
        if s.carrying != obj.id
    ]
    return {
        "width": grid.width,
        "height": grid.height,
        "walkable": walk_rows,
        "sections": sec_rows,
        "objects": objects,
        "agent": {"x": s.agent_pos.x, "y": s.agent_pos.y},
        "carrying": s.carrying_name(),
        "seq": record.seq,
    }


def run_session_command(record: SessionRecord, text: str) -> dict:
    """Parse, compile, and execute against a working copy; commit and
    return the structured result, or raise with the session untouched."""
    working = record.session.clone()
    pending: list[dict] = []

    def on_step(pos, carrying, move):
        payload: dict[str, Any] = {"x": pos.x, "y": pos.y, "carrying": carrying}
        if move is not None:
            obj_id, obj_pos = move
            payload["object_move"] = {
                "id": obj_id,
                "name": working.object_name(obj_id),
                "pos": None if obj_pos is None else {"x": obj_pos.x, "y": obj_pos.y},
            }
        pending.append(payload)

    query, plan, log = run_command(working, text, on_step)
    record.session = working
    record.publish(pending)
    steps = [
        {"x": p.x, "y": p.y}
        for entry in log.entries
        if entry.trajectory
        for p in entry.trajectory.steps
    ]
    return {
        "query": str(query),
        "subtasks": [str(t) for t in plan],
        "log": [
            {
                "subtask": str(entry.subtask),
                "position": {"x": entry.position.x, "y": entry.position.y},
                "carrying": entry.carrying,
                "steps": len(entry.trajectory.steps) - 1 if entry.trajectory else 0,
            }
            for entry in log.entries
        ],
        "object_moves": [
            {
                "id": m.obj_id,
                "name": m.name,
                "from": {"x": m.src.x, "y": m.src.y},
                "to": {"x": m.dst.x, "y": m.dst.y},
            }
            for m in log.object_moves
        ],
        "trajectory": steps,
        "seq": record.seq,
    }


def create_app(plans_dir: Optional[Path] = None) -> FastAPI:
    store = SessionStore(plans_dir or bundled.data_dir())
    app = FastAPI(title="gridhouse bridge")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    app.state.store = store

    @app.post("/sessions")
    async def create_session(request: Request):
        body = await request.json()
        try:
            record = await asyncio.get_running_loop().run_in_executor(
                None, store.create, body
            )
        except (PlanError, ValueError) as exc:
            return JSONResponse(
                {"error": {"code": "invalid_plan", "message": str(exc)}},
                status_code=400,
            )
        return {"session_id": record.id, "state": state_document(record)}

    @app.get("/sessions/{sid}/state")
    async def get_state(sid: str):
        record = store.get(sid)
        if record is None:
            return JSONResponse(
                {"error": {"code": "unknown_session", "message": sid}}, status_code=404
            )
        return state_document(record)

    @app.post("/sessions/{sid}/command")
    async def post_command(sid: str, request: Request):
        record = store.get(sid)
        if record is None:
            return JSONResponse(
                {"error": {"code": "unknown_session", "message": sid}}, status_code=404
            )
        body = await request.json()
        text = body.get("text", "")
        async with record.lock:  # one command at a time per session
            try:
                result = await asyncio.get_running_loop().run_in_executor(
                    None, run_session_command, record, text
                )
            except (ParseError, ExecutionError) as exc:
                return JSONResponse(_error_body(exc), status_code=400)
        return result

    @app.get("/sessions/{sid}/events")
    async def events(
        sid: str,
        request: Request,
        since: Optional[int] = None,
        limit: Optional[int] = None,
    ):
        record = store.get(sid)
        if record is None:
            return JSONResponse(
                {"error": {"code": "unknown_session", "message": sid}}, status_code=404
            )
        last_id = request.headers.get("last-event-id")
        start_after = since if since is not None else (int(last_id) if last_id else record.seq)

        async def stream():
            sent = 0
            queue: asyncio.Queue = asyncio.Queue()
            record.subscribers.append(queue)
            try:
                for event in list(record.events):
                    if event["seq"] > start_after:
                        yield f"id: {event['seq']}\ndata: {json.dumps(event)}\n\n"
                        sent += 1
                        if limit is not None and sent >= limit:
                            return
                while True:
                    event = await queue.get()
                    yield f"id: {event['seq']}\ndata: {json.dumps(event)}\n\n"
                    sent += 1
                    if limit is not None and sent >= limit:
                        return
            finally:
                record.subscribers.remove(queue)

        return StreamingResponse(stream(), media_type="text/event-stream")

    return app
