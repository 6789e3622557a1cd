"""Command-line interface: exploration, segmentation, routing, commands,
experiment sweeps, and the HTTP bridge."""

from __future__ import annotations

import argparse
import csv
import sys
from pathlib import Path

from . import data as bundled
from .explore import coverage, explore
from .harness import CSV_HEADER, SweepConfig, mix_seed, records_to_csv, run_sweep
from .navigate import plan_trajectory, section_path
from .segment import (
    SegmentConfig,
    boundary_points,
    build_section_graph,
    ground_truth_segmentation,
    segment,
)
from .tasking import AgentSession, ParseError, ExecutionError, run_command
from .world import (
    Position,
    default_start,
    parse_knowledge,
    parse_plan,
    sample_objects,
)


def _read(path: str) -> str:
    p = Path(path)
    if not p.exists():
        candidate = bundled.data_dir() / p.name
        if candidate.exists():
            p = candidate
    return p.read_text()


def _load_world(args, seed: int):
    grid = parse_plan(_read(args.plan))
    kb = parse_knowledge(_read(args.knowledge))
    if grid.ground_truth is not None:
        grid = sample_objects(grid, kb, mix_seed(seed, 0))
    return grid, kb


def _parse_xy(text: str) -> Position:
    x, y = text.split(",")
    return Position(int(x), int(y))


def cmd_explore(args) -> int:
    grid, kb = _load_world(args, args.seed)
    start = _parse_xy(args.start) if args.start else default_start(grid)
    result = explore(grid, start, args.mas, args.radius, mix_seed(args.seed, 1))
    print(f"steps: {result.steps_taken}")
    print(f"coverage: {coverage(result, grid):.4f}")
    print(f"objects remembered: {len(result.memory)}")
    if args.trace:
        Path(args.trace).write_text(
            "".join(f"{p.x},{p.y}\n" for p in result.trace)
        )
        print(f"trace written to {args.trace}")
    return 0


def cmd_segment(args) -> int:
    grid, kb = _load_world(args, args.seed)
    start = default_start(grid)
    result = explore(grid, start, args.mas, args.radius, mix_seed(args.seed, 1))
    cfg = SegmentConfig(occlusion_factor=args.n_factor)
    seg = segment(result.memory, result.visited, grid, kb, cfg)
    Path(args.grid_out).write_text(seg.to_text())
    with open(args.boundary_out, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["x", "y", "section_a", "section_b"])
        for bp in boundary_points(seg):
            writer.writerow([bp.pos.x, bp.pos.y, bp.sections[0].value, bp.sections[1].value])
    print(f"labeled cells: {len(seg.labels)}")
    print(f"sections present: {sorted(s.value for s in seg.sections_present)}")
    print(f"label grid written to {args.grid_out}")
    print(f"boundary points written to {args.boundary_out}")
    return 0


def cmd_route(args) -> int:
    grid = parse_plan(_read(args.plan))
    seg = ground_truth_segmentation(grid)
    graph = build_section_graph(seg)
    src = _parse_xy(getattr(args, "from"))
    dst = _parse_xy(args.to)
    spath = section_path(graph, seg.label_at(src), seg.label_at(dst))
    print(" -> ".join(s.value for s in spath))
    traj = plan_trajectory(grid, seg, graph, src, [dst])
    lines = "".join(f"{p.x},{p.y}\n" for p in traj.steps)
    if args.out:
        Path(args.out).write_text(lines)
        print(f"{len(traj.steps)} steps written to {args.out}")
    else:
        sys.stdout.write(lines)
    return 0


def _print_execution(query, plan, log) -> None:
    print(f"query: {query}")
    print("subtasks: " + ", ".join(str(t) for t in plan))
    for entry in log.entries:
        walked = len(entry.trajectory.steps) - 1 if entry.trajectory else 0
        carrying = entry.carrying or "-"
        print(
            f"  {str(entry.subtask):<24} -> ({entry.position.x},{entry.position.y})"
            f" carrying={carrying} walked={walked}"
        )
    for move in log.object_moves:
        print(
            f"moved {move.name}#{move.obj_id}: ({move.src.x},{move.src.y})"
            f" -> ({move.dst.x},{move.dst.y})"
        )


def cmd_do(args) -> int:
    grid, kb = _load_world(args, args.seed)
    session = AgentSession.bootstrap(grid, kb, mas=args.mas, seed=args.seed, radius=args.radius)
    try:
        query, plan, log = run_command(session, args.text)
    except (ParseError, ExecutionError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    _print_execution(query, plan, log)
    return 0


def cmd_repl(args) -> int:
    grid, kb = _load_world(args, args.seed)
    session = AgentSession.bootstrap(grid, kb, mas=args.mas, seed=args.seed, radius=args.radius)
    print(f"session ready; agent at ({session.agent_pos.x},{session.agent_pos.y})")
    for line in sys.stdin:
        text = line.strip()
        if not text or text in {"quit", "exit"}:
            break
        try:
            query, plan, log = run_command(session, text)
        except (ParseError, ExecutionError) as exc:
            print(f"error: {type(exc).__name__}: {exc}")
            continue
        _print_execution(query, plan, log)
    return 0


def cmd_sweep(args) -> int:
    grid = parse_plan(_read(args.plan))
    kb = parse_knowledge(_read(args.knowledge))
    cfg = SweepConfig(
        mas_min=args.mas_min,
        mas_max=args.mas_max,
        mas_step=args.mas_step,
        trials=args.trials,
        master_seed=args.seed,
        radius=args.radius,
    )
    records = run_sweep(grid, kb, cfg)
    text = records_to_csv(records)
    Path(args.out).write_text(text)
    print(f"{len(records)} records written to {args.out}")
    print(CSV_HEADER)
    for r in (records[0], records[len(records) // 2], records[-1]):
        print(
            f"{r.mas},{r.mean_coverage:.6f},{r.mean_sections_recognized:.6f},"
            f"{r.mean_label_accuracy:.6f},{r.trials}"
        )
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .bridge import create_app

    app = create_app(Path(args.plans_dir))
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def _add_world_args(p, mas_default=4000):
    p.add_argument("--plan", default="house40.plan", help="plan file (bundled name or path)")
    p.add_argument("--knowledge", default="house40.kb", help="knowledge file")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--radius", type=float, default=3.0)
    p.add_argument("--mas", type=int, default=mas_default, help="exploration step budget")


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="gridhouse")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("explore", help="run the exploration walk")
    _add_world_args(p, mas_default=1000)
    p.add_argument("--start", help="x,y start cell (default: top-right walkable)")
    p.add_argument("--trace", help="write the visited trace as x,y lines")
    p.set_defaults(func=cmd_explore)

    p = sub.add_parser("segment", help="explore then label sections")
    _add_world_args(p)
    p.add_argument("--n-factor", type=float, default=10.0, help="occlusion discount")
    p.add_argument("--grid-out", default="segmentation.txt")
    p.add_argument("--boundary-out", default="boundaries.csv")
    p.set_defaults(func=cmd_segment)

    p = sub.add_parser("route", help="plan a trajectory on a labeled plan")
    p.add_argument("--plan", default="house40.plan")
    p.add_argument("--from", required=True, help="x,y")
    p.add_argument("--to", required=True, help="x,y")
    p.add_argument("--out", help="write steps as x,y lines")
    p.set_defaults(func=cmd_route)

    p = sub.add_parser("do", help="execute one natural-language command")
    _add_world_args(p)
    p.add_argument("text", help="command text")
    p.set_defaults(func=cmd_do)

    p = sub.add_parser("repl", help="interactive command session")
    _add_world_args(p)
    p.set_defaults(func=cmd_repl)

    p = sub.add_parser("sweep", help="coverage/segmentation sweep over step budgets")
    p.add_argument("--plan", default="house40.plan")
    p.add_argument("--knowledge", default="house40.kb")
    p.add_argument("--mas-min", type=int, default=50)
    p.add_argument("--mas-max", type=int, default=2000)
    p.add_argument("--mas-step", type=int, default=50)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=int, default=3)
    p.add_argument("--radius", type=float, default=3.0)
    p.add_argument("--out", default="sweep.csv")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("serve", help="run the HTTP session bridge")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--plans-dir", default=str(bundled.data_dir()))
    p.set_defaults(func=cmd_serve)

    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
