"""Command-line entry points (run in-process)."""

import csv

from gridhouse.cli import main


def test_explore_prints_summary(tmp_path, capsys):
    trace = tmp_path / "trace.txt"
    rc = main([
        "explore", "--mas", "300", "--seed", "3", "--trace", str(trace),
    ])
    assert rc == 0
    out = capsys.readouterr().out
    assert "steps: 300" in out
    assert "coverage:" in out
    lines = trace.read_text().splitlines()
    assert len(lines) == 301
    x, y = lines[0].split(",")
    int(x), int(y)


def test_segment_writes_grid_and_csv(tmp_path, capsys):
    grid_out = tmp_path / "seg.txt"
    csv_out = tmp_path / "bounds.csv"
    rc = main([
        "segment", "--mas", "4000", "--seed", "1",
        "--grid-out", str(grid_out), "--boundary-out", str(csv_out),
    ])
    assert rc == 0
    rows = grid_out.read_text().splitlines()
    assert len(rows) == 40 and len(rows[0]) == 40
    present = {ch for row in rows for ch in row} - {"."}
    assert present == {"K", "L", "B", "S", "T", "A"}
    with open(csv_out) as fh:
        header = next(csv.reader(fh))
    assert header == ["x", "y", "section_a", "section_b"]


def test_route_prints_section_path(tmp_path, capsys):
    out = tmp_path / "steps.txt"
    rc = main(["route", "--from", "31,6", "--to", "6,6", "--out", str(out)])
    assert rc == 0
    printed = capsys.readouterr().out
    assert "Bathroom -> Bedroom -> Balcony" in printed
    steps = out.read_text().splitlines()
    assert steps[0] == "31,6" and steps[-1] == "6,6"


def test_do_executes_command(capsys):
    rc = main(["do", "--seed", "1", "I want an banana. I am at bedroom"])
    assert rc == 0
    out = capsys.readouterr().out
    assert "query: Bring[banana,Bedroom]" in out
    assert "subtasks: find(banana), navigate(banana), pickup(banana), navigate(Bedroom), drop(banana)" in out
    assert "moved banana" in out


def test_do_reports_parse_errors(capsys):
    rc = main(["do", "--seed", "1", "--mas", "200", "dance for me"])
    assert rc == 1
    err = capsys.readouterr().err
    assert "NoVerbMatch" in err


def test_sweep_writes_csv(tmp_path, capsys):
    out = tmp_path / "sweep.csv"
    rc = main([
        "sweep", "--mas-min", "100", "--mas-max", "300", "--mas-step", "100",
        "--trials", "2", "--seed", "5", "--out", str(out),
    ])
    assert rc == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "mas,mean_coverage,mean_sections_recognized,mean_label_accuracy,trials"
    assert len(lines) == 4


def test_repl_runs_commands(monkeypatch, capsys):
    import io

    monkeypatch.setattr("sys.stdin", io.StringIO("go to the kitchen\nquit\n"))
    rc = main(["repl", "--seed", "1"])
    assert rc == 0
    out = capsys.readouterr().out
    assert "session ready" in out
    assert "query: Navigate[Kitchen]" in out
