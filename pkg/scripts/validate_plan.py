#!/usr/bin/env python3
"""Development checks for the bundled plan: graph shape, key-object
visibility containment, coverage bands, inferred-graph stability."""

from __future__ import annotations

import sys
import time

sys.path.insert(0, "src")

from gridhouse.data import read_knowledge, read_plan
from gridhouse.explore import coverage, explore
from gridhouse.harness import mix_seed
from gridhouse.segment import (
    build_section_graph,
    ground_truth_segmentation,
    segment,
    visibility_mask,
)
from gridhouse.world import (
    default_start,
    parse_knowledge,
    parse_plan,
    sample_objects,
)

EXPECTED_EDGES = {
    ("Balcony", "Bedroom"),
    ("Balcony", "Studio"),
    ("Bedroom", "Studio"),
    ("Kitchen", "Studio"),
    ("Kitchen", "LivingRoom"),
    ("Bathroom", "Bedroom"),
}


def edge_names(graph):
    return {tuple(sorted((a.value, b.value))) for a, b in graph.edges}


def main() -> None:
    grid = parse_plan(read_plan())
    kb = parse_knowledge(read_knowledge())
    print(f"walkable cells: {grid.walkable_count}")
    print(f"default start: {default_start(grid)}")

    gt_graph = build_section_graph(ground_truth_segmentation(grid))
    print("GT edges:", sorted(edge_names(gt_graph)))
    assert edge_names(gt_graph) == EXPECTED_EDGES, "ground-truth graph mismatch"

    # Key objects may be visible only from their own ground-truth room or
    # from rooms adjacent to it in the graph (such leakage shifts the
    # boundary along an existing edge, never invents a new one).
    adjacency = {}
    for a, b in gt_graph.edges:
        adjacency.setdefault(a, set()).add(b)
        adjacency.setdefault(b, set()).add(a)
    for obj in grid.objects:
        if obj.name not in kb.key_of:
            continue
        section = kb.key_of[obj.name]
        allowed = {section, None} | adjacency.get(section, set())
        vis = visibility_mask(grid, obj.pos)
        bad = []
        leaked = set()
        for cell in grid.walkable_cells():
            truth = grid.gt_label(cell)
            if vis[cell.y, cell.x] and truth is not section and truth is not None:
                if truth in allowed:
                    leaked.add(truth.value)
                else:
                    bad.append(cell)
        if bad:
            print(f"LEAK: {obj.name} visible from {len(bad)} non-adjacent cells, e.g. {bad[:6]}")
        else:
            note = f" (adjacent-room spill: {sorted(leaked)})" if leaked else ""
            print(f"ok: {obj.name} visibility safe{note}")

    # Coverage statistics across seeds.
    start = default_start(grid)
    for mas in (500, 750, 1000, 1300, 1600, 2000):
        t0 = time.time()
        covs, steps_used = [], []
        for trial in range(20):
            seed = mix_seed(1, mas, trial)
            world = sample_objects(grid, kb, mix_seed(seed, 0))
            res = explore(world, start, mas, 3.0, mix_seed(seed, 1))
            covs.append(coverage(res, world))
            steps_used.append(res.steps_taken)
        mean = sum(covs) / len(covs)
        print(
            f"mas={mas:5d} mean_cov={mean:.4f} min={min(covs):.4f} max={max(covs):.4f}"
            f" steps~{sum(steps_used)//len(steps_used)} ({time.time()-t0:.2f}s)"
        )

    # Inferred graph at full exploration for a batch of seeds.
    t0 = time.time()
    mismatches = 0
    for seed in range(20):
        world = sample_objects(grid, kb, mix_seed(seed, 0))
        res = explore(world, start, 4000, 3.0, mix_seed(seed, 1))
        seg = segment(res.memory, res.visited, world, kb)
        g = build_section_graph(seg)
        if edge_names(g) != EXPECTED_EDGES:
            mismatches += 1
            print(f"seed {seed}: inferred edges {sorted(edge_names(g))}")
        acc = sum(
            1 for p, l in seg.labels.items() if world.gt_label(p) is l
        ) / len(seg.labels)
        if seed < 5:
            print(f"seed {seed}: sections={len(seg.sections_present)} accuracy={acc:.4f}")
    print(f"inferred-graph mismatches: {mismatches}/20 ({time.time()-t0:.1f}s)")


if __name__ == "__main__":
    main()
