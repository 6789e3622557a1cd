// @vitest-environment jsdom
import { describe, expect, it } from "vitest";

import { buildGrid, renderLegend, showError, updateGrid } from "./render.js";
import { applyEvent, fromStateDoc } from "./state.js";
import { tinyState } from "./state.test.js";
import { StateDoc } from "./types.js";

function bigState(): StateDoc {
  const walkable: string[] = [];
  const sections: string[] = [];
  const letters = ["K", "L", "B", "S", "T", "A"];
  for (let y = 0; y < 40; y++) {
    walkable.push((y % 7 === 0 ? "#" : ".").repeat(40));
    sections.push(letters[y % 6].repeat(40));
  }
  return {
    width: 40,
    height: 40,
    walkable,
    sections,
    objects: [{ id: 1, name: "banana", x: 3, y: 1, movable: true }],
    agent: { x: 1, y: 1 },
    carrying: null,
    seq: 0,
  };
}

describe("grid rendering", () => {
  it("renders width x height cells with section colors", () => {
    const root = document.createElement("div");
    const vm = fromStateDoc(bigState());
    buildGrid(root, vm);
    expect(root.children.length).toBe(1600);
    const colors = new Set<string>();
    for (const el of Array.from(root.children) as HTMLElement[]) {
      if (!el.classList.contains("wall")) colors.add(el.style.backgroundColor);
    }
    expect(colors.size).toBe(6);
  });

  it("marks the agent cell and moves it on update", () => {
    const root = document.createElement("div");
    let vm = fromStateDoc(tinyState());
    buildGrid(root, vm);
    const at = (x: number, y: number) => root.children[y * vm.width + x] as HTMLElement;
    expect(at(0, 1).classList.contains("agent")).toBe(true);
    vm = applyEvent(vm, { seq: 1, x: 1, y: 1, carrying: null });
    updateGrid(root, vm);
    expect(at(0, 1).classList.contains("agent")).toBe(false);
    expect(at(1, 1).classList.contains("agent")).toBe(true);
  });

  it("shows objects with their names in tooltips", () => {
    const root = document.createElement("div");
    const vm = fromStateDoc(tinyState());
    buildGrid(root, vm);
    const cell = root.children[0] as HTMLElement;
    expect(cell.title).toBe("banana");
  });
});

describe("legend", () => {
  it("lists one swatch per present section", () => {
    const root = document.createElement("div");
    renderLegend(root, fromStateDoc(bigState()));
    expect(root.querySelectorAll(".legend-item").length).toBe(6);
  });
});

describe("error banner", () => {
  it("shows and clears without touching the grid", () => {
    const grid = document.createElement("div");
    const banner = document.createElement("div");
    const vm = fromStateDoc(tinyState());
    buildGrid(grid, vm);
    const before = grid.innerHTML;
    showError(banner, "no_verb_match: no verb recognized");
    expect(banner.classList.contains("visible")).toBe(true);
    expect(grid.innerHTML).toBe(before);
    showError(banner, null);
    expect(banner.classList.contains("visible")).toBe(false);
  });
});
