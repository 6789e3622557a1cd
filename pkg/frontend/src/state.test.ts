import { describe, expect, it } from "vitest";

import { SECTION_COLORS, applyEvent, distinctSections, fromStateDoc } from "./state.js";
import { StateDoc, StepEvent } from "./types.js";

export function tinyState(): StateDoc {
  return {
    width: 3,
    height: 2,
    walkable: ["..#", "..."],
    sections: ["KK.", "LLB"],
    objects: [
      { id: 1, name: "banana", x: 0, y: 0, movable: true },
      { id: 2, name: "sofa", x: 1, y: 1, movable: false },
    ],
    agent: { x: 0, y: 1 },
    carrying: null,
    seq: 0,
  };
}

describe("fromStateDoc", () => {
  it("parses rows into grids", () => {
    const vm = fromStateDoc(tinyState());
    expect(vm.walkable[0]).toEqual([true, true, false]);
    expect(vm.sections[0]).toEqual(["K", "K", null]);
    expect(vm.objects.get(1)?.name).toBe("banana");
    expect(vm.agent).toEqual({ x: 0, y: 1 });
  });

  it("collects distinct sections", () => {
    expect(distinctSections(fromStateDoc(tinyState()))).toEqual(new Set(["K", "L", "B"]));
  });
});

describe("applyEvent", () => {
  it("moves the agent without touching the input model", () => {
    const vm = fromStateDoc(tinyState());
    const ev: StepEvent = { seq: 1, x: 1, y: 1, carrying: null };
    const next = applyEvent(vm, ev);
    expect(next.agent).toEqual({ x: 1, y: 1 });
    expect(next.seq).toBe(1);
    expect(vm.agent).toEqual({ x: 0, y: 1 });
    expect(vm.seq).toBe(0);
  });

  it("removes a picked-up object and restores it on drop", () => {
    const vm = fromStateDoc(tinyState());
    const picked = applyEvent(vm, {
      seq: 1, x: 0, y: 0, carrying: "banana",
      object_move: { id: 1, name: "banana", pos: null },
    });
    expect(picked.objects.has(1)).toBe(false);
    expect(picked.carrying).toBe("banana");
    const dropped = applyEvent(picked, {
      seq: 2, x: 1, y: 0, carrying: null,
      object_move: { id: 1, name: "banana", pos: { x: 1, y: 0 } },
    });
    expect(dropped.objects.get(1)).toMatchObject({ x: 1, y: 0, name: "banana" });
    expect(dropped.carrying).toBeNull();
  });

  it("replaying a prefix of events is order-sensitive and pure", () => {
    const vm = fromStateDoc(tinyState());
    const evs: StepEvent[] = [
      { seq: 1, x: 1, y: 1, carrying: null },
      { seq: 2, x: 2, y: 1, carrying: null },
    ];
    const once = evs.reduce(applyEvent, vm);
    const again = evs.reduce(applyEvent, vm);
    expect(once).toEqual(again);
    expect(once.agent).toEqual({ x: 2, y: 1 });
  });
});

describe("palette", () => {
  it("has exactly six fixed colors", () => {
    expect(Object.keys(SECTION_COLORS).sort()).toEqual(["A", "B", "K", "L", "S", "T"]);
    expect(new Set(Object.values(SECTION_COLORS)).size).toBe(6);
  });
});
