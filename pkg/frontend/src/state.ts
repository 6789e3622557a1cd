// Pure view-model: built from a state document, advanced by step events.

import { Cell, ObjectDoc, StateDoc, StepEvent } from "./types.js";

// Fixed six-entry palette, one color per section letter.
export const SECTION_COLORS: Record<string, string> = {
  K: "#e8a33d", // Kitchen
  L: "#5b9bd5", // LivingRoom
  B: "#b07fd8", // Bedroom
  S: "#6abf69", // Studio
  T: "#4ecdc4", // Bathroom
  A: "#f2719a", // Balcony
};

export const SECTION_NAMES: Record<string, string> = {
  K: "Kitchen",
  L: "LivingRoom",
  B: "Bedroom",
  S: "Studio",
  T: "Bathroom",
  A: "Balcony",
};

export interface ViewModel {
  width: number;
  height: number;
  walkable: boolean[][];
  sections: (string | null)[][];
  objects: Map<number, ObjectDoc>;
  agent: Cell;
  carrying: string | null;
  seq: number;
}

export function fromStateDoc(doc: StateDoc): ViewModel {
  const walkable = doc.walkable.map((row) => [...row].map((ch) => ch === "."));
  const sections = doc.sections.map((row) =>
    [...row].map((ch) => (ch === "." ? null : ch)),
  );
  const objects = new Map(doc.objects.map((o) => [o.id, { ...o }]));
  return {
    width: doc.width,
    height: doc.height,
    walkable,
    sections,
    objects,
    agent: { ...doc.agent },
    carrying: doc.carrying,
    seq: doc.seq,
  };
}

// Apply one step event, returning a new view model (inputs untouched).
export function applyEvent(vm: ViewModel, ev: StepEvent): ViewModel {
  const objects = new Map(vm.objects);
  if (ev.object_move) {
    const move = ev.object_move;
    if (move.pos === null) {
      objects.delete(move.id);
    } else {
      const existing = objects.get(move.id);
      objects.set(move.id, {
        id: move.id,
        name: move.name,
        movable: existing ? existing.movable : true,
        x: move.pos.x,
        y: move.pos.y,
      });
    }
  }
  return {
    ...vm,
    objects,
    agent: { x: ev.x, y: ev.y },
    carrying: ev.carrying,
    seq: ev.seq,
  };
}

export function sectionAt(vm: ViewModel, x: number, y: number): string | null {
  return vm.sections[y]?.[x] ?? null;
}

export function distinctSections(vm: ViewModel): Set<string> {
  const out = new Set<string>();
  for (const row of vm.sections) {
    for (const ch of row) {
      if (ch !== null) out.add(ch);
    }
  }
  return out;
}
