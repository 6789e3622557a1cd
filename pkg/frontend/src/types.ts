// Wire types for the bridge HTTP API.

export interface StateDoc {
  width: number;
  height: number;
  walkable: string[];   // one row per line, "." walkable / "#" wall
  sections: string[];   // section letters (K L B S T A) or "."
  objects: ObjectDoc[];
  agent: Cell;
  carrying: string | null;
  seq: number;
}

export interface ObjectDoc {
  id: number;
  name: string;
  x: number;
  y: number;
  movable: boolean;
}

export interface Cell {
  x: number;
  y: number;
}

export interface StepEvent {
  seq: number;
  x: number;
  y: number;
  carrying: string | null;
  object_move?: {
    id: number;
    name: string;
    pos: Cell | null;   // null while the object is carried
  };
}

export interface CommandResult {
  query: string;
  subtasks: string[];
  trajectory: Cell[];
  seq: number;
}

export interface ErrorEnvelope {
  error: { code: string; message: string };
}
