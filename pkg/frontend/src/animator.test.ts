import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";

import { Animator, STEP_MS } from "./animator.js";
import { StepEvent } from "./types.js";

function step(seq: number): StepEvent {
  return { seq, x: seq, y: 0, carrying: null };
}

describe("Animator", () => {
  beforeEach(() => vi.useFakeTimers());
  afterEach(() => vi.useRealTimers());

  it("applies queued events in order at the fixed rate", () => {
    const seen: number[] = [];
    const anim = new Animator((ev) => seen.push(ev.seq));
    for (let i = 1; i <= 5; i++) anim.enqueue(step(i));
    expect(seen).toEqual([]);
    vi.advanceTimersByTime(STEP_MS * 2 + 1);
    expect(seen).toEqual([1, 2]);
    vi.advanceTimersByTime(STEP_MS * 3);
    expect(seen).toEqual([1, 2, 3, 4, 5]);
  });

  it("visits exactly the received cell sequence", () => {
    const cells: [number, number][] = [];
    const anim = new Animator((ev) => cells.push([ev.x, ev.y]));
    const path: StepEvent[] = [
      { seq: 1, x: 1, y: 0, carrying: null },
      { seq: 2, x: 1, y: 1, carrying: null },
      { seq: 3, x: 2, y: 1, carrying: null },
    ];
    path.forEach((ev) => anim.enqueue(ev));
    vi.advanceTimersByTime(STEP_MS * 10);
    expect(cells).toEqual([[1, 0], [1, 1], [2, 1]]);
  });

  it("pauses and resumes", () => {
    const seen: number[] = [];
    const anim = new Animator((ev) => seen.push(ev.seq));
    anim.enqueue(step(1));
    anim.enqueue(step(2));
    vi.advanceTimersByTime(STEP_MS + 1);
    expect(seen).toEqual([1]);
    anim.pause();
    vi.advanceTimersByTime(STEP_MS * 5);
    expect(seen).toEqual([1]);
    anim.resume();
    vi.advanceTimersByTime(STEP_MS * 2);
    expect(seen).toEqual([1, 2]);
  });

  it("whenIdle resolves after the queue drains", async () => {
    const anim = new Animator(() => undefined);
    let idle = false;
    anim.enqueue(step(1));
    void anim.whenIdle().then(() => {
      idle = true;
    });
    await vi.advanceTimersByTimeAsync(STEP_MS - 1);
    expect(idle).toBe(false);
    await vi.advanceTimersByTimeAsync(STEP_MS);
    expect(idle).toBe(true);
  });
});
