// Plays queued step events against the marker at a fixed cell rate.

import { StepEvent } from "./types.js";

export const CELLS_PER_SECOND = 20;
export const STEP_MS = 1000 / CELLS_PER_SECOND;

export class Animator {
  private queue: StepEvent[] = [];
  private timer: ReturnType<typeof setInterval> | null = null;
  private paused = false;
  private idleResolvers: (() => void)[] = [];

  constructor(private apply: (ev: StepEvent) => void) {}

  enqueue(ev: StepEvent): void {
    this.queue.push(ev);
    this.ensureTicking();
  }

  pause(): void {
    this.paused = true;
  }

  resume(): void {
    this.paused = false;
    this.ensureTicking();
  }

  get pending(): number {
    return this.queue.length;
  }

  // Resolves once the queue drains (immediately if already idle).
  whenIdle(): Promise<void> {
    if (this.queue.length === 0) return Promise.resolve();
    return new Promise((resolve) => this.idleResolvers.push(resolve));
  }

  private ensureTicking(): void {
    if (this.timer !== null || this.paused) return;
    this.timer = setInterval(() => this.tick(), STEP_MS);
  }

  private tick(): void {
    if (this.paused || this.queue.length === 0) {
      if (this.timer !== null) {
        clearInterval(this.timer);
        this.timer = null;
      }
      if (this.queue.length === 0) {
        const resolvers = this.idleResolvers;
        this.idleResolvers = [];
        for (const resolve of resolvers) resolve();
      }
      return;
    }
    const ev = this.queue.shift()!;
    this.apply(ev);
    if (this.queue.length === 0) this.tick(); // flush idle notification
  }
}
