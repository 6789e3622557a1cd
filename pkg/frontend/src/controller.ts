// Session controller: owns the view model, serializes command
// submissions, and feeds step events through the animator.

import { BridgeClient, BridgeError } from "./api.js";
import { Animator } from "./animator.js";
import { ViewModel, applyEvent, fromStateDoc } from "./state.js";
import { StateDoc, StepEvent } from "./types.js";

export interface ControllerHooks {
  onModel(vm: ViewModel): void;
  onLog(text: string): void;
  onError(message: string | null): void;
}

export class SessionController {
  vm: ViewModel;
  readonly animator: Animator;
  private chain: Promise<void> = Promise.resolve();
  private stopEvents: (() => void) | null = null;

  constructor(
    private client: BridgeClient,
    private sid: string,
    state: StateDoc,
    private hooks: ControllerHooks,
  ) {
    this.vm = fromStateDoc(state);
    this.animator = new Animator((ev) => {
      this.vm = applyEvent(this.vm, ev);
      this.hooks.onModel(this.vm);
    });
  }

  start(): void {
    this.stopEvents = this.client.openEvents(this.sid, this.vm.seq, (ev: StepEvent) =>
      this.animator.enqueue(ev),
    );
    this.hooks.onModel(this.vm);
  }

  stop(): void {
    this.stopEvents?.();
  }

  // Submit a command; submissions made while a previous one is still
  // executing or animating run strictly afterwards.
  submit(text: string): Promise<void> {
    const run = this.chain.then(async () => {
      this.hooks.onError(null);
      try {
        const result = await this.client.postCommand(this.sid, text);
        this.hooks.onLog(`> ${text}`);
        this.hooks.onLog(`${result.query}  [${result.subtasks.join(", ")}]`);
        await this.animator.whenIdle();
      } catch (err) {
        if (err instanceof BridgeError) {
          this.hooks.onError(`${err.code}: ${err.message}`);
          return;
        }
        this.hooks.onError(`connection error: ${String(err)}`);
      }
    });
    this.chain = run;
    return run;
  }
}
