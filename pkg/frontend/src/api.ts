// Thin client for the bridge HTTP API.

import { CommandResult, ErrorEnvelope, StateDoc, StepEvent } from "./types.js";

export interface EventSourceLike {
  onmessage: ((ev: { data: string }) => void) | null;
  close(): void;
}

export type EventSourceFactory = (url: string) => EventSourceLike;

export class BridgeError extends Error {
  constructor(public code: string, message: string) {
    super(message);
  }
}

async function unwrap<T>(resp: Response): Promise<T> {
  const body = await resp.json();
  if (!resp.ok) {
    const env = body as ErrorEnvelope;
    throw new BridgeError(env.error?.code ?? "error", env.error?.message ?? resp.statusText);
  }
  return body as T;
}

export class BridgeClient {
  constructor(
    private base: string,
    private makeEventSource: EventSourceFactory = (url) =>
      new EventSource(url) as unknown as EventSourceLike,
  ) {}

  async createSession(opts: { plan?: string; seed?: number; mas?: number }): Promise<{
    session_id: string;
    state: StateDoc;
  }> {
    const resp = await fetch(`${this.base}/sessions`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(opts),
    });
    return unwrap(resp);
  }

  async getState(sid: string): Promise<StateDoc> {
    return unwrap(await fetch(`${this.base}/sessions/${sid}/state`));
  }

  async postCommand(sid: string, text: string): Promise<CommandResult> {
    const resp = await fetch(`${this.base}/sessions/${sid}/command`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ text }),
    });
    return unwrap(resp);
  }

  // Subscribe to step events after sequence number `since`; returns a
  // handle that stops the subscription.
  openEvents(sid: string, since: number, onEvent: (ev: StepEvent) => void): () => void {
    const source = this.makeEventSource(
      `${this.base}/sessions/${sid}/events?since=${since}`,
    );
    source.onmessage = (msg) => onEvent(JSON.parse(msg.data) as StepEvent);
    return () => source.close();
  }
}
