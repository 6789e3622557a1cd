// @vitest-environment jsdom
//
// Round-trip against a live bridge: render the bundled plan, run the
// navigate example end to end, and exercise the parse-error path.
import { spawn, ChildProcess } from "node:child_process";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { BridgeClient } from "./api.js";
import { SessionController } from "./controller.js";
import { buildGrid, renderLegend, showError, updateGrid } from "./render.js";
import { distinctSections } from "./state.js";

const PORT = 8712;
const BASE = `http://127.0.0.1:${PORT}`;
let server: ChildProcess;

// EventSource replacement built on streaming fetch, for node.
function fetchEventSource(url: string) {
  const controller = new AbortController();
  const handle = {
    onmessage: null as ((ev: { data: string }) => void) | null,
    close: () => controller.abort(),
  };
  void (async () => {
    try {
      const resp = await fetch(url, { signal: controller.signal });
      const reader = resp.body!.getReader();
      const decoder = new TextDecoder();
      let buffer = "";
      for (;;) {
        const { done, value } = await reader.read();
        if (done) break;
        buffer += decoder.decode(value, { stream: true });
        let idx;
        while ((idx = buffer.indexOf("\n\n")) >= 0) {
          const chunk = buffer.slice(0, idx);
          buffer = buffer.slice(idx + 2);
          for (const line of chunk.split("\n")) {
            if (line.startsWith("data: ")) handle.onmessage?.({ data: line.slice(6) });
          }
        }
      }
    } catch {
      // aborted or connection closed
    }
  })();
  return handle;
}

async function waitForBridge(): Promise<void> {
  for (let i = 0; i < 120; i++) {
    try {
      const resp = await fetch(`${BASE}/sessions/probe/state`);
      if (resp.status === 404) return;
    } catch {
      // not up yet
    }
    await new Promise((r) => setTimeout(r, 250));
  }
  throw new Error("bridge did not come up");
}

beforeAll(async () => {
  server = spawn(
    "python3",
    ["-m", "gridhouse.cli", "serve", "--port", String(PORT)],
    { cwd: "..", stdio: "ignore" },
  );
  await waitForBridge();
}, 60_000);

afterAll(() => {
  server.kill();
});

describe("live bridge round trip", () => {
  it("loads a session, renders the grid, navigates, and surfaces errors", async () => {
    const client = new BridgeClient(BASE, fetchEventSource);
    const created = await client.createSession({ plan: "house40", seed: 3, mas: 4000 });
    expect(created.state.width).toBe(40);
    expect(created.state.height).toBe(40);

    const grid = document.createElement("div");
    const legend = document.createElement("div");
    const log = document.createElement("div");
    const banner = document.createElement("div");
    let lastError: string | null = null;

    const controller = new SessionController(client, created.session_id, created.state, {
      onModel: (vm) => updateGrid(grid, vm),
      onLog: (text) => {
        const line = document.createElement("div");
        line.textContent = text;
        log.appendChild(line);
      },
      onError: (message) => {
        lastError = message;
        showError(banner, message);
      },
    });
    buildGrid(grid, controller.vm);
    renderLegend(legend, controller.vm);
    controller.start();

    // a fully explored bundled session shows all six section colors
    expect(grid.children.length).toBe(1600);
    expect(distinctSections(controller.vm).size).toBe(6);
    expect(legend.querySelectorAll(".legend-item").length).toBe(6);

    // the navigate example animates the marker onto a Bedroom cell
    await controller.submit("Can you come to my bedroom to serve me?");
    const agent = controller.vm.agent;
    expect(controller.vm.sections[agent.y][agent.x]).toBe("B");
    const marker = grid.children[agent.y * 40 + agent.x] as HTMLElement;
    expect(marker.classList.contains("agent")).toBe(true);
    expect(lastError).toBeNull();

    // a parse-failing command shows an inline error and leaves the grid alone
    const before = grid.innerHTML;
    await controller.submit("dance for me");
    expect(lastError).toMatch(/no_verb_match/);
    expect(banner.classList.contains("visible")).toBe(true);
    expect(grid.innerHTML).toBe(before);

    controller.stop();
  }, 120_000);

  it("queues a command submitted while another is animating", async () => {
    const client = new BridgeClient(BASE, fetchEventSource);
    const created = await client.createSession({ plan: "house40", seed: 4, mas: 4000 });
    const logs: string[] = [];
    const controller = new SessionController(client, created.session_id, created.state, {
      onModel: () => undefined,
      onLog: (text) => logs.push(text),
      onError: () => undefined,
    });
    controller.start();
    const first = controller.submit("go to the kitchen");
    const second = controller.submit("go to the studio");
    await Promise.all([first, second]);
    const queries = logs
      .filter((l) => l.startsWith("Navigate["))
      .map((l) => l.split("  ")[0]);
    expect(queries).toEqual(["Navigate[Kitchen]", "Navigate[Studio]"]);
    expect(controller.vm.sections[controller.vm.agent.y][controller.vm.agent.x]).toBe("S");
    controller.stop();
  }, 120_000);
});
