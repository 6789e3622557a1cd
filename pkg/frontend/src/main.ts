// Page bootstrap: create or resume a session and wire the panels.

import { BridgeClient } from "./api.js";
import { SessionController } from "./controller.js";
import { appendLog, buildGrid, renderLegend, showError, updateGrid } from "./render.js";

const params = new URLSearchParams(window.location.search);
const base = params.get("bridge") ?? "http://127.0.0.1:8000";
const plan = params.get("plan") ?? "house40";
const seed = Number(params.get("seed") ?? "3");
const mas = Number(params.get("mas") ?? "4000");

const gridEl = document.getElementById("grid")!;
const legendEl = document.getElementById("legend")!;
const logEl = document.getElementById("log")!;
const errorEl = document.getElementById("error")!;
const inputEl = document.getElementById("command") as HTMLInputElement;
const sendEl = document.getElementById("send") as HTMLButtonElement;
const pauseEl = document.getElementById("pause") as HTMLButtonElement;

function syncSend(): void {
  sendEl.disabled = inputEl.value.trim() === "";
}

async function boot(): Promise<void> {
  const client = new BridgeClient(base);
  let created;
  try {
    created = await client.createSession({ plan, seed, mas });
  } catch (err) {
    showError(errorEl, `bridge unreachable at ${base}: ${String(err)}`);
    return;
  }
  const controller = new SessionController(client, created.session_id, created.state, {
    onModel: (vm) => updateGrid(gridEl, vm),
    onLog: (text) => appendLog(logEl, text),
    onError: (message) => showError(errorEl, message),
  });
  buildGrid(gridEl, controller.vm);
  renderLegend(legendEl, controller.vm);
  controller.start();
  appendLog(logEl, `session ${created.session_id} on ${plan} (seed ${seed})`);

  sendEl.addEventListener("click", () => {
    const text = inputEl.value.trim();
    if (!text) return;
    inputEl.value = "";
    syncSend();
    void controller.submit(text);
  });
  inputEl.addEventListener("input", syncSend);
  inputEl.addEventListener("keydown", (ev) => {
    if (ev.key === "Enter" && !sendEl.disabled) sendEl.click();
  });
  let paused = false;
  pauseEl.addEventListener("click", () => {
    paused = !paused;
    if (paused) controller.animator.pause();
    else controller.animator.resume();
    pauseEl.textContent = paused ? "Resume" : "Pause";
  });
  syncSend();
}

void boot();
