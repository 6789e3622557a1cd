// DOM rendering: the grid, the legend, the agent marker, logs, errors.

import { SECTION_COLORS, SECTION_NAMES, ViewModel } from "./state.js";

export interface Panels {
  grid: HTMLElement;
  legend: HTMLElement;
  log: HTMLElement;
  error: HTMLElement;
}

export function buildGrid(root: HTMLElement, vm: ViewModel): void {
  root.innerHTML = "";
  root.style.setProperty("--cols", String(vm.width));
  for (let y = 0; y < vm.height; y++) {
    for (let x = 0; x < vm.width; x++) {
      const cell = document.createElement("div");
      cell.className = "cell";
      cell.dataset.x = String(x);
      cell.dataset.y = String(y);
      root.appendChild(cell);
    }
  }
  updateGrid(root, vm);
}

export function updateGrid(root: HTMLElement, vm: ViewModel): void {
  const cells = root.children;
  for (let y = 0; y < vm.height; y++) {
    for (let x = 0; x < vm.width; x++) {
      const el = cells[y * vm.width + x] as HTMLElement;
      const section = vm.sections[y][x];
      el.classList.toggle("wall", !vm.walkable[y][x]);
      el.dataset.section = section ?? "";
      el.style.backgroundColor = vm.walkable[y][x]
        ? section
          ? SECTION_COLORS[section]
          : "#e8e4da"
        : "#3b3a36";
      el.textContent = "";
      el.title = "";
      el.classList.remove("agent");
    }
  }
  for (const obj of vm.objects.values()) {
    const el = cells[obj.y * vm.width + obj.x] as HTMLElement;
    el.textContent = obj.movable ? "●" : "■";
    el.title = el.title ? `${el.title}, ${obj.name}` : obj.name;
  }
  const agentEl = cells[vm.agent.y * vm.width + vm.agent.x] as HTMLElement;
  agentEl.classList.add("agent");
  agentEl.textContent = "▲";
  agentEl.title = vm.carrying ? `agent (carrying ${vm.carrying})` : "agent";
}

export function renderLegend(root: HTMLElement, vm: ViewModel): void {
  root.innerHTML = "";
  const present = new Set<string>();
  for (const row of vm.sections) for (const ch of row) if (ch) present.add(ch);
  for (const letter of Object.keys(SECTION_COLORS)) {
    if (!present.has(letter)) continue;
    const item = document.createElement("span");
    item.className = "legend-item";
    const swatch = document.createElement("i");
    swatch.style.backgroundColor = SECTION_COLORS[letter];
    item.appendChild(swatch);
    item.appendChild(document.createTextNode(SECTION_NAMES[letter]));
    root.appendChild(item);
  }
}

export function appendLog(root: HTMLElement, text: string): void {
  const line = document.createElement("div");
  line.className = "log-line";
  line.textContent = text;
  root.appendChild(line);
  root.scrollTop = root.scrollHeight;
}

export function showError(root: HTMLElement, message: string | null): void {
  root.textContent = message ?? "";
  root.classList.toggle("visible", message !== null);
}
