// Page wiring: grid canvas, session controls, calibration flow, pointer
// streaming. Everything the user sees comes from applying server diffs in
// order; the page never paints ahead of the server.

import { SessionClient, normalizedCalibration } from "./client.js";
import { PointerCapture, depthToZ, normalizePosition } from "./pointer.js";
import { ServerMessage } from "./protocol.js";
import { DEFAULT_RENDER, renderGrid } from "./render.js";
import { ViewState } from "./state.js";

const CORNER_LABELS = ["top-left", "top-right", "bottom-left"];

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node as T;
}

const canvas = el<HTMLCanvasElement>("grid");
const ctx = canvas.getContext("2d")!;
const statusLine = el<HTMLSpanElement>("status");
const banner = el<HTMLDivElement>("banner");
const serverInput = el<HTMLInputElement>("server");
const modeSelect = el<HTMLSelectElement>("mode");
const seedInput = el<HTMLInputElement>("seed");
const iterationsInput = el<HTMLInputElement>("iterations");
const skipCalibration = el<HTMLInputElement>("skip-calibration");
const depthSlider = el<HTMLInputElement>("depth");
const newSessionButton = el<HTMLButtonElement>("new-session");
const downloadLog = el<HTMLAnchorElement>("download-log");
const downloadGrid = el<HTMLAnchorElement>("download-grid");

let state = new ViewState();
let client: SessionClient | null = null;
let calibrationCorner = 0;
const capture = new PointerCapture(() => performance.now());

canvas.width = state.width * DEFAULT_RENDER.cellPx;
canvas.height = state.height * DEFAULT_RENDER.cellPx;

function redraw(): void {
  renderGrid(ctx, state);
}

function setStatus(): void {
  const parts = [`phase: ${state.phase}`, `step: ${state.step}/${state.iterations}`];
  if (state.mode) parts.push(`mode: ${state.mode}`);
  if (state.phase === "calibrating") {
    parts.push(`click the ${CORNER_LABELS[calibrationCorner]} panel`);
  }
  if (state.lastError) parts.push(`last error: ${state.lastError}`);
  statusLine.textContent = parts.join("  |  ");
}

function applyMessage(message: ServerMessage): void {
  const result = state.apply(message);
  if (!result.applied) {
    // Out-of-order diff: drop it and resynchronize from the exports.
    console.warn(result.reason);
    return;
  }
  if (message.type === "error" && state.phase === "calibrating") {
    calibrationCorner = 0; // server cleared the corner points; redo all three
  }
  if (state.phase === "complete" && state.sessionId) {
    downloadLog.classList.remove("disabled");
    downloadGrid.classList.remove("disabled");
    downloadLog.href = `http://${serverInput.value}/sessions/${state.sessionId}/log`;
    downloadGrid.href = `http://${serverInput.value}/sessions/${state.sessionId}/grid`;
  }
  redraw();
  setStatus();
}

async function startSession(): Promise<void> {
  client?.close();
  state = new ViewState();
  calibrationCorner = 0;
  downloadLog.classList.add("disabled");
  downloadGrid.classList.add("disabled");

  const scheme = location.protocol === "https:" ? "wss" : "ws";
  client = new SessionClient(
    `${scheme}://${serverInput.value}/ws`,
    (url) => new WebSocket(url),
  );
  client.onMessage = applyMessage;
  client.onStatusChange = (connected) => {
    banner.hidden = connected;
  };
  await client.connect();
  client.startSession(
    {
      mode: modeSelect.value as "adaptive" | "random",
      seed: Number(seedInput.value) || 0,
      iterations: Number(iterationsInput.value) || 500,
    },
    skipCalibration.checked ? normalizedCalibration(state.width, state.height) : undefined,
  );
}

canvas.addEventListener("click", (ev) => {
  if (!client || state.phase !== "calibrating") return;
  const [x, y] = normalizePosition(ev.clientX, ev.clientY, canvas.getBoundingClientRect());
  client.sendCalibrationPoint(calibrationCorner, {
    x, y, z: depthToZ(Number(depthSlider.value)), t: performance.now(),
  });
  calibrationCorner = Math.min(calibrationCorner + 1, 2);
  setStatus();
});

canvas.addEventListener("pointermove", (ev) => {
  if (!client || state.phase !== "drawing") return;
  const [x, y] = normalizePosition(ev.clientX, ev.clientY, canvas.getBoundingClientRect());
  const sample = capture.sample(x, y, Number(depthSlider.value));
  if (sample) client.sendPointer(sample);
});

// The dwell re-roll needs samples even while the pointer rests: keep a slow
// heartbeat of the last position while drawing.
let lastPosition: [number, number] | null = null;
canvas.addEventListener("pointermove", (ev) => {
  const [x, y] = normalizePosition(ev.clientX, ev.clientY, canvas.getBoundingClientRect());
  lastPosition = [x, y];
});
setInterval(() => {
  if (!client || state.phase !== "drawing" || !lastPosition) return;
  const sample = capture.sample(lastPosition[0], lastPosition[1], Number(depthSlider.value));
  if (sample) client.sendPointer(sample);
}, 250);

newSessionButton.addEventListener("click", () => {
  startSession().catch((err) => {
    statusLine.textContent = `connection failed: ${err}`;
    banner.hidden = false;
  });
});

redraw();
setStatus();
