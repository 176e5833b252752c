import assert from "node:assert/strict";
import { test } from "node:test";

import {
  armColor,
  armHue,
  calibrationPointMessage,
  cellKey,
  opacityAlpha,
  parseOffsetKey,
  pointerMoveMessage,
  startSessionMessage,
} from "../src/protocol.js";

// Computed once with the server's palette; both sides must agree exactly.
const SERVER_PALETTE = [
  "#0000ff", "#0071ff", "#00e3ff", "#00ffaa", "#00ff39",
  "#39ff00", "#aaff00", "#ffe300", "#ff7100", "#ff0000",
];

test("palette matches the server hues arm for arm", () => {
  for (let arm = 0; arm < 10; arm++) {
    assert.equal(armColor(arm), SERVER_PALETTE[arm]);
  }
});

test("hue runs monotonically from blue to red", () => {
  assert.equal(armHue(0), 240);
  assert.equal(armHue(9), 0);
  for (let arm = 1; arm < 10; arm++) {
    assert.ok(armHue(arm) < armHue(arm - 1));
  }
});

test("opacity levels map to quarter alphas", () => {
  assert.deepEqual([1, 2, 3, 4].map(opacityAlpha), [0.25, 0.5, 0.75, 1.0]);
});

test("offset keys parse and cell keys format", () => {
  assert.deepEqual(parseOffsetKey("-1,1"), [-1, 1]);
  assert.deepEqual(parseOffsetKey("0,-1"), [0, -1]);
  assert.equal(cellKey(12, 7), "12,7");
});

test("client messages are single-line json", () => {
  const start = startSessionMessage({ mode: "adaptive", seed: 3 });
  const cal = calibrationPointMessage(1, { x: 0.9, y: 0.1, z: 0, t: 5 });
  const move = pointerMoveMessage({ x: 0.5, y: 0.5, z: 10, t: 6 });
  for (const raw of [start, cal, move]) {
    assert.ok(!raw.includes("\n"));
    JSON.parse(raw);
  }
  assert.equal(JSON.parse(start).type, "start_session");
  assert.equal(JSON.parse(cal).corner, 1);
  assert.equal(JSON.parse(move).sample.t, 6);
});
