// Pointer capture: viewport-normalized x/y plus the depth control standing
// in for the sensor's z axis, throttled to at most 60 samples per second
// with monotone timestamps.

import { PointerSampleJson } from "./protocol.js";

export const MAX_SAMPLE_RATE_HZ = 60;

// The depth slider [0..100] maps onto z in [-100, +100]: slider midpoint is
// the calibration reference depth and the endpoints hit the extreme opacity
// bands for the default z_span of 200.
export const DEPTH_SLIDER_MAX = 100;
export const DEPTH_Z_RANGE = 200;

export function depthToZ(sliderValue: number): number {
  const clamped = Math.min(Math.max(sliderValue, 0), DEPTH_SLIDER_MAX);
  return (clamped / DEPTH_SLIDER_MAX - 0.5) * DEPTH_Z_RANGE;
}

export class PointerCapture {
  private minIntervalMs: number;
  private lastEmit = -Infinity;
  private lastT = -Infinity;
  private now: () => number;

  constructor(now: () => number, maxRateHz: number = MAX_SAMPLE_RATE_HZ) {
    this.now = now;
    this.minIntervalMs = 1000 / maxRateHz;
  }

  // Normalized pointer position plus the current depth slider value; returns
  // null when the sample falls inside the throttle window.
  sample(xNorm: number, yNorm: number, depthValue: number): PointerSampleJson | null {
    const t = this.now();
    if (t - this.lastEmit < this.minIntervalMs) return null;
    this.lastEmit = t;
    // Guard against non-monotone clocks; timestamps drive the server's
    // dwell timer and must never run backwards.
    const stamped = t > this.lastT ? t : this.lastT + this.minIntervalMs / 100;
    this.lastT = stamped;
    return { x: xNorm, y: yNorm, z: depthToZ(depthValue), t: stamped };
  }
}

// Normalize a client-space position against a bounding box.
export function normalizePosition(
  clientX: number,
  clientY: number,
  rect: { left: number; top: number; width: number; height: number },
): [number, number] {
  const x = (clientX - rect.left) / rect.width;
  const y = (clientY - rect.top) / rect.height;
  return [Math.min(Math.max(x, 0), 1), Math.min(Math.max(y, 0), 1)];
}
