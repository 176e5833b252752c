// Wire protocol types and palette math for the drawing service.
// Mirrors docs/protocol.md; the palette formula must match the server's.

export interface SessionConfigFields {
  mode?: "adaptive" | "random";
  seed?: number;
  iterations?: number;
  width?: number;
  height?: number;
  dwell_ms?: number;
  epsilon?: number;
  palette_size?: number;
  reward_scheme?: "cone" | "moved-onto";
}

export interface CalibrationFields {
  a: number; b: number; c: number;
  d: number; e: number; f: number;
  z_ref: number;
  z_span: number;
  z_sign: number;
}

export interface PointerSampleJson {
  x: number;
  y: number;
  z: number;
  t: number;
}

export interface PaintJson {
  arm: number;
  opacity: number;
  color: string;
}

export interface ServerMessage {
  type: "session_stats" | "proposals" | "reroll" | "inked" | "error";
  session_id: string | null;
  seq: number;
  // session_stats
  step?: number;
  iterations?: number;
  mode?: string;
  phase?: "calibrating" | "drawing" | "complete";
  // proposals / reroll
  center?: [number, number];
  paints?: Record<string, PaintJson>;
  // inked
  cell?: [number, number];
  paint?: PaintJson;
  // error
  code?: string;
  text?: string;
}

export function startSessionMessage(
  config: SessionConfigFields,
  calibration?: CalibrationFields,
): string {
  const message: Record<string, unknown> = { type: "start_session", config };
  if (calibration) message.calibration = calibration;
  return JSON.stringify(message);
}

export function calibrationPointMessage(corner: number, sample: PointerSampleJson): string {
  return JSON.stringify({ type: "calibration_point", corner, sample });
}

export function pointerMoveMessage(sample: PointerSampleJson): string {
  return JSON.stringify({ type: "pointer_move", sample });
}

export function parseOffsetKey(key: string): [number, number] {
  const [dc, dr] = key.split(",").map(Number);
  return [dc, dr];
}

export const cellKey = (col: number, row: number): string => `${col},${row}`;

// Palette: arm 0 is blue (240deg), the last arm is red (0deg), hue linear in
// between, full saturation and value. Identical to the server's palette.
export function armHue(arm: number, paletteSize = 10): number {
  return 240 * (1 - arm / (paletteSize - 1));
}

export function armColor(arm: number, paletteSize = 10): string {
  const h = armHue(arm, paletteSize) / 60;
  const x = 1 - Math.abs((h % 2) - 1);
  let rgb: [number, number, number];
  if (h < 1) rgb = [1, x, 0];
  else if (h < 2) rgb = [x, 1, 0];
  else if (h < 3) rgb = [0, 1, x];
  else if (h < 4) rgb = [0, x, 1];
  else if (h < 5) rgb = [x, 0, 1];
  else rgb = [1, 0, x];
  const hex = rgb
    .map((v) => Math.round(v * 255).toString(16).padStart(2, "0"))
    .join("");
  return `#${hex}`;
}

// Opacity levels 1..4 render at alpha 0.25 * level over the white panel.
export function opacityAlpha(level: number): number {
  return 0.25 * level;
}
