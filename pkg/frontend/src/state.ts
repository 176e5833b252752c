// Client view state: the grid as dictated by the server's diff stream.
//
// The view is stateless with respect to learning: it never predicts, only
// applies server messages in sequence order. Re-applying the same stream to
// a fresh state reproduces the identical grid, and a message whose seq is
// not exactly the next expected one is rejected.

import { PaintJson, ServerMessage, cellKey } from "./protocol.js";

export type Phase = "idle" | "calibrating" | "drawing" | "complete";

export interface ApplyResult {
  applied: boolean;
  reason?: string;
}

export class ViewState {
  readonly width: number;
  readonly height: number;
  painted = new Map<string, PaintJson>();
  ring = new Map<string, PaintJson>();
  center: [number, number] | null = null;
  phase: Phase = "idle";
  step = 0;
  iterations = 0;
  mode = "";
  sessionId: string | null = null;
  lastSeq = -1;
  lastError: string | null = null;

  constructor(width = 24, height = 14) {
    this.width = width;
    this.height = height;
  }

  apply(message: ServerMessage): ApplyResult {
    if (message.seq !== this.lastSeq + 1) {
      return {
        applied: false,
        reason: `out-of-order diff: got seq ${message.seq}, expected ${this.lastSeq + 1}`,
      };
    }
    this.lastSeq = message.seq;
    if (message.session_id) this.sessionId = message.session_id;

    switch (message.type) {
      case "session_stats":
        this.phase = message.phase ?? this.phase;
        this.step = message.step ?? this.step;
        this.iterations = message.iterations ?? this.iterations;
        this.mode = message.mode ?? this.mode;
        break;
      case "proposals":
      case "reroll":
        this.ring.clear();
        this.center = message.center ?? null;
        for (const [offsetKey, paint] of Object.entries(message.paints ?? {})) {
          if (!this.center) break;
          const [dc, dr] = offsetKey.split(",").map(Number);
          this.ring.set(cellKey(this.center[0] + dc, this.center[1] + dr), paint);
        }
        break;
      case "inked":
        if (message.cell && message.paint) {
          this.painted.set(cellKey(message.cell[0], message.cell[1]), message.paint);
        }
        break;
      case "error":
        this.lastError = `${message.code}: ${message.text}`;
        break;
    }
    return { applied: true };
  }

  paintedAt(col: number, row: number): PaintJson | undefined {
    return this.painted.get(cellKey(col, row));
  }

  ringAt(col: number, row: number): PaintJson | undefined {
    return this.ring.get(cellKey(col, row));
  }

  // Committed paint as the server dumps it: `arm:opacity` or -1, row-major.
  toGridCsv(): string {
    const rows: string[] = [];
    for (let row = 0; row < this.height; row++) {
      const entries: string[] = [];
      for (let col = 0; col < this.width; col++) {
        const paint = this.paintedAt(col, row);
        entries.push(paint ? `${paint.arm}:${paint.opacity}` : "-1");
      }
      rows.push(entries.join(","));
    }
    return rows.join("\n") + "\n";
  }
}
