// Grid renderer. Unpainted panels are white; committed paint fills the
// panel at its opacity level; the proposal ring is visually distinct
// (reduced-alpha fill plus a corner tick) so proposals never read as
// committed paint; the pointer's panel gets an outline.

import { opacityAlpha } from "./protocol.js";
import { ViewState } from "./state.js";

// The subset of CanvasRenderingContext2D the renderer touches, so tests can
// record draw calls without a DOM. Style properties carry the DOM's union
// type so a real 2D context satisfies the interface.
export interface GridContext {
  fillStyle: string | CanvasGradient | CanvasPattern;
  globalAlpha: number;
  strokeStyle: string | CanvasGradient | CanvasPattern;
  lineWidth: number;
  fillRect(x: number, y: number, w: number, h: number): void;
  strokeRect(x: number, y: number, w: number, h: number): void;
}

export interface RenderOptions {
  cellPx: number;
  gap: number;
}

export const DEFAULT_RENDER: RenderOptions = { cellPx: 32, gap: 1 };

export function renderGrid(
  ctx: GridContext,
  state: ViewState,
  options: RenderOptions = DEFAULT_RENDER,
): void {
  const { cellPx, gap } = options;
  for (let row = 0; row < state.height; row++) {
    for (let col = 0; col < state.width; col++) {
      const x = col * cellPx;
      const y = row * cellPx;
      const w = cellPx - gap;
      const h = cellPx - gap;

      ctx.globalAlpha = 1;
      ctx.fillStyle = "#ffffff";
      ctx.fillRect(x, y, w, h);

      const paint = state.paintedAt(col, row);
      if (paint) {
        ctx.globalAlpha = opacityAlpha(paint.opacity);
        ctx.fillStyle = paint.color;
        ctx.fillRect(x, y, w, h);
      }

      const proposal = state.ringAt(col, row);
      if (proposal) {
        ctx.globalAlpha = opacityAlpha(proposal.opacity) * 0.6;
        ctx.fillStyle = proposal.color;
        ctx.fillRect(x, y, w, h);
        ctx.globalAlpha = 0.9;
        ctx.fillRect(x, y, Math.ceil(w / 4), Math.ceil(h / 4));
      }

      if (state.center && state.center[0] === col && state.center[1] === row) {
        ctx.globalAlpha = 1;
        ctx.strokeStyle = "#222222";
        ctx.lineWidth = 2;
        ctx.strokeRect(x + 1, y + 1, w - 2, h - 2);
      }
    }
  }
  ctx.globalAlpha = 1;
}
