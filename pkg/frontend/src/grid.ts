// Tile grid model and canvas rendering. The model is a pure function of the
// payload tiles so tests can assert on it without a DOM.

import { colorOf, cssColor, type Rgb } from "./palette.js";

export const GRID_SIZE = 16;

export interface GridCell {
  char: string;
  color: Rgb;
  known: boolean;
}

export interface GridModel {
  cells: GridCell[][];
  unknownChars: string[];
}

export function buildGridModel(tiles: string[]): GridModel {
  if (tiles.length !== GRID_SIZE || tiles.some((row) => row.length !== GRID_SIZE)) {
    throw new Error(`malformed payload: expected ${GRID_SIZE} rows of ${GRID_SIZE} chars`);
  }
  const unknown = new Set<string>();
  const cells = tiles.map((row) =>
    Array.from(row).map((char) => {
      const { color, known } = colorOf(char);
      if (!known) unknown.add(char);
      return { char, color, known };
    }),
  );
  return { cells, unknownChars: [...unknown].sort() };
}

export function drawGrid(
  canvas: HTMLCanvasElement,
  model: GridModel,
  cellPx = 24,
): void {
  canvas.width = GRID_SIZE * cellPx;
  canvas.height = GRID_SIZE * cellPx;
  const ctx = canvas.getContext("2d");
  if (!ctx) throw new Error("canvas 2d context unavailable");
  for (let r = 0; r < GRID_SIZE; r += 1) {
    for (let c = 0; c < GRID_SIZE; c += 1) {
      ctx.fillStyle = cssColor(model.cells[r][c].color);
      ctx.fillRect(c * cellPx, r * cellPx, cellPx, cellPx);
    }
  }
}
