// Display colors for the unified tile alphabet, matching the service's
// default embedding-table colors. Unknown characters render magenta and
// raise a warning badge.

export type Rgb = [number, number, number];

export const TILE_PALETTE: Record<string, Rgb> = {
  B: [139, 69, 19],
  b: [205, 133, 63],
  ".": [18, 18, 26],
  "-": [222, 184, 135],
  "#": [160, 120, 60],
  G: [255, 215, 0],
  E: [220, 50, 47],
  M: [128, 0, 160],
  F: [120, 120, 120],
  P: [38, 139, 210],
  I: [70, 180, 200],
  O: [0, 110, 140],
  D: [0, 160, 70],
  S: [230, 230, 180],
  W: [92, 92, 104],
};

export const UNKNOWN_COLOR: Rgb = [255, 0, 255];

export function colorOf(char: string): { color: Rgb; known: boolean } {
  const color = TILE_PALETTE[char];
  return color ? { color, known: true } : { color: UNKNOWN_COLOR, known: false };
}

export function cssColor([r, g, b]: Rgb): string {
  return `rgb(${r}, ${g}, ${b})`;
}
