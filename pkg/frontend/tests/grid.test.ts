import { describe, expect, it } from "vitest";

import { buildGridModel } from "../src/grid.js";
import { TILE_PALETTE, UNKNOWN_COLOR } from "../src/palette.js";

const dots = Array(16).fill(".".repeat(16));

describe("grid model", () => {
  it("renders a uniform payload as a uniform grid", () => {
    const model = buildGridModel(dots);
    expect(model.unknownChars).toEqual([]);
    const colors = new Set(model.cells.flat().map((c) => c.color.join(",")));
    expect(colors.size).toBe(1);
    expect([...colors][0]).toBe(TILE_PALETTE["."].join(","));
  });

  it("marks unknown characters magenta with a warning", () => {
    const rows = [...dots];
    rows[3] = "...Z...........Q";
    const model = buildGridModel(rows);
    expect(model.unknownChars).toEqual(["Q", "Z"]);
    expect(model.cells[3][3].known).toBe(false);
    expect(model.cells[3][3].color).toEqual(UNKNOWN_COLOR);
    expect(model.cells[0][0].known).toBe(true);
  });

  it("rejects malformed payloads", () => {
    expect(() => buildGridModel(dots.slice(0, 15))).toThrow(/malformed/);
    expect(() => buildGridModel([...dots.slice(0, 15), "..."])).toThrow(/malformed/);
  });

  it("is deterministic for identical payloads", () => {
    const a = buildGridModel(dots);
    const b = buildGridModel(dots);
    expect(a).toEqual(b);
  });
});
