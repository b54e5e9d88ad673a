"""Synthetic reference corpus generator.

Writes a corpus with the reference shape (150 platformer levels of 22x32,
459 dungeon rooms of 11x16) in the plain-text level format, deterministic
for a given seed. Real VGLC-style data dropped into the same layout works
identically; this generator exists so the pipeline and its tests run
without redistributing game data.
"""

from __future__ import annotations

import random
from pathlib import Path

LR_COUNT = 150
LOZ_COUNT = 459
LR_SHAPE = (22, 32)
LOZ_SHAPE = (11, 16)


def make_lr_level(rng: random.Random) -> list[str]:
    h, w = LR_SHAPE
    grid = [["."] * w for _ in range(h)]
    grid[h - 1] = ["B"] * w

    platform_rows = []
    row = h - 1
    while row > 4:
        row -= rng.randint(4, 6)
        if row <= 2:
            break
        platform_rows.append(row)
        col = 0
        while col < w:
            run = rng.randint(4, 10)
            gap = rng.randint(0, 4)
            tile = "b" if rng.random() < 0.55 else "B"
            for c in range(col, min(col + run, w)):
                grid[row][c] = tile
            col += run + gap

    # ladders join each platform to the level below it
    stack = platform_rows + [h - 1]
    for upper, lower in zip(stack, stack[1:]):
        for _ in range(rng.randint(1, 3)):
            c = rng.randrange(w)
            for r in range(upper, lower):
                grid[r][c] = "#"

    for _ in range(rng.randint(1, 2)):
        row = rng.choice(platform_rows) - rng.randint(1, 2) if platform_rows else 3
        if row < 1:
            row = 1
        start = rng.randrange(w - 8)
        for c in range(start, start + rng.randint(4, 8)):
            if grid[row][c] == ".":
                grid[row][c] = "-"

    def drop_on_platform(tile):
        for _ in range(40):
            r = rng.randrange(1, h - 1)
            c = rng.randrange(w)
            if grid[r][c] == "." and grid[r + 1][c] in ("B", "b"):
                grid[r][c] = tile
                return

    for _ in range(rng.randint(4, 8)):
        drop_on_platform("G")
    for _ in range(rng.randint(0, 2)):
        drop_on_platform("E")
    drop_on_platform("M")
    return ["".join(r) for r in grid]


def make_loz_room(rng: random.Random) -> list[str]:
    h, w = LOZ_SHAPE
    grid = [["."] * w for _ in range(h)]
    for c in range(w):
        grid[0][c] = "W"
        grid[h - 1][c] = "W"
    for r in range(h):
        grid[r][0] = "W"
        grid[r][w - 1] = "W"

    if rng.random() < 0.8:
        grid[0][w // 2] = "D"
    if rng.random() < 0.8:
        grid[h - 1][w // 2] = "D"
    if rng.random() < 0.6:
        grid[h // 2][0] = "D"
    if rng.random() < 0.6:
        grid[h // 2][w - 1] = "D"

    def place(tile, count):
        for _ in range(count):
            r = rng.randrange(2, h - 2)
            c = rng.randrange(2, w - 2)
            if grid[r][c] == ".":
                grid[r][c] = tile

    place("B", rng.randint(0, 6))
    place("F", rng.randint(0, 3))
    if rng.random() < 0.3:
        r0 = rng.randrange(2, h - 4)
        c0 = rng.randrange(2, w - 6)
        water = rng.choice(["P", "I", "O"])
        for r in range(r0, r0 + rng.randint(1, 2)):
            for c in range(c0, c0 + rng.randint(2, 4)):
                grid[r][c] = water
    if rng.random() < 0.15:
        place("S", 1)
    if rng.random() < 0.3:
        place("M", rng.randint(1, 2))
    if rng.random() < 0.1:
        place("E", 1)
    return ["".join(r) for r in grid]


def write_reference_corpus(root, seed: int = 0,
                           lr_count: int = LR_COUNT, loz_count: int = LOZ_COUNT) -> dict:
    """Write <root>/LR/level_###.txt and <root>/LOZ/room_###.txt; returns counts."""
    root = Path(root)
    lr_dir = root / "LR"
    loz_dir = root / "LOZ"
    lr_dir.mkdir(parents=True, exist_ok=True)
    loz_dir.mkdir(parents=True, exist_ok=True)
    rng = random.Random(seed)
    for i in range(lr_count):
        lines = make_lr_level(rng)
        (lr_dir / f"level_{i:03d}.txt").write_text("\n".join(lines) + "\n", encoding="utf-8")
    for i in range(loz_count):
        lines = make_loz_room(rng)
        (loz_dir / f"room_{i:03d}.txt").write_text("\n".join(lines) + "\n", encoding="utf-8")
    return {"LR": lr_count, "LOZ": loz_count}
