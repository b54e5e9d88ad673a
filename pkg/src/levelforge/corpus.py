"""Level parsing, segmentation into 16x16 chunks, and dataset splitting."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import BadRatios, RaggedLines, UnknownTile, WrongDimensions
from .tiles import TileConfig, default_tile_config

SEGMENT_SIZE = 16
LR_LEVEL_SHAPE = (22, 32)
LOZ_ROOM_SHAPE = (11, 16)
BLANK_TILE = "."

SLOT_TL = "TL"
SLOT_TR = "TR"
SLOT_BL = "BL"
SLOT_BR = "BR"
SLOT_ROOM = "ROOM"
SLOT_GENERATED = "GENERATED"

# Rows 6..21 are the unique bottom-anchored 16-row window of a 22-row level,
# overlapping rows 6..15 of the top window.
LR_BOTTOM_ROW_OFFSET = LR_LEVEL_SHAPE[0] - SEGMENT_SIZE
LOZ_PAD_TOP = 3
LOZ_PAD_BOTTOM = 2


@dataclass(frozen=True)
class Provenance:
    game: str
    level: int
    slot: str

    @property
    def segment_id(self) -> str:
        return f"{self.game}-{self.level:03d}-{self.slot}"


@dataclass(frozen=True)
class LevelGrid:
    game: str
    rows: tuple[str, ...]

    @property
    def height(self) -> int:
        return len(self.rows)

    @property
    def width(self) -> int:
        return len(self.rows[0]) if self.rows else 0


@dataclass(frozen=True)
class Segment:
    grid: tuple[str, ...]
    provenance: Provenance

    def __post_init__(self):
        if len(self.grid) != SEGMENT_SIZE or any(len(r) != SEGMENT_SIZE for r in self.grid):
            raise WrongDimensions(f"segment grid must be {SEGMENT_SIZE}x{SEGMENT_SIZE}")

    @property
    def id(self) -> str:
        return self.provenance.segment_id

    def lines(self) -> list[str]:
        return list(self.grid)


@dataclass(frozen=True)
class CorpusSplit:
    train: tuple[Segment, ...]
    test: tuple[Segment, ...]
    validation: tuple[Segment, ...]
    seed: int

    @property
    def all_segments(self) -> tuple[Segment, ...]:
        return self.train + self.test + self.validation


def parse_level(text: str, game: str, config: TileConfig | None = None) -> LevelGrid:
    """Parse newline-separated tile rows (top to bottom) for one game."""
    config = config or default_tile_config()
    mapping = config.games.get(game)
    if mapping is None:
        raise UnknownTile("?", context=f"no mapping for game {game!r}")
    lines = text.splitlines()
    while lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise RaggedLines("level text is empty")
    width = len(lines[0])
    rows = []
    for lineno, line in enumerate(lines):
        if len(line) != width or len(line) == 0:
            raise RaggedLines(f"line {lineno} has width {len(line)}, expected {width}")
        unified = []
        for col, ch in enumerate(line):
            if ch not in mapping:
                raise UnknownTile(ch, line=lineno, col=col, context=f"game {game}")
            unified.append(mapping[ch])
        rows.append("".join(unified))
    return LevelGrid(game=game, rows=tuple(rows))


def segment_lr_level(level: LevelGrid, level_index: int = 0) -> list[Segment]:
    """Cut a 22x32 level into TL/TR/BL/BR 16x16 corners (10 overlapping rows)."""
    if (level.height, level.width) != LR_LEVEL_SHAPE:
        raise WrongDimensions(
            f"expected {LR_LEVEL_SHAPE[0]}x{LR_LEVEL_SHAPE[1]} level, got {level.height}x{level.width}"
        )
    n = SEGMENT_SIZE
    b = LR_BOTTOM_ROW_OFFSET
    windows = {
        SLOT_TL: (0, 0),
        SLOT_TR: (0, n),
        SLOT_BL: (b, 0),
        SLOT_BR: (b, n),
    }
    out = []
    for slot in (SLOT_TL, SLOT_TR, SLOT_BL, SLOT_BR):
        r0, c0 = windows[slot]
        grid = tuple(level.rows[r][c0:c0 + n] for r in range(r0, r0 + n))
        out.append(Segment(grid=grid, provenance=Provenance(level.game, level_index, slot)))
    return out


def pad_loz_room(room: LevelGrid, room_index: int = 0) -> Segment:
    """Pad an 11x16 room with 3 blank rows above and 2 below."""
    if (room.height, room.width) != LOZ_ROOM_SHAPE:
        raise WrongDimensions(
            f"expected {LOZ_ROOM_SHAPE[0]}x{LOZ_ROOM_SHAPE[1]} room, got {room.height}x{room.width}"
        )
    blank = BLANK_TILE * SEGMENT_SIZE
    grid = (blank,) * LOZ_PAD_TOP + room.rows + (blank,) * LOZ_PAD_BOTTOM
    return Segment(grid=grid, provenance=Provenance(room.game, room_index, SLOT_ROOM))


def split_dataset(segments: list[Segment], ratios=(0.85, 0.10, 0.05), seed: int = 0) -> CorpusSplit:
    """Deterministic shuffle then split; train/test floored, validation takes the rest."""
    if abs(sum(ratios) - 1.0) > 1e-9:
        raise BadRatios(f"ratios {ratios} do not sum to 1")
    if len(ratios) != 3 or any(r < 0 for r in ratios):
        raise BadRatios(f"need three non-negative ratios, got {ratios}")
    if not segments:
        raise BadRatios("cannot split an empty segment list")
    order = list(range(len(segments)))
    random.Random(seed).shuffle(order)
    shuffled = [segments[i] for i in order]
    n = len(shuffled)
    n_train = int(ratios[0] * n)
    n_test = int(ratios[1] * n)
    return CorpusSplit(
        train=tuple(shuffled[:n_train]),
        test=tuple(shuffled[n_train:n_train + n_test]),
        validation=tuple(shuffled[n_train + n_test:]),
        seed=seed,
    )


def segment_from_lines(lines, provenance: Provenance, config: TileConfig | None = None) -> Segment:
    """Rebuild a Segment from 16 lines of 16 unified tile chars."""
    config = config or default_tile_config()
    rows = list(lines)
    if len(rows) != SEGMENT_SIZE or any(len(r) != SEGMENT_SIZE for r in rows):
        raise WrongDimensions("expected 16 lines of 16 characters")
    for lineno, row in enumerate(rows):
        for col, ch in enumerate(row):
            if ch not in config.tiles:
                raise UnknownTile(ch, line=lineno, col=col)
    return Segment(grid=tuple(rows), provenance=provenance)
