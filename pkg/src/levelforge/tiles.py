"""Unified tile alphabet: characters, affordances, origins, display colors.

The canonical table ships as ``data/unified_tiles.json``; per-game raw-char
mappings and origin sets are configurable by pointing :func:`load_tile_config`
at a different file with the same schema.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from .errors import SchemaError, UnknownTile

ORIGIN_LR = "LR"
ORIGIN_LOZ = "LOZ"
ORIGIN_SHARED = "shared"

AFFORDANCE_LABELS = frozenset({
    "Solid", "Ground", "Block", "Diggable", "Passable", "Empty", "Climable",
    "Rope", "Ladder", "Pickupable", "Gold", "Damaging", "Enemy", "Spawn",
    "Hazard", "Element", "Openable", "Climbable", "Wall",
})

# Fixed 13-slot projection used when synthesizing embedding tables; the bits
# are carried opaquely by tables and never interpreted downstream.
AFFORDANCE_BIT_LABELS = (
    "Solid", "Ground", "Block", "Diggable", "Passable", "Empty", "Climable",
    "Rope", "Ladder", "Pickupable", "Gold", "Damaging", "Element",
)


@dataclass(frozen=True)
class UnifiedTile:
    char: str
    affordances: frozenset[str]
    origin: str

    def affordance_bits(self) -> tuple[int, ...]:
        return tuple(1 if label in self.affordances else 0 for label in AFFORDANCE_BIT_LABELS)


@dataclass(frozen=True)
class TileConfig:
    """Parsed mapping/origin configuration (games, affordances, origins, colors)."""

    games: dict[str, dict[str, str]]
    tiles: dict[str, UnifiedTile]
    colors: dict[str, tuple[int, int, int]]

    @property
    def alphabet(self) -> tuple[str, ...]:
        return tuple(sorted(self.tiles))

    def tile(self, char: str) -> UnifiedTile:
        try:
            return self.tiles[char]
        except KeyError:
            raise UnknownTile(char) from None

    def unify(self, game: str, raw_char: str) -> UnifiedTile:
        mapping = self.games.get(game)
        if mapping is None:
            raise SchemaError(f"no tile mapping for game {game!r}")
        unified = mapping.get(raw_char)
        if unified is None:
            raise UnknownTile(raw_char, context=f"game {game}")
        return self.tiles[unified]

    def origin_chars(self, origin: str) -> frozenset[str]:
        return frozenset(c for c, t in self.tiles.items() if t.origin == origin)


def _parse_config(raw: dict) -> TileConfig:
    for key in ("games", "affordances", "origins"):
        if key not in raw:
            raise SchemaError(f"tile config missing {key!r}")
    affordances = raw["affordances"]
    origins = raw["origins"]
    tiles: dict[str, UnifiedTile] = {}
    for char, labels in affordances.items():
        if len(char) != 1:
            raise SchemaError(f"tile identifier must be one character, got {char!r}")
        bad = set(labels) - AFFORDANCE_LABELS
        if bad:
            raise SchemaError(f"unknown affordance labels {sorted(bad)} for tile {char!r}")
        origin = origins.get(char)
        if origin not in (ORIGIN_LR, ORIGIN_LOZ, ORIGIN_SHARED):
            raise SchemaError(f"tile {char!r} has invalid origin {origin!r}")
        tiles[char] = UnifiedTile(char, frozenset(labels), origin)
    for game, mapping in raw["games"].items():
        for raw_char, unified in mapping.items():
            if unified not in tiles:
                raise SchemaError(f"game {game!r} maps {raw_char!r} to unknown tile {unified!r}")
    colors = {c: tuple(rgb) for c, rgb in raw.get("colors", {}).items()}
    return TileConfig(games=raw["games"], tiles=tiles, colors=colors)


def load_tile_config(path) -> TileConfig:
    with open(path, encoding="utf-8") as fh:
        return _parse_config(json.load(fh))


@lru_cache(maxsize=1)
def default_tile_config() -> TileConfig:
    text = resources.files("levelforge.data").joinpath("unified_tiles.json").read_text("utf-8")
    return _parse_config(json.loads(text))


def unify_tile(game: str, raw_char: str, config: TileConfig | None = None) -> UnifiedTile:
    """Map a per-game raw character to its unified tile."""
    return (config or default_tile_config()).unify(game, raw_char)
