"""Tile embedding tables and exact nearest-tile decoding.

Tables map each unified tile character to a fixed-length real vector plus an
opaque 13-bit affordance vector and a display color. Decoding a generated
real-valued grid back to tiles uses exact Manhattan-distance nearest neighbor
over the table (ties broken by byte order of the tile character).
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field

import numpy as np

from .corpus import SEGMENT_SIZE, Provenance, Segment, SLOT_GENERATED
from .errors import (
    DimTooSmall,
    DimensionMismatch,
    DuplicateTile,
    NonFiniteValues,
    SchemaError,
    UnknownTile,
)
from .tiles import UnifiedTile

MIN_SYNTH_L1_GAP = 0.5


@dataclass(frozen=True)
class EmbeddingTable:
    dim: int
    chars: tuple[str, ...]
    vectors: np.ndarray  # (n_tiles, dim) float64
    affordances: np.ndarray  # (n_tiles, 13) uint8
    colors: tuple[tuple[int, int, int], ...]
    table_id: str = field(default="")

    def __post_init__(self):
        if self.vectors.shape != (len(self.chars), self.dim):
            raise DimensionMismatch(
                f"vector block {self.vectors.shape} does not match {len(self.chars)} tiles x dim {self.dim}"
            )
        if not self.table_id:
            digest = hashlib.sha256()
            digest.update(repr(self.chars).encode())
            digest.update(np.ascontiguousarray(self.vectors).tobytes())
            object.__setattr__(self, "table_id", digest.hexdigest()[:12])

    def __len__(self) -> int:
        return len(self.chars)

    def index_of(self, char: str) -> int:
        try:
            return self.chars.index(char)
        except ValueError:
            raise UnknownTile(char, context=f"table {self.table_id}") from None

    def vector(self, char: str) -> np.ndarray:
        return self.vectors[self.index_of(char)]

    def color(self, char: str) -> tuple[int, int, int]:
        return self.colors[self.index_of(char)]

    def min_pairwise_l1_gap(self) -> float:
        gaps = np.abs(self.vectors[:, None, :] - self.vectors[None, :, :]).sum(axis=2)
        n = len(self.chars)
        return float(gaps[~np.eye(n, dtype=bool)].min()) if n > 1 else float("inf")


def _validate_entries(dim, chars, vectors):
    if len(set(chars)) != len(chars):
        dupes = sorted({c for c in chars if chars.count(c) > 1})
        raise DuplicateTile(f"duplicate tile entries {dupes}")
    for char, vec in zip(chars, vectors):
        if len(vec) != dim:
            raise DimensionMismatch(f"tile {char!r} vector has length {len(vec)}, table dim is {dim}")
    arr = np.asarray(vectors, dtype=np.float64)
    if not np.all(np.isfinite(arr)):
        raise SchemaError("embedding vectors must be finite")
    # Identical vectors for distinct tiles would make nearest-tile decoding
    # depend on the tie-break alone.
    for i in range(len(chars)):
        for j in range(i + 1, len(chars)):
            if np.array_equal(arr[i], arr[j]):
                raise DuplicateTile(f"tiles {chars[i]!r} and {chars[j]!r} share one vector")
    return arr


def load_table(path) -> EmbeddingTable:
    """Load a JSON embedding table: {dim, entries: [{tile, vector, affordances, color}]}."""
    with open(path, encoding="utf-8") as fh:
        raw = json.load(fh)
    if not isinstance(raw, dict) or "dim" not in raw or "entries" not in raw:
        raise SchemaError("embedding table must be an object with 'dim' and 'entries'")
    dim = raw["dim"]
    if not isinstance(dim, int) or dim < 1:
        raise SchemaError(f"dim must be a positive integer, got {dim!r}")
    chars, vectors, bits, colors = [], [], [], []
    for i, entry in enumerate(raw["entries"]):
        for key in ("tile", "vector", "affordances", "color"):
            if key not in entry:
                raise SchemaError(f"entry {i} missing {key!r}")
        tile = entry["tile"]
        if not isinstance(tile, str) or len(tile) != 1:
            raise SchemaError(f"entry {i} tile must be a single character, got {tile!r}")
        aff = entry["affordances"]
        if len(aff) != 13 or any(b not in (0, 1) for b in aff):
            raise SchemaError(f"entry {i} affordances must be 13 bits")
        color = entry["color"]
        if len(color) != 3 or any(not (0 <= c <= 255) for c in color):
            raise SchemaError(f"entry {i} color must be three 0..255 ints")
        chars.append(tile)
        vectors.append(entry["vector"])
        bits.append(tuple(aff))
        colors.append(tuple(color))
    arr = _validate_entries(dim, chars, vectors)
    return EmbeddingTable(
        dim=dim,
        chars=tuple(chars),
        vectors=arr,
        affordances=np.asarray(bits, dtype=np.uint8),
        colors=tuple(colors),
    )


def save_table(table: EmbeddingTable, path) -> None:
    payload = {
        "dim": table.dim,
        "entries": [
            {
                "tile": char,
                "vector": [float(v) for v in table.vectors[i]],
                "affordances": [int(b) for b in table.affordances[i]],
                "color": list(table.colors[i]),
            }
            for i, char in enumerate(table.chars)
        ],
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=1)
        fh.write("\n")


def one_hot_table(tiles: list[UnifiedTile], colors=None) -> EmbeddingTable:
    """One-hot baseline table: tile i gets hot index i, dim = tile count."""
    chars = [t.char for t in tiles]
    if len(set(chars)) != len(chars):
        raise DuplicateTile("one-hot input tiles must be distinct")
    dim = len(tiles)
    vectors = np.eye(dim, dtype=np.float64)
    bits = np.asarray([t.affordance_bits() for t in tiles], dtype=np.uint8)
    colors = colors or {}
    return EmbeddingTable(
        dim=dim,
        chars=tuple(chars),
        vectors=vectors,
        affordances=bits,
        colors=tuple(colors.get(c, (128, 128, 128)) for c in chars),
    )


def synth_table(tiles: list[UnifiedTile], dim: int, seed: int, colors=None) -> EmbeddingTable:
    """Deterministic random table with pairwise L1 separation >= 0.5.

    Stand-in for a pretrained embedding table: draws vectors uniformly in
    [0, 1) and redraws offending rows until the separation holds.
    """
    chars = [t.char for t in tiles]
    if len(set(chars)) != len(chars):
        raise DuplicateTile("synthetic table input tiles must be distinct")
    if dim < len(tiles):
        raise DimTooSmall(f"dim {dim} < tile count {len(tiles)}")
    rng = np.random.Generator(np.random.PCG64(seed))
    n = len(tiles)
    vectors = rng.random((n, dim))
    for _ in range(1000):
        gaps = np.abs(vectors[:, None, :] - vectors[None, :, :]).sum(axis=2)
        np.fill_diagonal(gaps, np.inf)
        bad = np.unique(np.nonzero(gaps < MIN_SYNTH_L1_GAP)[0])
        if bad.size == 0:
            break
        vectors[bad] = rng.random((bad.size, dim))
    else:
        raise DimTooSmall(f"could not separate {n} tiles at dim {dim}")
    bits = np.asarray([t.affordance_bits() for t in tiles], dtype=np.uint8)
    colors = colors or {}
    return EmbeddingTable(
        dim=dim,
        chars=tuple(chars),
        vectors=vectors,
        affordances=bits,
        colors=tuple(colors.get(c, (128, 128, 128)) for c in chars),
    )


def embed_segment(segment: Segment, table: EmbeddingTable) -> np.ndarray:
    """16x16xdim array whose cell vectors are the table rows of the tiles."""
    index = {c: i for i, c in enumerate(table.chars)}
    out = np.empty((SEGMENT_SIZE, SEGMENT_SIZE, table.dim), dtype=np.float64)
    for r, row in enumerate(segment.grid):
        for c, ch in enumerate(row):
            i = index.get(ch)
            if i is None:
                raise UnknownTile(ch, line=r, col=c, context=f"table {table.table_id}")
            out[r, c] = table.vectors[i]
    return out


def nearest_tile(vector: np.ndarray, table: EmbeddingTable) -> str:
    """Tile char with minimum Manhattan distance; ties -> smallest char byte."""
    vec = np.asarray(vector, dtype=np.float64)
    if vec.shape != (table.dim,):
        raise DimensionMismatch(f"vector shape {vec.shape} vs table dim {table.dim}")
    if not np.all(np.isfinite(vec)):
        raise NonFiniteValues("nearest_tile requires a finite vector")
    dists = np.abs(table.vectors - vec).sum(axis=1)
    best = np.min(dists)
    candidates = [table.chars[i] for i in np.nonzero(dists == best)[0]]
    return min(candidates)


def decode_tensor(values: np.ndarray, table: EmbeddingTable,
                  provenance: Provenance | None = None) -> Segment:
    """Per-cell nearest-tile decode of a 16x16xdim array into a Segment."""
    arr = np.asarray(values, dtype=np.float64)
    if arr.shape != (SEGMENT_SIZE, SEGMENT_SIZE, table.dim):
        raise DimensionMismatch(
            f"expected ({SEGMENT_SIZE},{SEGMENT_SIZE},{table.dim}) values, got {arr.shape}"
        )
    if not np.all(np.isfinite(arr)):
        raise NonFiniteValues("decode_tensor refuses NaN/Inf values")
    # argmin over |v - t| with byte-order tie-break; vectorized over all cells
    flat = arr.reshape(-1, table.dim)
    dists = np.abs(flat[:, None, :] - table.vectors[None, :, :]).sum(axis=2)
    order = np.asarray(sorted(range(len(table.chars)), key=lambda i: table.chars[i]))
    ranked = dists[:, order]
    picks = order[np.argmin(ranked, axis=1)]
    rows = []
    for r in range(SEGMENT_SIZE):
        rows.append("".join(table.chars[picks[r * SEGMENT_SIZE + c]] for c in range(SEGMENT_SIZE)))
    prov = provenance or Provenance("GEN", 0, SLOT_GENERATED)
    return Segment(grid=tuple(rows), provenance=prov)
