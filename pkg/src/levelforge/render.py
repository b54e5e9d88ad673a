"""Segment rendering: plain text or flat color-block images."""

from __future__ import annotations

from PIL import Image

from .corpus import SEGMENT_SIZE, Segment
from .embedding import EmbeddingTable
from .errors import UnknownTile

RENDER_TEXT = "text"
RENDER_IMAGE = "image"


def render_text(segment: Segment) -> str:
    return "\n".join(segment.grid)


def render_image(segment: Segment, table: EmbeddingTable, scale: int = 8) -> Image.Image:
    """One (scale x scale) block per tile in the tile's display color."""
    size = SEGMENT_SIZE * scale
    img = Image.new("RGB", (size, size))
    px = img.load()
    colors = {}
    for r, row in enumerate(segment.grid):
        for c, ch in enumerate(row):
            if ch not in colors:
                if ch not in table.chars:
                    raise UnknownTile(ch, line=r, col=c, context="render")
                colors[ch] = table.color(ch)
            color = colors[ch]
            for dy in range(scale):
                for dx in range(scale):
                    px[c * scale + dx, r * scale + dy] = color
    return img


def render_segment(segment: Segment, mode: str, table: EmbeddingTable | None = None,
                   scale: int = 8):
    if mode == RENDER_TEXT:
        return render_text(segment)
    if mode == RENDER_IMAGE:
        if table is None:
            raise UnknownTile("?", context="image rendering needs an embedding table")
        return render_image(segment, table, scale)
    raise ValueError(f"unknown render mode {mode!r}")
