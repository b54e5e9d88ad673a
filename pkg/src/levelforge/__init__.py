"""levelforge: blend tile-based game levels with VAEs over tile embeddings."""

__version__ = "0.1.0"

from .corpus import (
    CorpusSplit,
    LevelGrid,
    Provenance,
    Segment,
    pad_loz_room,
    parse_level,
    segment_lr_level,
    split_dataset,
)
from .embedding import (
    EmbeddingTable,
    decode_tensor,
    embed_segment,
    load_table,
    nearest_tile,
    one_hot_table,
    save_table,
    synth_table,
)
from .tiles import UnifiedTile, default_tile_config, load_tile_config, unify_tile

__all__ = [
    "CorpusSplit",
    "EmbeddingTable",
    "LevelGrid",
    "Provenance",
    "Segment",
    "UnifiedTile",
    "decode_tensor",
    "default_tile_config",
    "embed_segment",
    "load_table",
    "load_tile_config",
    "nearest_tile",
    "one_hot_table",
    "pad_loz_room",
    "parse_level",
    "save_table",
    "segment_lr_level",
    "split_dataset",
    "synth_table",
    "unify_tile",
]
