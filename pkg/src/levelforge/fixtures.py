"""Small deterministic fixtures for demos and tests.

The overfit fixture is 8 platformer segments over the 8-tile LR alphabet
with a dim-8 synthetic embedding table; a scaled-down FC model memorizes it
in a few seconds, which is enough to exercise blending, evaluation, and the
explorer end to end.
"""

from __future__ import annotations

import random

from .corpus import CorpusSplit, parse_level, segment_lr_level, split_dataset
from .embedding import EmbeddingTable, synth_table
from .nn import NetworkSpec, TrainConfig, TrainHistory, VaeModel, build_model, train
from .reference import make_lr_level
from .tiles import default_tile_config

FIXTURE_SPEC = NetworkSpec(variant="FC", grid=(16, 16), dim=8, latent_dim=16,
                           fc_widths=(64, 32))
FIXTURE_TRAIN = TrainConfig(learning_rate=1e-3, epochs=2000, batch_size=8, seed=0)


def fixture_corpus(seed: int = 3) -> CorpusSplit:
    """8 distinct 16x16 segments cut from two synthetic LR levels."""
    rng = random.Random(seed)
    config = default_tile_config()
    segments = []
    for i in range(2):
        level = parse_level("\n".join(make_lr_level(rng)), "LR", config)
        segments.extend(segment_lr_level(level, i))
    return split_dataset(segments, ratios=(1.0, 0.0, 0.0), seed=0)


def fixture_table(seed: int = 11) -> EmbeddingTable:
    config = default_tile_config()
    chars = sorted(config.games["LR"].values())
    return synth_table([config.tile(c) for c in chars], dim=8, seed=seed,
                       colors=config.colors)


def train_overfit_model(split: CorpusSplit | None = None,
                        table: EmbeddingTable | None = None,
                        config: TrainConfig = FIXTURE_TRAIN) -> tuple[VaeModel, TrainHistory, CorpusSplit, EmbeddingTable]:
    split = split or fixture_corpus()
    table = table or fixture_table()
    model = build_model(FIXTURE_SPEC, seed=7)
    model, history = train(model, split, table, config)
    return model, history, split, table
