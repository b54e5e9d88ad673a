import json
import random

import numpy as np
import pytest

from levelforge.corpus import Provenance, Segment
from levelforge.embedding import (
    decode_tensor,
    embed_segment,
    load_table,
    nearest_tile,
    one_hot_table,
    save_table,
    synth_table,
)
from levelforge.errors import (
    DimTooSmall,
    DimensionMismatch,
    DuplicateTile,
    NonFiniteValues,
    SchemaError,
    UnknownTile,
)

from oracles import nearest_scan


def _segment(rows, slot="TL"):
    return Segment(grid=tuple(rows), provenance=Provenance("LR", 0, slot))


def _table_file(tmp_path, dim, entries):
    path = tmp_path / "table.json"
    path.write_text(json.dumps({"dim": dim, "entries": entries}))
    return path


def _entry(tile, vector):
    return {"tile": tile, "vector": vector, "affordances": [0] * 13, "color": [1, 2, 3]}


def test_load_table_valid(tmp_path):
    entries = [_entry(c, [float(i)] * 4) for i, c in enumerate("B.GW")]
    table = load_table(_table_file(tmp_path, 4, entries))
    assert table.dim == 4 and len(table) == 4
    assert table.vector("G")[0] == 2.0


def test_load_table_duplicate(tmp_path):
    entries = [_entry("B", [0.0, 1.0]), _entry("B", [1.0, 0.0])]
    with pytest.raises(DuplicateTile):
        load_table(_table_file(tmp_path, 2, entries))


def test_load_table_duplicate_vector(tmp_path):
    entries = [_entry("B", [0.0, 1.0]), _entry("D", [0.0, 1.0])]
    with pytest.raises(DuplicateTile):
        load_table(_table_file(tmp_path, 2, entries))


def test_load_table_dim_mismatch(tmp_path):
    entries = [_entry("B", [0.0] * 255)]
    with pytest.raises(DimensionMismatch):
        load_table(_table_file(tmp_path, 256, entries))


def test_load_table_schema_errors(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"entries": []}))
    with pytest.raises(SchemaError):
        load_table(path)
    bad_bits = [_entry("B", [0.0, 1.0])]
    bad_bits[0]["affordances"] = [0] * 12
    with pytest.raises(SchemaError):
        load_table(_table_file(tmp_path, 2, bad_bits))


def test_save_load_round_trip(tmp_path, synth8_table):
    path = tmp_path / "rt.json"
    save_table(synth8_table, path)
    again = load_table(path)
    assert again.chars == synth8_table.chars
    assert np.array_equal(again.vectors, synth8_table.vectors)


def test_one_hot_table(all_tiles):
    table = one_hot_table(all_tiles)
    assert table.dim == 15 and len(table) == 15
    for i, char in enumerate(table.chars):
        vec = table.vectors[i]
        assert vec[i] == 1.0 and vec.sum() == 1.0


def test_one_hot_single(all_tiles):
    table = one_hot_table(all_tiles[:1])
    assert table.dim == 1
    assert table.vectors.tolist() == [[1.0]]


def test_one_hot_permutation_distances(all_tiles):
    a = one_hot_table(all_tiles)
    b = one_hot_table(list(reversed(all_tiles)))
    # hot indices differ but every distinct pair is at L1 distance 2
    assert a.index_of("B") != b.index_of("B")
    assert a.min_pairwise_l1_gap() == b.min_pairwise_l1_gap() == 2.0


def test_synth_table_deterministic(all_tiles):
    a = synth_table(all_tiles, dim=16, seed=7)
    b = synth_table(all_tiles, dim=16, seed=7)
    assert np.array_equal(a.vectors, b.vectors)
    assert a.table_id == b.table_id


def test_synth_table_min_gap(all_tiles):
    table = synth_table(all_tiles, dim=16, seed=3)
    n = len(table.chars)
    worst = min(
        float(np.abs(table.vectors[i] - table.vectors[j]).sum())
        for i in range(n) for j in range(n) if i != j
    )
    assert worst >= 0.5


def test_synth_table_dim_too_small(all_tiles):
    with pytest.raises(DimTooSmall):
        synth_table(all_tiles, dim=4, seed=0)


def test_embed_all_dots(synth8_table):
    seg = _segment(["." * 16] * 16)
    values = embed_segment(seg, synth8_table)
    assert values.shape == (16, 16, 8)
    dot = synth8_table.vector(".")
    assert np.array_equal(values[5, 9], dot)
    assert np.array_equal(values.reshape(-1, 8), np.tile(dot, (256, 1)))


def test_embed_unknown_tile(synth8_table):
    seg = _segment(["W" + "." * 15] + ["." * 16] * 15)
    with pytest.raises(UnknownTile):
        embed_segment(seg, synth8_table)


def test_embed_decode_identity_random_segments(synth8_table, all_tiles):
    rng = random.Random(13)
    tables = [synth8_table, one_hot_table(all_tiles)]
    for table in tables:
        chars = table.chars
        for _ in range(20):
            rows = ["".join(rng.choice(chars) for _ in range(16)) for _ in range(16)]
            seg = _segment(rows)
            back = decode_tensor(embed_segment(seg, table), table)
            assert back.grid == seg.grid
            assert back.provenance.slot == "GENERATED"


def test_nearest_tile_exact_and_tie(synth8_table):
    assert nearest_tile(synth8_table.vector("G"), synth8_table) == "G"
    two = one_hot_table([t for t in _tiles_for("BD")])
    midpoint = np.array([0.5, 0.5])
    assert nearest_tile(midpoint, two) == "B"  # byte-order tie-break


def _tiles_for(chars):
    from levelforge.tiles import default_tile_config

    cfg = default_tile_config()
    return [cfg.tile(c) for c in chars]


def test_nearest_tile_errors(synth8_table):
    with pytest.raises(DimensionMismatch):
        nearest_tile(np.zeros(7), synth8_table)
    with pytest.raises(NonFiniteValues):
        nearest_tile(np.full(8, np.nan), synth8_table)


def test_nearest_tile_matches_exhaustive_scan(all_tiles):
    table = synth_table(all_tiles, dim=16, seed=21)
    rng = np.random.default_rng(17)
    for _ in range(1000):
        vec = rng.uniform(-1.5, 1.5, size=16)
        expected, _ = nearest_scan(vec, table.chars, table.vectors)
        assert nearest_tile(vec, table) == expected


def test_one_hot_nearest_is_argmax(all_tiles):
    table = one_hot_table(all_tiles)
    rng = np.random.default_rng(23)
    for _ in range(300):
        vec = rng.uniform(0.0, 1.0, size=table.dim)
        if (vec == vec.max()).sum() > 1:
            continue
        assert nearest_tile(vec, table) == table.chars[int(np.argmax(vec))]


def test_decode_tolerates_noise_below_half_gap(synth8_table):
    rng = random.Random(29)
    rows = ["".join(rng.choice(synth8_table.chars) for _ in range(16)) for _ in range(16)]
    seg = _segment(rows)
    values = embed_segment(seg, synth8_table)
    gap = synth8_table.min_pairwise_l1_gap()
    noise_rng = np.random.default_rng(31)
    noise = noise_rng.uniform(-1.0, 1.0, size=values.shape)
    # scale each cell's noise to just under half the minimum pairwise gap
    norms = np.abs(noise).sum(axis=2, keepdims=True)
    noise = noise / norms * (0.49 * gap)
    assert decode_tensor(values + noise, synth8_table).grid == seg.grid


def test_decode_refuses_nan(synth8_table):
    values = np.zeros((16, 16, 8))
    values[3, 3, 3] = np.nan
    with pytest.raises(NonFiniteValues):
        decode_tensor(values, synth8_table)
    with pytest.raises(DimensionMismatch):
        decode_tensor(np.zeros((16, 16, 9)), synth8_table)
