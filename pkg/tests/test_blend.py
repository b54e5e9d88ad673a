import numpy as np
import pytest

from levelforge.blend import blend_latents, blend_pair, random_generate
from levelforge.embedding import decode_tensor, embed_segment
from levelforge.errors import EmptyInput


def test_blend_latents_affine():
    a = np.array([1.0, 0.0, -2.0])
    b = np.array([0.0, 4.0, 2.0])
    assert np.array_equal(blend_latents(a, b, 0.0), a)
    assert np.array_equal(blend_latents(a, b, 1.0), b)
    assert np.array_equal(blend_latents(a, b, 0.5), np.array([0.5, 2.0, 0.0]))
    t = 0.3
    assert np.allclose(blend_latents(a, b, t), (1 - t) * a + t * b)


def test_blend_pair_endpoints_are_reconstructions(overfit):
    model, _, split, table, _ = overfit
    a, b = split.train[0], split.train[5]
    result = blend_pair(model, table, a, b, steps=2)
    assert [s.t for s in result.steps] == [0.0, 1.0]
    rec_a = decode_tensor(model.reconstruct(embed_segment(a, table).astype(model.dtype)), table)
    rec_b = decode_tensor(model.reconstruct(embed_segment(b, table).astype(model.dtype)), table)
    assert result.steps[0].segment.grid == rec_a.grid
    assert result.steps[1].segment.grid == rec_b.grid
    assert result.endpoint_a == a.provenance


def test_blend_pair_identical_inputs(overfit):
    model, _, split, table, _ = overfit
    a = split.train[2]
    result = blend_pair(model, table, a, a, steps=5)
    grids = {step.segment.grid for step in result.steps}
    assert len(grids) == 1


def test_blend_pair_midpoint_latent(overfit):
    model, _, split, table, _ = overfit
    a, b = split.train[1], split.train[6]
    result = blend_pair(model, table, a, b, steps=11)
    assert len(result.steps) == 11
    ts = [step.t for step in result.steps]
    assert ts == [i / 10 for i in range(11)]
    assert all(t2 > t1 for t1, t2 in zip(ts, ts[1:]))
    mu_a, _ = model.encode(embed_segment(a, table).astype(model.dtype))
    mu_b, _ = model.encode(embed_segment(b, table).astype(model.dtype))
    assert np.array_equal(result.steps[5].latent, (mu_a + mu_b) / 2)


def test_blend_pair_deterministic(overfit):
    model, _, split, table, _ = overfit
    a, b = split.train[0], split.train[7]
    r1 = blend_pair(model, table, a, b, steps=4)
    r2 = blend_pair(model, table, a, b, steps=4)
    for s1, s2 in zip(r1.steps, r2.steps):
        assert s1.segment.grid == s2.segment.grid
        assert np.array_equal(s1.latent, s2.latent)


def test_blend_pair_rejects_single_step(overfit):
    model, _, split, table, _ = overfit
    with pytest.raises(EmptyInput):
        blend_pair(model, table, split.train[0], split.train[1], steps=1)


def test_random_generate_deterministic(overfit):
    model, _, _, table, _ = overfit
    a = random_generate(model, table, 5, np.random.Generator(np.random.PCG64(12)))
    b = random_generate(model, table, 5, np.random.Generator(np.random.PCG64(12)))
    assert [s.grid for s in a] == [s.grid for s in b]
    assert len(a) == 5
    assert all(s.provenance.slot == "GENERATED" for s in a)


def test_random_generate_rejects_zero(overfit):
    model, _, _, table, _ = overfit
    with pytest.raises(EmptyInput):
        random_generate(model, table, 0, np.random.default_rng(0))
