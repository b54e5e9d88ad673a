"""Latent-space generation and pairwise blending of segments."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .corpus import Provenance, SLOT_GENERATED, Segment
from .embedding import EmbeddingTable, decode_tensor, embed_segment
from .errors import EmptyInput


@dataclass(frozen=True)
class BlendStep:
    t: float
    latent: np.ndarray
    segment: Segment


@dataclass(frozen=True)
class BlendResult:
    steps: tuple[BlendStep, ...]
    endpoint_a: Provenance
    endpoint_b: Provenance


def random_generate(model, table: EmbeddingTable, n: int, rng: np.random.Generator) -> list[Segment]:
    """Decode n standard-normal latent draws into segments."""
    if n < 1:
        raise EmptyInput(f"need n >= 1, got {n}")
    out = []
    for i in range(n):
        z = rng.standard_normal(model.spec.latent_dim).astype(model.dtype)
        values = model.decode(z)
        out.append(decode_tensor(values, table, Provenance("GEN", i, SLOT_GENERATED)))
    return out


def blend_latents(mu_a: np.ndarray, mu_b: np.ndarray, t: float) -> np.ndarray:
    return (1.0 - t) * mu_a + t * mu_b


def blend_pair(model, table: EmbeddingTable, a: Segment, b: Segment, steps: int = 11,
               spherical: bool = False) -> BlendResult:
    """Interpolate between the encoder means of a and b at evenly spaced t.

    Uses means only (no sampling noise), so results are deterministic;
    endpoints t=0 and t=1 are the model's reconstructions of a and b.
    """
    if steps < 2:
        raise EmptyInput(f"need steps >= 2, got {steps}")
    mu_a, _ = model.encode(embed_segment(a, table).astype(model.dtype))
    mu_b, _ = model.encode(embed_segment(b, table).astype(model.dtype))
    out = []
    for i in range(steps):
        t = i / (steps - 1)
        if spherical:
            z = _slerp(mu_a, mu_b, t)
        else:
            z = blend_latents(mu_a, mu_b, t)
        values = model.decode(z)
        prov = Provenance("BLEND", i, SLOT_GENERATED)
        out.append(BlendStep(t=t, latent=z, segment=decode_tensor(values, table, prov)))
    return BlendResult(steps=tuple(out), endpoint_a=a.provenance, endpoint_b=b.provenance)


def _slerp(a: np.ndarray, b: np.ndarray, t: float) -> np.ndarray:
    na, nb = np.linalg.norm(a), np.linalg.norm(b)
    if na == 0 or nb == 0:
        return blend_latents(a, b, t)
    omega = np.arccos(np.clip(np.dot(a / na, b / nb), -1.0, 1.0))
    so = np.sin(omega)
    if so < 1e-9:
        return blend_latents(a, b, t)
    return (np.sin((1.0 - t) * omega) / so) * a + (np.sin(t * omega) / so) * b
