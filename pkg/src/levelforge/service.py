"""Local HTTP facade over a loaded model and segment archive.

All state is fixed at startup and read-only afterwards; every request is a
pure function of that state plus its parameters, so repeated requests and
any interleaving return identical payloads.
"""

from __future__ import annotations

import secrets
from dataclasses import dataclass

import numpy as np
from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel

from .blend import blend_latents
from .corpus import CorpusSplit, Provenance, SLOT_GENERATED, Segment
from .embedding import EmbeddingTable, decode_tensor, embed_segment
from .errors import SearchBudgetExceeded
from .metrics import METRIC_NAMES, metric_vector
from .playability import (
    CATEGORY_LR,
    Deadline,
    categorize_segment,
    loz_playable,
    lr_on_loz_playable,
    lr_playable,
)
from .rng import derive_seed
from .tiles import TileConfig, default_tile_config

API_VERSION = 1
PLAYABILITY_BUDGET_SECONDS = 0.25


@dataclass(frozen=True)
class SessionState:
    model: object
    table: EmbeddingTable
    split: CorpusSplit
    config: TileConfig


class BlendRequest(BaseModel):
    a: str
    b: str
    t: float


def _verdict(fn, segment) -> bool | str:
    try:
        return fn(segment, Deadline(seconds=PLAYABILITY_BUDGET_SECONDS))
    except SearchBudgetExceeded:
        return "unknown"


def _segment_payload(segment: Segment, state: SessionState, latent) -> dict:
    category = categorize_segment(segment, state.config)
    lr_fn = lr_playable if category == CATEGORY_LR else lr_on_loz_playable
    vec = metric_vector(segment)
    return {
        "version": API_VERSION,
        "tiles": list(segment.grid),
        "metric_vector": dict(zip(METRIC_NAMES, (float(v) for v in vec.as_array()))),
        "category": category,
        "lr_playable": _verdict(lr_fn, segment),
        "loz_playable": _verdict(loz_playable, segment),
        "latent": [float(v) for v in np.asarray(latent).ravel()],
    }


def create_app(model, table: EmbeddingTable, split: CorpusSplit,
               config: TileConfig | None = None, ui_dir=None) -> FastAPI:
    state = SessionState(model=model, table=table, split=split,
                         config=config or default_tile_config())
    segments = {seg.id: seg for seg in state.split.all_segments}
    mus: dict[str, np.ndarray] = {}

    def mu_of(segment_id: str) -> np.ndarray:
        if segment_id not in mus:
            embedded = embed_segment(segments[segment_id], state.table).astype(model.dtype)
            mus[segment_id] = model.encode(embedded)[0]
        return mus[segment_id]

    app = FastAPI(title="levelforge explorer", version=str(API_VERSION))
    app.add_middleware(
        CORSMiddleware,
        allow_origin_regex=r"^https?://(localhost|127\.0\.0\.1)(:\d+)?$",
        allow_methods=["GET", "POST"],
        allow_headers=["*"],
    )

    @app.get("/api/health")
    def health():
        return {"version": API_VERSION, "status": "ok",
                "segments": len(segments), "latent_dim": model.spec.latent_dim}

    @app.get("/api/segments")
    def list_segments(game: str = "all"):
        games = {seg.provenance.game for seg in segments.values()}
        if game != "all" and game not in games:
            raise HTTPException(status_code=400, detail=f"unknown game filter {game!r}")
        out = [
            {"id": seg.id, "game": seg.provenance.game, "tiles": list(seg.grid)}
            for seg in sorted(segments.values(), key=lambda s: s.id)
            if game == "all" or seg.provenance.game == game
        ]
        return {"version": API_VERSION, "segments": out}

    @app.post("/api/blend")
    def blend(req: BlendRequest):
        for sid in (req.a, req.b):
            if sid not in segments:
                raise HTTPException(status_code=404, detail=f"unknown segment id {sid!r}")
        if not 0.0 <= req.t <= 1.0:
            raise HTTPException(status_code=422, detail=f"t={req.t} outside [0, 1]")
        z = blend_latents(mu_of(req.a), mu_of(req.b), req.t)
        decoded = decode_tensor(state.model.decode(z), state.table,
                                Provenance("BLEND", 0, SLOT_GENERATED))
        payload = _segment_payload(decoded, state, z)
        payload.update({"a": req.a, "b": req.b, "t": req.t})
        return payload

    @app.get("/api/random")
    def random_segment(seed: int | None = None):
        if seed is None:
            seed = secrets.randbits(32)
        rng = np.random.Generator(np.random.PCG64(derive_seed(seed, "service-random")))
        z = rng.standard_normal(model.spec.latent_dim).astype(model.dtype)
        decoded = decode_tensor(state.model.decode(z), state.table,
                                Provenance("GEN", 0, SLOT_GENERATED))
        payload = _segment_payload(decoded, state, z)
        payload["seed"] = seed
        return payload

    if ui_dir is not None:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="ui")
    return app
