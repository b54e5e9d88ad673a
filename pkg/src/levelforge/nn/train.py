"""Training loop: Adam updates, per-game weighted loss, cyclic KL annealing."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ..embedding import EmbeddingTable, embed_segment
from ..errors import EmptyTrainSet, NonFiniteLoss, UnknownGame
from ..rng import derive_seed
from .losses import RECON_CROSS_ENTROPY, RECON_MSE, batch_loss_and_grads, kl_weight

DEFAULT_GAME_WEIGHTS = {"LR": 0.57, "LOZ": 0.43}


@dataclass(frozen=True)
class TrainConfig:
    learning_rate: float = 1e-5
    epochs: int = 4000
    cycle_length: int = 200
    beta_max: float = 0.01
    beta_step: float = 0.0001
    recon_scale: float = 4.0
    game_weights: dict = field(default_factory=lambda: dict(DEFAULT_GAME_WEIGHTS))
    recon_loss: str = RECON_MSE
    batch_size: int = 32
    seed: int = 0
    checkpoint_interval: int = 0  # epochs between checkpoints; 0 = final only

    def __post_init__(self):
        if self.learning_rate <= 0:
            raise ValueError("learning_rate must be positive")
        if self.recon_loss not in (RECON_MSE, RECON_CROSS_ENTROPY):
            raise ValueError(f"recon_loss must be MSE or CrossEntropy, got {self.recon_loss!r}")
        if self.epochs < 0 or self.cycle_length < 2 or self.batch_size < 1:
            raise ValueError("epochs >= 0, cycle_length >= 2, batch_size >= 1 required")


@dataclass
class EpochRecord:
    epoch: int
    recon: float
    kl: float
    beta: float
    total: float


@dataclass
class TrainHistory:
    records: list[EpochRecord] = field(default_factory=list)

    def __len__(self):
        return len(self.records)

    def csv_lines(self) -> list[str]:
        lines = ["epoch,recon,kl,beta,total"]
        for r in self.records:
            lines.append(f"{r.epoch},{r.recon!r},{r.kl!r},{r.beta!r},{r.total!r}")
        return lines


class Adam:
    """Adam with bias correction; beta1=0.9, beta2=0.999, eps=1e-8."""

    def __init__(self, params: dict, learning_rate: float,
                 beta1: float = 0.9, beta2: float = 0.999, eps: float = 1e-8):
        self.lr = learning_rate
        self.beta1, self.beta2, self.eps = beta1, beta2, eps
        self.t = 0
        self.m = {k: np.zeros_like(v) for k, v in params.items()}
        self.v = {k: np.zeros_like(v) for k, v in params.items()}
        self._scratch = {k: np.empty_like(v) for k, v in params.items()}

    def step(self, params: dict, grads: dict):
        self.t += 1
        b1c = 1.0 - self.beta1**self.t
        b2c = 1.0 - self.beta2**self.t
        for key, p in params.items():
            g = grads[key]
            m = self.m[key]
            v = self.v[key]
            s = self._scratch[key]
            np.multiply(g, g, out=s)
            v *= self.beta2
            v += (1.0 - self.beta2) * s
            m *= self.beta1
            m += (1.0 - self.beta1) * g
            np.divide(v, b2c, out=s)
            np.sqrt(s, out=s)
            s += self.eps
            np.divide(m, s, out=s)
            s *= self.lr / b1c
            p -= s


def embed_corpus(segments, table: EmbeddingTable, dtype=np.float32):
    """Stack segments into (N, 16, 16, dim) plus their game ids."""
    arrays = [embed_segment(s, table).astype(dtype) for s in segments]
    games = [s.provenance.game for s in segments]
    return np.stack(arrays), games


def _targets_for(x: np.ndarray, segments, table: EmbeddingTable, recon_loss: str):
    if recon_loss == RECON_MSE:
        return x
    index = {c: i for i, c in enumerate(table.chars)}
    n = len(segments)
    out = np.empty((n, 16, 16), dtype=np.int64)
    for i, seg in enumerate(segments):
        for r, row in enumerate(seg.grid):
            for c, ch in enumerate(row):
                out[i, r, c] = index[ch]
    return out


def train(model, split, table: EmbeddingTable, config: TrainConfig,
          checkpoint_dir=None, progress=None):
    """Run the full epoch schedule; returns (model, TrainHistory).

    The model is updated in place. Deterministic for a fixed config.seed.
    """
    segments = list(split.train)
    if not segments:
        raise EmptyTrainSet("training split is empty")
    for seg in segments:
        if seg.provenance.game not in config.game_weights:
            raise UnknownGame(f"no loss weight for game {seg.provenance.game!r}")

    x, games = embed_corpus(segments, table, dtype=model.dtype)
    targets = _targets_for(x, segments, table, config.recon_loss)
    weights = np.asarray([config.game_weights[g] for g in games], dtype=np.float64)

    optimizer = Adam(model.named_params(), config.learning_rate)
    rng = np.random.Generator(np.random.PCG64(derive_seed(config.seed, "train")))
    history = TrainHistory()
    n = len(segments)
    latent = model.spec.latent_dim

    for epoch in range(config.epochs):
        beta = kl_weight(epoch, config)
        perm = rng.permutation(n)
        sums = np.zeros(3)
        for start in range(0, n, config.batch_size):
            idx = perm[start:start + config.batch_size]
            eps = rng.standard_normal((len(idx), latent)).astype(model.dtype)
            total, recon, kl = batch_loss_and_grads(
                model, x[idx], targets[idx], weights[idx], beta, eps,
                config.recon_loss, config.recon_scale)
            if not math.isfinite(total):
                raise NonFiniteLoss(epoch, f"batch at index {start}")
            optimizer.step(model.named_params(), model.named_grads())
            sums += np.array([total, recon, kl]) * len(idx)
        means = sums / n
        history.records.append(EpochRecord(epoch, means[1], means[2], beta, means[0]))
        if progress is not None:
            progress(history.records[-1])
        if checkpoint_dir is not None and config.checkpoint_interval > 0 \
                and (epoch + 1) % config.checkpoint_interval == 0:
            from .checkpoint import save_checkpoint
            path = checkpoint_dir / f"checkpoint-{epoch + 1:06d}.json"
            path.write_bytes(save_checkpoint(model))
    return model, history
