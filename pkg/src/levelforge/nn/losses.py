"""Loss assembly: weighted reconstruction, KL term, cyclic annealing schedule."""

from __future__ import annotations

import numpy as np

from ..errors import ShapeMismatch, UnknownGame

RECON_MSE = "MSE"
RECON_CROSS_ENTROPY = "CrossEntropy"

_LOG_CLIP = 1e-12


def kl_weight(epoch: int, config) -> float:
    """Cyclic annealing weight for the KL term.

    Zero for the whole first cycle; afterwards each cycle ramps by beta_step
    per epoch for half a cycle, then holds at beta_max for the second half.
    """
    cycle = config.cycle_length
    if epoch < cycle:
        return 0.0
    k = epoch % cycle
    beta = min(k + 1, cycle // 2) * config.beta_step
    return min(beta, config.beta_max)


def kl_divergence(mu: np.ndarray, logvar: np.ndarray) -> float:
    """-1/2 * sum(1 + logvar - mu^2 - exp(logvar)) for one latent vector."""
    mu = np.asarray(mu, dtype=np.float64)
    logvar = np.asarray(logvar, dtype=np.float64)
    if mu.shape != logvar.shape:
        raise ShapeMismatch(f"mu {mu.shape} vs logvar {logvar.shape}")
    return float(-0.5 * np.sum(1.0 + logvar - mu**2 - np.exp(logvar)))


def reconstruction_error(pred: np.ndarray, target: np.ndarray, recon_loss: str) -> float:
    """Raw per-segment error R: MSE over all entries, or per-tile categorical
    cross-entropy (pred as channel probabilities, target one-hot)."""
    pred = np.asarray(pred, dtype=np.float64)
    target = np.asarray(target, dtype=np.float64)
    if pred.shape != target.shape:
        raise ShapeMismatch(f"pred {pred.shape} vs target {target.shape}")
    if recon_loss == RECON_MSE:
        return float(np.mean((pred - target) ** 2))
    if recon_loss == RECON_CROSS_ENTROPY:
        idx = np.argmax(target, axis=-1)
        picked = np.take_along_axis(pred, idx[..., None], axis=-1)[..., 0]
        return float(-np.mean(np.log(np.clip(picked, _LOG_CLIP, 1.0))))
    raise ShapeMismatch(f"unknown recon_loss {recon_loss!r}")


def loss(recon_pred, recon_target, mu, logvar, game: str, beta: float, config):
    """(total, recon_part, kl_part) for one segment.

    recon_part = recon_scale * game_weight * R, kl_part is the closed-form KL
    against the standard normal, total = recon_part + beta * kl_part.
    """
    if game not in config.game_weights:
        raise UnknownGame(f"no loss weight for game {game!r}")
    r = reconstruction_error(recon_pred, recon_target, config.recon_loss)
    recon_part = config.recon_scale * config.game_weights[game] * r
    kl_part = kl_divergence(mu, logvar)
    return recon_part + beta * kl_part, recon_part, kl_part


def batch_loss_and_grads(model, x, target, weights, beta, eps, recon_loss, recon_scale):
    """Training-mode forward+backward over a batch; accumulates model grads.

    target is the embedded array for MSE or integer tile indices (N, H, W)
    for cross-entropy. weights holds per-item game weights. eps is the fixed
    standard-normal draw for the reparameterization.

    Returns (total, recon_part, kl_part) batch means as floats.
    """
    n = x.shape[0]
    model.zero_grads()
    mu, logvar, clamp_mask = model.forward_encoder(x, training=True)
    z = mu + np.exp(logvar / 2.0) * eps
    y = model.forward_decoder(z, training=True)

    if recon_loss == RECON_MSE:
        diff = y - target
        per_elem = diff.reshape(n, -1)
        r_items = np.mean(per_elem.astype(np.float64) ** 2, axis=1)
        d = per_elem.shape[1]
        dy = (weights * recon_scale / (d * n))[:, None, None, None] * 2.0 * diff
    else:
        shifted = y - y.max(axis=-1, keepdims=True)
        logsum = np.log(np.exp(shifted).sum(axis=-1, keepdims=True))
        logp = shifted - logsum
        picked = np.take_along_axis(logp, target[..., None], axis=-1)[..., 0]
        cells = picked.shape[1] * picked.shape[2]
        r_items = -picked.reshape(n, -1).astype(np.float64).mean(axis=1)
        probs = np.exp(logp)
        onehot = np.zeros_like(probs)
        np.put_along_axis(onehot, target[..., None], 1.0, axis=-1)
        dy = (weights * recon_scale / (cells * n))[:, None, None, None] * (probs - onehot)

    recon_items = recon_scale * weights.astype(np.float64) * r_items
    mu64 = mu.astype(np.float64)
    lv64 = logvar.astype(np.float64)
    kl_items = -0.5 * np.sum(1.0 + lv64 - mu64**2 - np.exp(lv64), axis=1)
    total = float(np.mean(recon_items + beta * kl_items))

    dz = dy.astype(model.dtype)
    for layer in reversed(model.decoder):
        dz = layer.backward(dz)
    dmu = dz + (beta / n) * mu
    dlogvar = dz * eps * 0.5 * np.exp(logvar / 2.0) + (beta / n) * 0.5 * (np.exp(logvar) - 1.0)
    dlogvar = dlogvar * clamp_mask
    dh = model.mu_head.backward(dmu.astype(model.dtype))
    dh = dh + model.logvar_head.backward(dlogvar.astype(model.dtype))
    for layer in reversed(model.encoder):
        dh = layer.backward(dh)

    return total, float(np.mean(recon_items)), float(np.mean(kl_items))
