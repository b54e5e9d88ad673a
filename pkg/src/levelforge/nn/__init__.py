from .spec import NetworkSpec, default_cnn_spec, default_fc_spec
from .vae import VaeModel, build_model, sample_latent, softmax
from .losses import (
    RECON_CROSS_ENTROPY,
    RECON_MSE,
    batch_loss_and_grads,
    kl_divergence,
    kl_weight,
    loss,
    reconstruction_error,
)
from .train import Adam, TrainConfig, TrainHistory, embed_corpus, train
from .checkpoint import load_checkpoint, save_checkpoint

__all__ = [
    "Adam",
    "NetworkSpec",
    "RECON_CROSS_ENTROPY",
    "RECON_MSE",
    "TrainConfig",
    "TrainHistory",
    "VaeModel",
    "batch_loss_and_grads",
    "build_model",
    "default_cnn_spec",
    "default_fc_spec",
    "embed_corpus",
    "kl_divergence",
    "kl_weight",
    "load_checkpoint",
    "loss",
    "reconstruction_error",
    "sample_latent",
    "save_checkpoint",
    "softmax",
    "train",
]
