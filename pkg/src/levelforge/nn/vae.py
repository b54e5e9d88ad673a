"""Variational autoencoder assembly: build, encode, sample, decode.

Layers follow the convention: every trunk layer is followed by batch
normalization and ReLU; the latent heads and the decoder output layer are
bare linear maps. logvar is clamped to [-10, 10] before exponentiation.
"""

from __future__ import annotations

import numpy as np

from ..errors import ShapeMismatch
from ..rng import derive_seed
from .layers import (
    BatchNorm,
    Conv2d,
    ConvTranspose2d,
    Dense,
    Flatten,
    Layer,
    ReLU,
    Reshape,
)
from .spec import NetworkSpec, VARIANT_CNN, VARIANT_FC

LOGVAR_CLAMP = 10.0


class VaeModel:
    def __init__(self, spec: NetworkSpec, encoder, mu_head, logvar_head, decoder, dtype):
        self.spec = spec
        self.encoder: list[Layer] = encoder
        self.mu_head: Dense = mu_head
        self.logvar_head: Dense = logvar_head
        self.decoder: list[Layer] = decoder
        self.dtype = dtype

    # ---- parameter plumbing -------------------------------------------------
    def _named_layers(self):
        for i, layer in enumerate(self.encoder):
            yield f"enc.{i}", layer
        yield "mu", self.mu_head
        yield "logvar", self.logvar_head
        for i, layer in enumerate(self.decoder):
            yield f"dec.{i}", layer

    def named_params(self) -> dict[str, np.ndarray]:
        out = {}
        for prefix, layer in self._named_layers():
            for key, arr in layer.params.items():
                out[f"{prefix}.{key}"] = arr
        return out

    def named_state(self) -> dict[str, np.ndarray]:
        out = {}
        for prefix, layer in self._named_layers():
            for key, arr in layer.state.items():
                out[f"{prefix}.{key}"] = arr
        return out

    def named_grads(self) -> dict[str, np.ndarray]:
        out = {}
        for prefix, layer in self._named_layers():
            for key, arr in layer.grads.items():
                out[f"{prefix}.{key}"] = arr
        return out

    def set_param(self, name: str, value: np.ndarray):
        prefix, key = name.rsplit(".", 1)
        for p, layer in self._named_layers():
            if p == prefix and key in layer.params:
                layer.params[key] = value.astype(self.dtype)
                return
            if p == prefix and key in layer.state:
                layer.state[key] = value.astype(self.dtype)
                return
        raise KeyError(name)

    def zero_grads(self):
        for _, layer in self._named_layers():
            layer.zero_grads()

    # ---- compute ------------------------------------------------------------
    def _check_input(self, x):
        h, w = self.spec.grid
        if x.shape[-3:] != (h, w, self.spec.dim):
            raise ShapeMismatch(f"expected (..., {h}, {w}, {self.spec.dim}) input, got {x.shape}")
        if not np.all(np.isfinite(x)):
            raise ShapeMismatch("non-finite values in encoder input")

    def forward_encoder(self, x, training):
        h = x
        for layer in self.encoder:
            h = layer.forward(h, training)
        mu = self.mu_head.forward(h, training)
        logvar_raw = self.logvar_head.forward(h, training)
        logvar = np.clip(logvar_raw, -LOGVAR_CLAMP, LOGVAR_CLAMP)
        clamp_mask = (logvar_raw > -LOGVAR_CLAMP) & (logvar_raw < LOGVAR_CLAMP)
        return mu, logvar, clamp_mask

    def forward_decoder(self, z, training):
        y = z
        for layer in self.decoder:
            y = layer.forward(y, training)
        return y

    def encode(self, x: np.ndarray):
        """Deterministic inference-mode encoding -> (mu, logvar)."""
        arr = np.asarray(x, dtype=self.dtype)
        single = arr.ndim == 3
        if single:
            arr = arr[None]
        self._check_input(arr)
        mu, logvar, _ = self.forward_encoder(arr, training=False)
        return (mu[0], logvar[0]) if single else (mu, logvar)

    def decode(self, z: np.ndarray) -> np.ndarray:
        """Inference-mode decoding; softmax over channels for one-hot models."""
        arr = np.asarray(z, dtype=self.dtype)
        single = arr.ndim == 1
        if single:
            arr = arr[None]
        if arr.shape[-1] != self.spec.latent_dim:
            raise ShapeMismatch(f"latent length {arr.shape[-1]} != {self.spec.latent_dim}")
        y = self.forward_decoder(arr, training=False)
        if self.spec.output_activation == "softmax":
            y = softmax(y)
        return y[0] if single else y

    def reconstruct(self, x: np.ndarray) -> np.ndarray:
        """decode(encode(x).mu): the deterministic reconstruction."""
        mu, _ = self.encode(x)
        return self.decode(mu)


def softmax(y: np.ndarray) -> np.ndarray:
    shifted = y - y.max(axis=-1, keepdims=True)
    e = np.exp(shifted)
    return e / e.sum(axis=-1, keepdims=True)


def sample_latent(mu: np.ndarray, logvar: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """Reparameterized draw z = mu + exp(logvar/2) * eps."""
    mu = np.asarray(mu)
    logvar = np.asarray(logvar)
    if mu.shape != logvar.shape:
        raise ShapeMismatch(f"mu {mu.shape} vs logvar {logvar.shape}")
    eps = rng.standard_normal(mu.shape)
    return mu + np.exp(logvar / 2.0) * eps


def build_model(spec: NetworkSpec, seed: int, dtype=np.float32) -> VaeModel:
    """Deterministically initialized model for the given spec and seed."""
    rng = np.random.Generator(np.random.PCG64(derive_seed(seed, "model-init")))
    if spec.variant == VARIANT_FC:
        encoder, decoder, head_in = _build_fc(spec, rng, dtype)
    else:
        encoder, decoder, head_in = _build_cnn(spec, rng, dtype)
    mu_head = Dense(rng, head_in, spec.latent_dim, dtype)
    logvar_head = Dense(rng, head_in, spec.latent_dim, dtype)
    model = VaeModel(spec, encoder, mu_head, logvar_head, decoder, dtype)
    model.zero_grads()
    return model


def _build_fc(spec: NetworkSpec, rng, dtype):
    encoder: list[Layer] = [Flatten()]
    units = spec.input_units
    for width in spec.fc_widths:
        encoder += [Dense(rng, units, width, dtype), BatchNorm(width, dtype), ReLU()]
        units = width
    decoder: list[Layer] = []
    d_units = spec.latent_dim
    for width in reversed(spec.fc_widths):
        decoder += [Dense(rng, d_units, width, dtype), BatchNorm(width, dtype), ReLU()]
        d_units = width
    decoder += [Dense(rng, d_units, spec.input_units, dtype),
                Reshape((spec.grid[0], spec.grid[1], spec.dim))]
    return encoder, decoder, units


def _build_cnn(spec: NetworkSpec, rng, dtype):
    k = spec.kernel
    chain = spec.conv_shape_chain()
    out_pads = spec.deconv_output_paddings()
    encoder: list[Layer] = []
    channels = spec.dim
    for filters, stride in zip(spec.conv_filters, spec.conv_strides):
        encoder += [Conv2d(rng, channels, filters, k, stride, 1, dtype),
                    BatchNorm(filters, dtype), ReLU()]
        channels = filters
    encoder.append(Flatten())
    units = spec.flatten_units
    for width in spec.dense_widths:
        encoder += [Dense(rng, units, width, dtype), BatchNorm(width, dtype), ReLU()]
        units = width

    decoder: list[Layer] = []
    d_units = spec.latent_dim
    for width in reversed(spec.dense_widths):
        decoder += [Dense(rng, d_units, width, dtype), BatchNorm(width, dtype), ReLU()]
        d_units = width
    decoder += [Dense(rng, d_units, spec.flatten_units, dtype),
                BatchNorm(spec.flatten_units, dtype), ReLU(),
                Reshape((chain[-1][0], chain[-1][1], spec.conv_filters[-1]))]
    channels = spec.conv_filters[-1]
    for i in range(len(spec.conv_filters) - 1, 0, -1):
        decoder += [ConvTranspose2d(rng, channels, spec.conv_filters[i - 1], k,
                                    spec.conv_strides[i], 1, out_pads[i], dtype),
                    BatchNorm(spec.conv_filters[i - 1], dtype), ReLU()]
        channels = spec.conv_filters[i - 1]
    decoder.append(ConvTranspose2d(rng, channels, spec.dim, k,
                                   spec.conv_strides[0], 1, out_pads[0], dtype))
    return encoder, decoder, units
