"""Neural network layers (NHWC) with explicit forward/backward passes.

Each layer caches what its backward pass needs during a training-mode
forward. Parameter gradients accumulate into ``grads`` keyed like ``params``.
"""

from __future__ import annotations

import numpy as np

BN_EPS = 1e-5
BN_MOMENTUM = 0.1


def glorot_uniform(rng, shape, fan_in, fan_out, dtype):
    limit = np.sqrt(6.0 / (fan_in + fan_out))
    return rng.uniform(-limit, limit, size=shape).astype(dtype)


class Layer:
    """Base: parameterless identity."""

    def __init__(self):
        self.params: dict[str, np.ndarray] = {}
        self.grads: dict[str, np.ndarray] = {}
        self.state: dict[str, np.ndarray] = {}

    def forward(self, x, training):
        raise NotImplementedError

    def backward(self, dy):
        raise NotImplementedError

    def zero_grads(self):
        self.grads = {k: np.zeros_like(v) for k, v in self.params.items()}


class Dense(Layer):
    def __init__(self, rng, n_in, n_out, dtype):
        super().__init__()
        self.n_in, self.n_out = n_in, n_out
        self.params = {
            "W": glorot_uniform(rng, (n_in, n_out), n_in, n_out, dtype),
            "b": np.zeros(n_out, dtype=dtype),
        }
        self._x = None

    def forward(self, x, training):
        if training:
            self._x = x
        return x @ self.params["W"] + self.params["b"]

    def backward(self, dy):
        self.grads["W"] += self._x.T @ dy
        self.grads["b"] += dy.sum(axis=0)
        return dy @ self.params["W"].T


class ReLU(Layer):
    def __init__(self):
        super().__init__()
        self._mask = None

    def forward(self, x, training):
        if training:
            self._mask = x > 0
        return np.maximum(x, 0)

    def backward(self, dy):
        return dy * self._mask


class BatchNorm(Layer):
    """Normalizes over all leading axes; channels = last axis.

    Batch statistics (biased variance) in training, running statistics at
    inference; running stats update with momentum 0.1.
    """

    def __init__(self, channels, dtype):
        super().__init__()
        self.channels = channels
        self.params = {
            "gamma": np.ones(channels, dtype=dtype),
            "beta": np.zeros(channels, dtype=dtype),
        }
        self.state = {
            "running_mean": np.zeros(channels, dtype=dtype),
            "running_var": np.ones(channels, dtype=dtype),
        }
        self._cache = None

    def forward(self, x, training):
        flat = x.reshape(-1, self.channels)
        if training:
            mean = flat.mean(axis=0)
            var = flat.var(axis=0)
            self.state["running_mean"] += BN_MOMENTUM * (mean - self.state["running_mean"])
            self.state["running_var"] += BN_MOMENTUM * (var - self.state["running_var"])
            ivar = 1.0 / np.sqrt(var + BN_EPS)
            xc = flat - mean
            xhat = xc * ivar
            self._cache = (x.shape, xc, ivar, xhat)
        else:
            ivar = 1.0 / np.sqrt(self.state["running_var"] + BN_EPS)
            xhat = (flat - self.state["running_mean"]) * ivar
        out = self.params["gamma"] * xhat + self.params["beta"]
        return out.reshape(x.shape)

    def backward(self, dy):
        shape, xc, ivar, xhat = self._cache
        dyf = dy.reshape(-1, self.channels)
        m = dyf.shape[0]
        self.grads["beta"] += dyf.sum(axis=0)
        self.grads["gamma"] += (dyf * xhat).sum(axis=0)
        dxhat = dyf * self.params["gamma"]
        dvar = (dxhat * xc).sum(axis=0) * (-0.5) * ivar**3
        dmean = -(dxhat.sum(axis=0)) * ivar + dvar * (-2.0 / m) * xc.sum(axis=0)
        dx = dxhat * ivar + dvar * (2.0 / m) * xc + dmean / m
        return dx.reshape(shape)


class Flatten(Layer):
    def __init__(self):
        super().__init__()
        self._shape = None

    def forward(self, x, training):
        if training:
            self._shape = x.shape
        return x.reshape(x.shape[0], -1)

    def backward(self, dy):
        return dy.reshape(self._shape)


class Reshape(Layer):
    def __init__(self, target):
        super().__init__()
        self.target = tuple(target)

    def forward(self, x, training):
        return x.reshape((x.shape[0],) + self.target)

    def backward(self, dy):
        return dy.reshape(dy.shape[0], -1)


def _out_size(size, kernel, stride, pad):
    return (size + 2 * pad - kernel) // stride + 1


def im2col(x, kernel, stride, pad, out_h, out_w):
    n, _, _, c = x.shape
    xp = np.pad(x, ((0, 0), (pad, pad), (pad, pad), (0, 0)))
    cols = np.empty((n, out_h, out_w, kernel, kernel, c), dtype=x.dtype)
    for i in range(kernel):
        for j in range(kernel):
            cols[:, :, :, i, j, :] = xp[:, i:i + stride * out_h:stride, j:j + stride * out_w:stride, :]
    return cols.reshape(n, out_h, out_w, kernel * kernel * c)


def col2im(cols, spatial, kernel, stride, pad, out_h, out_w):
    """Adjoint of im2col: scatter-add column patches back onto the image."""
    n = cols.shape[0]
    h, w, c = spatial
    cols6 = cols.reshape(n, out_h, out_w, kernel, kernel, c)
    xp = np.zeros((n, h + 2 * pad, w + 2 * pad, c), dtype=cols.dtype)
    for i in range(kernel):
        for j in range(kernel):
            xp[:, i:i + stride * out_h:stride, j:j + stride * out_w:stride, :] += cols6[:, :, :, i, j, :]
    return xp[:, pad:pad + h, pad:pad + w, :]


class Conv2d(Layer):
    def __init__(self, rng, c_in, c_out, kernel, stride, pad, dtype):
        super().__init__()
        self.c_in, self.c_out = c_in, c_out
        self.kernel, self.stride, self.pad = kernel, stride, pad
        fan_in = kernel * kernel * c_in
        fan_out = kernel * kernel * c_out
        self.params = {
            "W": glorot_uniform(rng, (fan_in, c_out), fan_in, fan_out, dtype),
            "b": np.zeros(c_out, dtype=dtype),
        }
        self._cache = None

    def out_shape(self, h, w):
        return (_out_size(h, self.kernel, self.stride, self.pad),
                _out_size(w, self.kernel, self.stride, self.pad))

    def forward(self, x, training):
        n, h, w, _ = x.shape
        oh, ow = self.out_shape(h, w)
        cols = im2col(x, self.kernel, self.stride, self.pad, oh, ow)
        y = cols @ self.params["W"] + self.params["b"]
        if training:
            self._cache = (cols, (h, w, self.c_in))
        return y

    def backward(self, dy):
        cols, spatial = self._cache
        n, oh, ow, _ = dy.shape
        dy2 = dy.reshape(-1, self.c_out)
        self.grads["W"] += cols.reshape(-1, cols.shape[-1]).T @ dy2
        self.grads["b"] += dy2.sum(axis=0)
        dcols = dy @ self.params["W"].T
        return col2im(dcols, spatial, self.kernel, self.stride, self.pad, oh, ow)


class ConvTranspose2d(Layer):
    """Transposed convolution, implemented as the adjoint of Conv2d.

    The weight is stored in mirror-conv layout (kernel*kernel*c_out, c_in) so
    that forward = conv-backward-input and backward = conv-forward.
    """

    def __init__(self, rng, c_in, c_out, kernel, stride, pad, output_pad, dtype):
        super().__init__()
        self.c_in, self.c_out = c_in, c_out
        self.kernel, self.stride, self.pad, self.output_pad = kernel, stride, pad, output_pad
        fan_in = kernel * kernel * c_in
        fan_out = kernel * kernel * c_out
        self.params = {
            "W": glorot_uniform(rng, (kernel * kernel * c_out, c_in), fan_in, fan_out, dtype),
            "b": np.zeros(c_out, dtype=dtype),
        }
        self._x = None

    def out_shape(self, h, w):
        oh = (h - 1) * self.stride - 2 * self.pad + self.kernel + self.output_pad
        ow = (w - 1) * self.stride - 2 * self.pad + self.kernel + self.output_pad
        return oh, ow

    def forward(self, x, training):
        n, h, w, _ = x.shape
        oh, ow = self.out_shape(h, w)
        cols = x @ self.params["W"].T
        y = col2im(cols, (oh, ow, self.c_out), self.kernel, self.stride, self.pad, h, w)
        if training:
            self._x = x
        return y + self.params["b"]

    def backward(self, dy):
        n, oh, ow, _ = dy.shape
        h, w = self._x.shape[1], self._x.shape[2]
        self.grads["b"] += dy.sum(axis=(0, 1, 2))
        cols = im2col(dy, self.kernel, self.stride, self.pad, h, w)
        self.grads["W"] += cols.reshape(-1, cols.shape[-1]).T @ self._x.reshape(-1, self.c_in)
        return cols @ self.params["W"]
