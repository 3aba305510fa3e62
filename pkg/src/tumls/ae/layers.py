"""Differentiable layers built on the kernel backend.

Each layer caches what its backward pass needs during forward. Parameters
and their gradient buffers are exposed as aligned lists so the optimizer and
checkpoint code can treat the model as a flat collection of named arrays.
All math is float64.
"""

from __future__ import annotations

import numpy as np

from tumls import kernels


class Layer:
    def forward(self, x):
        raise NotImplementedError

    def backward(self, gy):
        raise NotImplementedError

    def params(self):
        """List of (name, array) pairs; empty for stateless layers."""
        return []

    def grads(self):
        return []

    def zero_grad(self):
        for g in self.grads():
            g[1].fill(0.0)


def he_uniform(rng, shape, fan_in):
    limit = np.sqrt(6.0 / fan_in)
    return rng.uniform(-limit, limit, size=shape)


class Conv2d(Layer):
    def __init__(self, in_ch, out_ch, ksize=3, stride=2, pad=1, rng=None):
        rng = rng or np.random.default_rng(0)
        self.stride, self.pad = stride, pad
        self.w = he_uniform(rng, (out_ch, in_ch, ksize, ksize), in_ch * ksize * ksize)
        self.b = np.zeros(out_ch)
        self.gw = np.zeros_like(self.w)
        self.gb = np.zeros_like(self.b)
        self._x = None

    def forward(self, x):
        self._x = x
        return kernels.conv2d_forward(x, self.w, self.b, self.stride, self.pad)

    def backward(self, gy):
        gx, gw, gb = kernels.conv2d_backward(self._x, self.w, gy, self.stride, self.pad)
        self.gw += gw
        self.gb += gb
        return gx

    def params(self):
        return [("weight", self.w), ("bias", self.b)]

    def grads(self):
        return [("weight", self.gw), ("bias", self.gb)]


class ConvTranspose2d(Layer):
    def __init__(self, in_ch, out_ch, ksize=3, stride=2, pad=1, out_pad=1, rng=None):
        rng = rng or np.random.default_rng(0)
        self.stride, self.pad, self.out_pad = stride, pad, out_pad
        self.w = he_uniform(rng, (in_ch, out_ch, ksize, ksize), in_ch * ksize * ksize)
        self.b = np.zeros(out_ch)
        self.gw = np.zeros_like(self.w)
        self.gb = np.zeros_like(self.b)
        self._x = None

    def forward(self, x):
        self._x = x
        return kernels.conv_transpose2d_forward(
            x, self.w, self.b, self.stride, self.pad, self.out_pad)

    def backward(self, gy):
        gx, gw, gb = kernels.conv_transpose2d_backward(
            self._x, self.w, gy, self.stride, self.pad, self.out_pad)
        self.gw += gw
        self.gb += gb
        return gx

    def params(self):
        return [("weight", self.w), ("bias", self.b)]

    def grads(self):
        return [("weight", self.gw), ("bias", self.gb)]


class ReLU(Layer):
    def forward(self, x):
        self._mask = x > 0
        return np.where(self._mask, x, 0.0)

    def backward(self, gy):
        return np.where(self._mask, gy, 0.0)


class Sigmoid(Layer):
    def forward(self, x):
        self._y = 1.0 / (1.0 + np.exp(-x))
        return self._y

    def backward(self, gy):
        return gy * self._y * (1.0 - self._y)
