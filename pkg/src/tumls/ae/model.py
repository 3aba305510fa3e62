"""The patch autoencoder.

Encoder: three 3x3 stride-2 convolutions (3 -> 16 -> 32 -> 64 channels),
each followed by ReLU, mapping a 16x16x3 patch to a 2x2x64 code that is
flattened into a 256-element latent vector. Decoder mirrors the encoder
with transposed convolutions (64 -> 32 -> 16 -> 3) and a final sigmoid, so
reconstructions live in [0, 1].

Inputs are RGB patches scaled to [0, 1]; the model standardizes them per
channel with statistics fixed at training time (stored with the model), so
inference is stateless.
"""

from __future__ import annotations

import numpy as np

from tumls.ae.layers import Conv2d, ConvTranspose2d, ReLU, Sigmoid

INPUT_SIZE = 16
LATENT_DIM = 256
_CHANNELS = (3, 16, 32, 64)


def loss_mse(recon, target):
    """Mean squared error over all elements: (1/n) * sum((y - yhat)^2)."""
    recon = np.asarray(recon, dtype=np.float64)
    target = np.asarray(target, dtype=np.float64)
    if recon.shape != target.shape:
        raise ValueError(f"shape mismatch {recon.shape} vs {target.shape}")
    d = recon - target
    return float(np.mean(d * d))


class Autoencoder:
    def __init__(self, seed=0):
        rng = np.random.default_rng(seed)
        cs = _CHANNELS
        self.encoder = []
        for cin, cout in zip(cs[:-1], cs[1:]):
            self.encoder += [Conv2d(cin, cout, rng=rng), ReLU()]
        self.decoder = []
        rev = cs[::-1]
        for i, (cin, cout) in enumerate(zip(rev[:-1], rev[1:])):
            self.decoder.append(ConvTranspose2d(cin, cout, rng=rng))
            self.decoder.append(Sigmoid() if i == len(cs) - 2 else ReLU())
        self.input_mean = np.zeros(3)
        self.input_std = np.ones(3)

    # -- parameter plumbing ------------------------------------------------

    def _layer_items(self):
        for i, layer in enumerate(self.encoder):
            yield f"encoder.{i}", layer
        for i, layer in enumerate(self.decoder):
            yield f"decoder.{i}", layer

    def named_params(self):
        out = []
        for prefix, layer in self._layer_items():
            for name, arr in layer.params():
                out.append((f"{prefix}.{name}", arr))
        return out

    def named_grads(self):
        out = []
        for prefix, layer in self._layer_items():
            for name, arr in layer.grads():
                out.append((f"{prefix}.{name}", arr))
        return out

    def zero_grad(self):
        for _, layer in self._layer_items():
            layer.zero_grad()

    def copy_params(self):
        return [arr.copy() for _, arr in self.named_params()]

    def set_params(self, arrays):
        own = self.named_params()
        if len(arrays) != len(own):
            raise ValueError("parameter count mismatch")
        for (_, dst), src in zip(own, arrays):
            if dst.shape != src.shape:
                raise ValueError("parameter shape mismatch")
            dst[...] = src

    # -- computation -------------------------------------------------------

    def _standardize(self, x):
        mean = self.input_mean[None, :, None, None]
        std = self.input_std[None, :, None, None]
        return (x - mean) / std

    def _check_input(self, x):
        x = np.asarray(x, dtype=np.float64)
        if x.ndim != 4 or x.shape[1] != 3 or x.shape[2] != INPUT_SIZE or x.shape[3] != INPUT_SIZE:
            raise ValueError(
                f"expected input of shape (n, 3, {INPUT_SIZE}, {INPUT_SIZE}), got {x.shape}")
        return x

    def encode(self, x):
        h = self._standardize(self._check_input(x))
        for layer in self.encoder:
            h = layer.forward(h)
        return h

    def forward(self, x):
        """Return (reconstructions, latents) for a batch in [0, 1]."""
        code = self.encode(x)
        latents = code.reshape(code.shape[0], -1)
        h = code
        for layer in self.decoder:
            h = layer.forward(h)
        return h, latents

    def backward(self, x, target=None):
        """Forward + backprop of the MSE loss; returns (loss, recon).

        Gradients accumulate in the layers; call :meth:`zero_grad` between
        steps. ``target`` defaults to the input (reconstruction task).
        """
        x = self._check_input(x)
        target = x if target is None else np.asarray(target, dtype=np.float64)
        recon, _ = self.forward(x)
        loss = loss_mse(recon, target)
        g = (2.0 / recon.size) * (recon - target)
        for layer in reversed(self.decoder):
            g = layer.backward(g)
        for layer in reversed(self.encoder):
            g = layer.backward(g)
        return loss, recon


def embed(model, patches, chunk=512):
    """Encode patches into latent vectors, preserving order.

    ``patches`` is an (n, 3, 16, 16) array in [0, 1]; returns (n, 256).
    """
    patches = np.asarray(patches, dtype=np.float64)
    out = np.empty((patches.shape[0], LATENT_DIM))
    for start in range(0, patches.shape[0], chunk):
        code = model.encode(patches[start:start + chunk])
        out[start:start + code.shape[0]] = code.reshape(code.shape[0], -1)
    return out
