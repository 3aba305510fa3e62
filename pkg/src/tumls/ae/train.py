"""Training loop: Adam, seeded shuffling, early stopping on validation MSE."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from tumls.ae.model import Autoencoder, loss_mse
from tumls.ae.optim import Adam
from tumls.errors import ConfigError, NumericError


@dataclass
class TrainConfig:
    batch_size: int = 128
    learning_rate: float = 0.001
    weight_decay: float = 1e-5
    beta1: float = 0.9
    beta2: float = 0.999
    eps: float = 1e-8
    early_stop_patience: int = 10
    max_epochs: int = 100
    rng_seed: int = 0

    def validate(self):
        if self.batch_size < 1 or self.max_epochs < 1:
            raise ConfigError("batch_size and max_epochs must be positive")
        if self.learning_rate <= 0 or self.eps <= 0:
            raise ConfigError("learning_rate and eps must be positive")
        if self.weight_decay < 0:
            raise ConfigError("weight_decay must be non-negative")
        if self.early_stop_patience < 1:
            raise ConfigError("early_stop_patience must be >= 1")


@dataclass
class TrainHistory:
    train_mse: list = field(default_factory=list)
    valid_mse: list = field(default_factory=list)
    best_epoch: int = 0  # 1-indexed
    stopped_epoch: int = 0

    def to_dict(self):
        return {
            "train_mse": self.train_mse,
            "valid_mse": self.valid_mse,
            "best_epoch": self.best_epoch,
            "stopped_epoch": self.stopped_epoch,
        }


def _dataset_mse(model, data, chunk=512):
    total = 0.0
    for start in range(0, data.shape[0], chunk):
        batch = data[start:start + chunk]
        recon, _ = model.forward(batch)
        d = recon - batch
        total += float(np.sum(d * d))
    return total / data.size


def train(model: Autoencoder, train_set, valid_set, cfg: TrainConfig):
    """Train in place and return ``(model, history)``.

    The model keeps the parameters of the epoch with the best validation
    MSE. Training stops once validation has not improved for
    ``early_stop_patience`` consecutive epochs, or at ``max_epochs``.
    """
    cfg.validate()
    train_set = np.asarray(train_set, dtype=np.float64)
    valid_set = np.asarray(valid_set, dtype=np.float64)
    if train_set.shape[0] == 0 or valid_set.shape[0] == 0:
        raise ConfigError("training and validation sets must be non-empty")

    model.input_mean = train_set.mean(axis=(0, 2, 3))
    model.input_std = np.maximum(train_set.std(axis=(0, 2, 3)), 1e-6)

    rng = np.random.default_rng(cfg.rng_seed)
    params = [arr for _, arr in model.named_params()]
    opt = Adam(params, lr=cfg.learning_rate, betas=(cfg.beta1, cfg.beta2),
               eps=cfg.eps, weight_decay=cfg.weight_decay)
    batch = min(cfg.batch_size, train_set.shape[0])

    history = TrainHistory()
    best_val = np.inf
    best_params = model.copy_params()

    for epoch in range(1, cfg.max_epochs + 1):
        order = rng.permutation(train_set.shape[0])
        losses = []
        for start in range(0, len(order), batch):
            xb = train_set[order[start:start + batch]]
            model.zero_grad()
            loss, _ = model.backward(xb)
            if not np.isfinite(loss):
                raise NumericError("training diverged")
            opt.step([g for _, g in model.named_grads()])
            losses.append(loss)
        history.train_mse.append(float(np.mean(losses)))

        val = _dataset_mse(model, valid_set)
        if not np.isfinite(val):
            raise NumericError("training diverged")
        history.valid_mse.append(val)
        if val < best_val:
            best_val = val
            history.best_epoch = epoch
            best_params = model.copy_params()
        history.stopped_epoch = epoch
        if epoch - history.best_epoch >= cfg.early_stop_patience:
            break

    model.set_params(best_params)
    return model, history
