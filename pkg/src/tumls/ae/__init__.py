"""Convolutional autoencoder: model, training loop and checkpoints."""

from tumls.ae.checkpoint import load_checkpoint, save_checkpoint
from tumls.ae.model import Autoencoder, embed, loss_mse
from tumls.ae.optim import Adam
from tumls.ae.train import TrainConfig, TrainHistory, train

__all__ = [
    "Adam",
    "Autoencoder",
    "TrainConfig",
    "TrainHistory",
    "embed",
    "load_checkpoint",
    "loss_mse",
    "save_checkpoint",
    "train",
]
