"""Numerical kernels with a compiled core and a NumPy fallback.

At import time the compiled extension (``tumls.kernels._native``, built from
``_native.pyx``) is preferred; if it is unavailable, or if the environment
variable ``TUMLS_FORCE_NUMPY`` is set to a non-empty value, the pure NumPy
implementations are used instead. Both backends implement the same contracts
and are cross-checked by the test suite.

``BACKEND`` names the active backend ("native" or "numpy").
"""

from __future__ import annotations

import os

from tumls.kernels import numpy_ops

_IMPL = numpy_ops
BACKEND = "numpy"

if not os.environ.get("TUMLS_FORCE_NUMPY"):
    try:
        from tumls.kernels import _native  # type: ignore[attr-defined]

        _IMPL = _native
        BACKEND = "native"
    except ImportError:
        pass


def available_backends():
    """Names of the backends importable in this environment."""
    names = ["numpy"]
    try:
        from tumls.kernels import _native  # noqa: F401

        names.insert(0, "native")
    except ImportError:
        pass
    return names


def get_backend(name):
    """Return the backend module by name ("native" or "numpy")."""
    if name == "numpy":
        return numpy_ops
    if name == "native":
        from tumls.kernels import _native

        return _native
    raise ValueError(f"unknown backend {name!r}")


conv2d_forward = _IMPL.conv2d_forward
conv2d_backward = _IMPL.conv2d_backward
conv_transpose2d_forward = _IMPL.conv_transpose2d_forward
conv_transpose2d_backward = _IMPL.conv_transpose2d_backward
glcm_counts = _IMPL.glcm_counts
otsu3_scan = _IMPL.otsu3_scan

__all__ = [
    "BACKEND",
    "available_backends",
    "get_backend",
    "conv2d_forward",
    "conv2d_backward",
    "conv_transpose2d_forward",
    "conv_transpose2d_backward",
    "glcm_counts",
    "otsu3_scan",
]
