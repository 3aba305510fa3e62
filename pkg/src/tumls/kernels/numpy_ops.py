"""NumPy implementations of the hot numerical kernels.

This is the reference backend; ``tumls.kernels._native`` mirrors every
function here with compiled loops. The Otsu scan is written so that both
backends produce bit-identical results (same accumulation order), which the
kernel test suite asserts.

All convolution kernels operate on float64 NCHW tensors. Weight layouts
follow the usual convention: ``(out_ch, in_ch, kh, kw)`` for forward
convolution and ``(in_ch, out_ch, kh, kw)`` for transposed convolution.
"""

from __future__ import annotations

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view


def _check_nchw(x: np.ndarray) -> np.ndarray:
    if x.ndim != 4:
        raise ValueError(f"expected a 4-d NCHW tensor, got shape {x.shape}")
    return np.ascontiguousarray(x, dtype=np.float64)


def conv2d_forward(x, w, b, stride=2, pad=1):
    """Strided 2-d convolution with zero padding.

    out[n,f,i,j] = b[f] + sum_{c,u,v} x[n,c,i*s+u-pad,j*s+v-pad] * w[f,c,u,v]
    """
    x = _check_nchw(x)
    n, c, h, wd = x.shape
    f, c2, kh, kw = w.shape
    if c != c2:
        raise ValueError(f"channel mismatch: input {c}, weight {c2}")
    oh = (h + 2 * pad - kh) // stride + 1
    ow = (wd + 2 * pad - kw) // stride + 1
    xp = np.pad(x, ((0, 0), (0, 0), (pad, pad), (pad, pad)))
    win = sliding_window_view(xp, (kh, kw), axis=(2, 3))[:, :, ::stride, ::stride]
    # (n, oh, ow, f) <- contract over (c, kh, kw)
    y = np.tensordot(win, w, axes=([1, 4, 5], [1, 2, 3]))
    y = np.ascontiguousarray(y.transpose(0, 3, 1, 2)) + b[None, :, None, None]
    assert y.shape == (n, f, oh, ow)
    return y


def conv2d_backward(x, w, gy, stride=2, pad=1):
    """Gradients of :func:`conv2d_forward` w.r.t. input, weight and bias."""
    x = _check_nchw(x)
    gy = _check_nchw(gy)
    n, c, h, wd = x.shape
    f, _, kh, kw = w.shape
    oh, ow = gy.shape[2], gy.shape[3]
    xp = np.pad(x, ((0, 0), (0, 0), (pad, pad), (pad, pad)))
    win = sliding_window_view(xp, (kh, kw), axis=(2, 3))[:, :, ::stride, ::stride]

    gw = np.tensordot(gy, win, axes=([0, 2, 3], [0, 2, 3]))  # (f, c, kh, kw)
    gb = gy.sum(axis=(0, 2, 3))

    gcol = np.tensordot(gy, w, axes=([1], [0]))  # (n, oh, ow, c, kh, kw)
    gxp = np.zeros_like(xp)
    for u in range(kh):
        for v in range(kw):
            gxp[:, :, u:u + stride * oh:stride, v:v + stride * ow:stride] += \
                gcol[:, :, :, :, u, v].transpose(0, 3, 1, 2)
    gx = gxp[:, :, pad:pad + h, pad:pad + wd]
    return np.ascontiguousarray(gx), np.ascontiguousarray(gw), gb


def conv_transpose2d_forward(x, w, b, stride=2, pad=1, out_pad=1):
    """Strided transposed convolution (the adjoint of conv2d_forward).

    Output spatial size is ``(in - 1) * stride - 2 * pad + k + out_pad``;
    ``out_pad`` must be smaller than ``stride``.
    """
    x = _check_nchw(x)
    if out_pad >= stride:
        raise ValueError("out_pad must be < stride")
    n, cin, ih, iw = x.shape
    cin2, cout, kh, kw = w.shape
    if cin != cin2:
        raise ValueError(f"channel mismatch: input {cin}, weight {cin2}")
    fh = (ih - 1) * stride + kh + out_pad
    fw = (iw - 1) * stride + kw + out_pad
    oh = fh - 2 * pad
    ow = fw - 2 * pad
    prod = np.tensordot(x, w, axes=([1], [0]))  # (n, ih, iw, cout, kh, kw)
    yfull = np.zeros((n, cout, fh, fw))
    for u in range(kh):
        for v in range(kw):
            yfull[:, :, u:u + stride * ih:stride, v:v + stride * iw:stride] += \
                prod[:, :, :, :, u, v].transpose(0, 3, 1, 2)
    y = yfull[:, :, pad:pad + oh, pad:pad + ow] + b[None, :, None, None]
    return np.ascontiguousarray(y)


def conv_transpose2d_backward(x, w, gy, stride=2, pad=1, out_pad=1):
    """Gradients of :func:`conv_transpose2d_forward`."""
    x = _check_nchw(x)
    gy = _check_nchw(gy)
    n, cin, ih, iw = x.shape
    _, cout, kh, kw = w.shape
    oh, ow = gy.shape[2], gy.shape[3]
    fh = (ih - 1) * stride + kh + out_pad
    fw = (iw - 1) * stride + kw + out_pad
    gyfull = np.zeros((n, cout, fh, fw))
    gyfull[:, :, pad:pad + oh, pad:pad + ow] = gy
    win = sliding_window_view(gyfull, (kh, kw), axis=(2, 3))[:, :, ::stride, ::stride]
    win = win[:, :, :ih, :iw]  # (n, cout, ih, iw, kh, kw)

    gx = np.tensordot(win, w, axes=([1, 4, 5], [1, 2, 3]))  # (n, ih, iw, cin)
    gx = np.ascontiguousarray(gx.transpose(0, 3, 1, 2))
    gw = np.tensordot(x, win, axes=([0, 2, 3], [0, 2, 3]))  # (cin, cout, kh, kw)
    gb = gy.sum(axis=(0, 2, 3))
    return gx, np.ascontiguousarray(gw), gb


def glcm_counts(q, levels, dx=1, dy=0):
    """Symmetric co-occurrence counts of a quantized image for one offset.

    Every in-bounds pixel pair ``(p, p+offset)`` contributes to both
    ``counts[a, b]`` and ``counts[b, a]``.
    """
    q = np.asarray(q)
    if q.ndim != 2:
        raise ValueError("quantized image must be 2-d")
    h, wd = q.shape
    y0, y1 = max(0, -dy), min(h, h - dy)
    x0, x1 = max(0, -dx), min(wd, wd - dx)
    if y1 <= y0 or x1 <= x0:
        return np.zeros((levels, levels))
    a = q[y0:y1, x0:x1].astype(np.int64).ravel()
    b = q[y0 + dy:y1 + dy, x0 + dx:x1 + dx].astype(np.int64).ravel()
    if a.size and (a.min() < 0 or a.max() >= levels or b.min() < 0 or b.max() >= levels):
        raise ValueError("quantized values out of range")
    counts = np.bincount(a * levels + b, minlength=levels * levels)
    counts = counts.reshape(levels, levels).astype(np.float64)
    return counts + counts.T


def otsu3_scan(counts):
    """Exhaustive three-class Otsu threshold search over a 256-bin histogram.

    Classes are ``g <= t1``, ``t1 < g <= t2`` and ``g > t2`` with
    ``1 <= t1 < t2 <= 254``. Returns the pair maximizing the between-class
    variance computed from cumulative histogram moments; ties are broken
    toward the lexicographically smallest ``(t1, t2)``. Empty classes
    contribute zero variance.
    """
    counts = np.asarray(counts, dtype=np.float64)
    if counts.shape != (256,):
        raise ValueError("expected a 256-bin histogram")
    total = counts.sum()
    if total <= 0:
        raise ValueError("empty histogram")
    p = counts / total
    cw = np.cumsum(p)
    cm = np.cumsum(np.arange(256, dtype=np.float64) * p)
    wt = cw[255]
    mt = cm[255]
    mu = mt / wt

    t1 = np.arange(256)[:, None]
    t2 = np.arange(256)[None, :]
    w0 = np.broadcast_to(cw[:, None], (256, 256))
    w1 = cw[None, :] - cw[:, None]
    w2 = wt - cw[None, :]
    m0 = np.broadcast_to(cm[:, None], (256, 256))
    m1 = cm[None, :] - cm[:, None]
    m2 = mt - cm[None, :]

    def term(wk, mk):
        muk = np.where(wk > 0, mk / np.where(wk > 0, wk, 1.0), mu)
        return wk * (muk - mu) ** 2

    var = term(w0, m0) + term(w1, m1) + term(w2, m2)
    valid = (t1 >= 1) & (t2 <= 254) & (t2 > t1)
    var = np.where(valid, var, -1.0)
    best = float(var.max())
    i, j = np.argwhere(var == best)[0]  # argwhere rows are in (t1, t2) lex order
    return int(i), int(j), best
