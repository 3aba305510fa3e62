# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled implementations of the hot numerical kernels.

Mirrors ``tumls.kernels.numpy_ops``; see that module for the contracts.
The Otsu scan follows the exact accumulation order of the NumPy backend so
the two produce bit-identical results.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()


def conv2d_forward(x, w, b, int stride=2, int pad=1):
    x = np.ascontiguousarray(x, dtype=np.float64)
    w = np.ascontiguousarray(w, dtype=np.float64)
    b = np.ascontiguousarray(b, dtype=np.float64)
    cdef double[:, :, :, ::1] xv = x
    cdef double[:, :, :, ::1] wv = w
    cdef double[::1] bv = b
    cdef Py_ssize_t n = xv.shape[0], c = xv.shape[1], h = xv.shape[2], wd = xv.shape[3]
    cdef Py_ssize_t f = wv.shape[0], kh = wv.shape[2], kw = wv.shape[3]
    if wv.shape[1] != c:
        raise ValueError("channel mismatch")
    cdef Py_ssize_t oh = (h + 2 * pad - kh) // stride + 1
    cdef Py_ssize_t ow = (wd + 2 * pad - kw) // stride + 1
    y = np.empty((n, f, oh, ow), dtype=np.float64)
    cdef double[:, :, :, ::1] yv = y
    cdef Py_ssize_t ni, fi, ci, i, j, u, v, yy, xx
    cdef double acc
    with nogil:
        for ni in range(n):
            for fi in range(f):
                for i in range(oh):
                    for j in range(ow):
                        acc = bv[fi]
                        for ci in range(c):
                            for u in range(kh):
                                yy = i * stride + u - pad
                                if yy < 0 or yy >= h:
                                    continue
                                for v in range(kw):
                                    xx = j * stride + v - pad
                                    if xx < 0 or xx >= wd:
                                        continue
                                    acc += xv[ni, ci, yy, xx] * wv[fi, ci, u, v]
                        yv[ni, fi, i, j] = acc
    return y


def conv2d_backward(x, w, gy, int stride=2, int pad=1):
    x = np.ascontiguousarray(x, dtype=np.float64)
    w = np.ascontiguousarray(w, dtype=np.float64)
    gy = np.ascontiguousarray(gy, dtype=np.float64)
    cdef double[:, :, :, ::1] xv = x
    cdef double[:, :, :, ::1] wv = w
    cdef double[:, :, :, ::1] gyv = gy
    cdef Py_ssize_t n = xv.shape[0], c = xv.shape[1], h = xv.shape[2], wd = xv.shape[3]
    cdef Py_ssize_t f = wv.shape[0], kh = wv.shape[2], kw = wv.shape[3]
    cdef Py_ssize_t oh = gyv.shape[2], ow = gyv.shape[3]
    gx = np.zeros((n, c, h, wd), dtype=np.float64)
    gw = np.zeros((f, c, kh, kw), dtype=np.float64)
    gb = np.zeros(f, dtype=np.float64)
    cdef double[:, :, :, ::1] gxv = gx
    cdef double[:, :, :, ::1] gwv = gw
    cdef double[::1] gbv = gb
    cdef Py_ssize_t ni, fi, ci, i, j, u, v, yy, xx
    cdef double g
    with nogil:
        for ni in range(n):
            for fi in range(f):
                for i in range(oh):
                    for j in range(ow):
                        g = gyv[ni, fi, i, j]
                        gbv[fi] += g
                        for ci in range(c):
                            for u in range(kh):
                                yy = i * stride + u - pad
                                if yy < 0 or yy >= h:
                                    continue
                                for v in range(kw):
                                    xx = j * stride + v - pad
                                    if xx < 0 or xx >= wd:
                                        continue
                                    gwv[fi, ci, u, v] += g * xv[ni, ci, yy, xx]
                                    gxv[ni, ci, yy, xx] += g * wv[fi, ci, u, v]
    return gx, gw, gb


def conv_transpose2d_forward(x, w, b, int stride=2, int pad=1, int out_pad=1):
    if out_pad >= stride:
        raise ValueError("out_pad must be < stride")
    x = np.ascontiguousarray(x, dtype=np.float64)
    w = np.ascontiguousarray(w, dtype=np.float64)
    b = np.ascontiguousarray(b, dtype=np.float64)
    cdef double[:, :, :, ::1] xv = x
    cdef double[:, :, :, ::1] wv = w
    cdef double[::1] bv = b
    cdef Py_ssize_t n = xv.shape[0], cin = xv.shape[1], ih = xv.shape[2], iw = xv.shape[3]
    cdef Py_ssize_t cout = wv.shape[1], kh = wv.shape[2], kw = wv.shape[3]
    if wv.shape[0] != cin:
        raise ValueError("channel mismatch")
    cdef Py_ssize_t oh = (ih - 1) * stride + kh + out_pad - 2 * pad
    cdef Py_ssize_t ow = (iw - 1) * stride + kw + out_pad - 2 * pad
    y = np.empty((n, cout, oh, ow), dtype=np.float64)
    cdef double[:, :, :, ::1] yv = y
    cdef Py_ssize_t ni, fi, ci, i, j, u, v, ii, rem
    cdef double acc
    # y[o] = sum over (i, u) with i*stride + u == o + pad
    with nogil:
        for ni in range(n):
            for fi in range(cout):
                for i in range(oh):
                    for j in range(ow):
                        acc = bv[fi]
                        for ci in range(cin):
                            for u in range(kh):
                                rem = i + pad - u
                                if rem < 0 or rem % stride != 0:
                                    continue
                                ii = rem // stride
                                if ii >= ih:
                                    continue
                                for v in range(kw):
                                    rem = j + pad - v
                                    if rem < 0 or rem % stride != 0:
                                        continue
                                    if rem // stride >= iw:
                                        continue
                                    acc += xv[ni, ci, ii, rem // stride] * wv[ci, fi, u, v]
                        yv[ni, fi, i, j] = acc
    return y


def conv_transpose2d_backward(x, w, gy, int stride=2, int pad=1, int out_pad=1):
    x = np.ascontiguousarray(x, dtype=np.float64)
    w = np.ascontiguousarray(w, dtype=np.float64)
    gy = np.ascontiguousarray(gy, dtype=np.float64)
    cdef double[:, :, :, ::1] xv = x
    cdef double[:, :, :, ::1] wv = w
    cdef double[:, :, :, ::1] gyv = gy
    cdef Py_ssize_t n = xv.shape[0], cin = xv.shape[1], ih = xv.shape[2], iw = xv.shape[3]
    cdef Py_ssize_t cout = wv.shape[1], kh = wv.shape[2], kw = wv.shape[3]
    cdef Py_ssize_t oh = gyv.shape[2], ow = gyv.shape[3]
    gx = np.zeros((n, cin, ih, iw), dtype=np.float64)
    gw = np.zeros((cin, cout, kh, kw), dtype=np.float64)
    gb = np.zeros(cout, dtype=np.float64)
    cdef double[:, :, :, ::1] gxv = gx
    cdef double[:, :, :, ::1] gwv = gw
    cdef double[::1] gbv = gb
    cdef Py_ssize_t ni, fi, ci, i, j, u, v, oi, oj
    cdef double g
    with nogil:
        for ni in range(n):
            for fi in range(cout):
                for i in range(oh):
                    for j in range(ow):
                        gbv[fi] += gyv[ni, fi, i, j]
        # scatter relation: output position (i*stride + u - pad, j*stride + v - pad)
        for ni in range(n):
            for ci in range(cin):
                for i in range(ih):
                    for j in range(iw):
                        for fi in range(cout):
                            for u in range(kh):
                                oi = i * stride + u - pad
                                if oi < 0 or oi >= oh:
                                    continue
                                for v in range(kw):
                                    oj = j * stride + v - pad
                                    if oj < 0 or oj >= ow:
                                        continue
                                    g = gyv[ni, fi, oi, oj]
                                    gxv[ni, ci, i, j] += g * wv[ci, fi, u, v]
                                    gwv[ci, fi, u, v] += g * xv[ni, ci, i, j]
    return gx, gw, gb


def glcm_counts(q, int levels, int dx=1, int dy=0):
    q = np.ascontiguousarray(q, dtype=np.int64)
    cdef long long[:, ::1] qv = q
    cdef Py_ssize_t h = qv.shape[0], wd = qv.shape[1]
    counts = np.zeros((levels, levels), dtype=np.float64)
    cdef double[:, ::1] cv = counts
    cdef Py_ssize_t y, x
    cdef long long a, b
    for y in range(h):
        if y + dy < 0 or y + dy >= h:
            continue
        for x in range(wd):
            if x + dx < 0 or x + dx >= wd:
                continue
            a = qv[y, x]
            b = qv[y + dy, x + dx]
            if a < 0 or a >= levels or b < 0 or b >= levels:
                raise ValueError("quantized values out of range")
            cv[a, b] += 1.0
            cv[b, a] += 1.0
    return counts


def otsu3_scan(counts):
    counts = np.ascontiguousarray(counts, dtype=np.float64)
    if counts.shape[0] != 256 or counts.ndim != 1:
        raise ValueError("expected a 256-bin histogram")
    cdef double total = float(np.sum(counts))
    if total <= 0:
        raise ValueError("empty histogram")
    cdef double[::1] cnts = counts
    cdef double[::1] cw = np.empty(256, dtype=np.float64)
    cdef double[::1] cm = np.empty(256, dtype=np.float64)
    cdef Py_ssize_t g
    cdef double accw = 0.0, accm = 0.0, p
    for g in range(256):
        p = cnts[g] / total
        accw = accw + p
        accm = accm + g * p
        cw[g] = accw
        cm[g] = accm
    cdef double wt = cw[255], mt = cm[255]
    cdef double mu = mt / wt
    cdef Py_ssize_t t1, t2, bt1 = -1, bt2 = -1
    cdef double w0, w1, w2, m0, m1, m2, d, var, best = -1.0
    with nogil:
        for t1 in range(1, 254):
            for t2 in range(t1 + 1, 255):
                w0 = cw[t1]
                w1 = cw[t2] - cw[t1]
                w2 = wt - cw[t2]
                m0 = cm[t1]
                m1 = cm[t2] - cm[t1]
                m2 = mt - cm[t2]
                var = 0.0
                if w0 > 0:
                    d = m0 / w0 - mu
                    var = var + w0 * d * d
                if w1 > 0:
                    d = m1 / w1 - mu
                    var = var + w1 * d * d
                if w2 > 0:
                    d = m2 / w2 - mu
                    var = var + w2 * d * d
                if var > best:
                    best = var
                    bt1 = t1
                    bt2 = t2
    return int(bt1), int(bt2), best
