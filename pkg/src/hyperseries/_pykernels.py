"""Numpy implementations of the compiled kernels (same signatures)."""

from functools import lru_cache

import numpy as np


@lru_cache(maxsize=16)
def _product_matrix(idx_bytes, sgn_bytes, d):
    idx = np.frombuffer(idx_bytes, dtype=np.intp).reshape(d, d)
    sgn = np.frombuffer(sgn_bytes, dtype=np.float64).reshape(d, d)
    P = np.zeros((d * d, d))
    P[np.arange(d * d), idx.ravel()] = sgn.ravel()
    return P


def _matrix(idx, sgn):
    d = idx.shape[0]
    return _product_matrix(idx.tobytes(), sgn.tobytes(), d)


def mul(a, b, idx, sgn):
    d = a.shape[0]
    return np.bincount(idx.ravel(), weights=(sgn * np.outer(a, b)).ravel(), minlength=d)


def mul_batch(a, b, idx, sgn):
    n, d = a.shape
    outer = (a[:, :, None] * b[:, None, :]).reshape(n, d * d)
    return outer @ _matrix(idx, sgn)


def stem_horner(coeffs, z):
    """Evaluate F(z) = sum_k z**k (c1_k + i c2_k) at every z; returns (F1, F2)."""
    K, _, d = coeffs.shape
    m = z.shape[0]
    if K == 0:
        return np.zeros((m, d)), np.zeros((m, d))
    # complex view: the i of A (x) C is a central scalar, so Horner runs in C^d
    c = coeffs[:, 0, :] + 1j * coeffs[:, 1, :]
    acc = np.broadcast_to(c[-1], (m, d)).astype(complex)
    zc = z[:, None]
    for k in range(K - 2, -1, -1):
        acc = acc * zc + c[k]
    return np.ascontiguousarray(acc.real), np.ascontiguousarray(acc.imag)
