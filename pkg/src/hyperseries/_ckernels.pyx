# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels for signed-permutation structure tables and stem Horner sums."""

import numpy as np

cimport numpy as cnp

cnp.import_array()


def mul(const double[::1] a, const double[::1] b,
        const cnp.intp_t[:, ::1] idx, const double[:, ::1] sgn):
    cdef Py_ssize_t d = a.shape[0], i, j
    cdef double ai
    out = np.zeros(d)
    cdef double[::1] o = out
    for i in range(d):
        ai = a[i]
        if ai == 0.0:
            continue
        for j in range(d):
            o[idx[i, j]] += sgn[i, j] * ai * b[j]
    return out


def mul_batch(const double[:, ::1] a, const double[:, ::1] b,
              const cnp.intp_t[:, ::1] idx, const double[:, ::1] sgn):
    cdef Py_ssize_t n = a.shape[0], d = a.shape[1], r, i, j
    cdef double ai
    out = np.zeros((n, d))
    cdef double[:, ::1] o = out
    with nogil:
        for r in range(n):
            for i in range(d):
                ai = a[r, i]
                if ai == 0.0:
                    continue
                for j in range(d):
                    o[r, idx[i, j]] += sgn[i, j] * ai * b[r, j]
    return out


def stem_horner(const double[:, :, ::1] coeffs, const double complex[::1] z):
    """Evaluate F(z) = sum_k z**k (c1_k + i c2_k) at every z; returns (F1, F2)."""
    cdef Py_ssize_t K = coeffs.shape[0], d = coeffs.shape[2], m = z.shape[0]
    cdef Py_ssize_t r, k, c
    cdef double p, q, f1, f2
    out1 = np.zeros((m, d))
    out2 = np.zeros((m, d))
    cdef double[:, ::1] o1 = out1
    cdef double[:, ::1] o2 = out2
    if K == 0:
        return out1, out2
    with nogil:
        for r in range(m):
            p = z[r].real
            q = z[r].imag
            for c in range(d):
                f1 = coeffs[K - 1, 0, c]
                f2 = coeffs[K - 1, 1, c]
                for k in range(K - 2, -1, -1):
                    f1, f2 = p * f1 - q * f2 + coeffs[k, 0, c], q * f1 + p * f2 + coeffs[k, 1, c]
                o1[r, c] = f1
                o2[r, c] = f2
    return out1, out2
