"""Backend selection for the hot kernels.

The compiled extension ``_ckernels`` is used when it imports; otherwise the
numpy module ``_pykernels`` is used. Setting ``HYPERSERIES_PURE=1`` forces the
numpy backend.
"""

import os

import numpy as np

from . import _pykernels

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

if _ckernels is not None and not os.environ.get("HYPERSERIES_PURE"):
    _impl = _ckernels
    BACKEND = "cython"
else:
    _impl = _pykernels
    BACKEND = "python"


def available_backends():
    return ["python"] + (["cython"] if _ckernels is not None else [])


def get_backend(name):
    if name == "python":
        return _pykernels
    if name == "cython":
        if _ckernels is None:
            raise ImportError("compiled kernels are not built")
        return _ckernels
    raise ValueError(f"unknown backend {name!r}")


def mul(a, b, idx, sgn):
    return _impl.mul(np.ascontiguousarray(a, dtype=float), np.ascontiguousarray(b, dtype=float), idx, sgn)


def mul_batch(a, b, idx, sgn):
    return _impl.mul_batch(np.ascontiguousarray(a, dtype=float), np.ascontiguousarray(b, dtype=float), idx, sgn)


def stem_horner(coeffs, z):
    return _impl.stem_horner(
        np.ascontiguousarray(coeffs, dtype=float), np.ascontiguousarray(z, dtype=complex)
    )
