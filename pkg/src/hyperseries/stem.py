"""Polynomial stem functions and the slice functions they induce.

A stem polynomial is F(z) = sum_k z**k (c1_k + i c2_k) with c1_k, c2_k in A and
z a central complex variable. It is stored as a float array of shape
(K, 2, d). F is evaluated on the closed upper half plane and extended to the
lower half by the stem reflection F(conj z) = conj F(z). The induced slice
function is f(alpha + beta J) = F1(alpha + i beta) + J F2(alpha + i beta).
"""

from __future__ import annotations

import json
import warnings

import numpy as np

from . import kernels
from .algebra import (
    DEFAULT_TOL,
    AlgebraElement,
    AlgebraSpec,
    ConePoint,
    InvalidArgumentError,
    SpecMismatchError,
    as_cone_point,
    is_unit_imaginary,
)


class StemWarning(UserWarning):
    """The imaginary stem component is nonzero on the real axis and was dropped."""


class StemPolynomial:
    """F(z) = sum_k z**k (c1_k + i c2_k) with coefficients in A."""

    def __init__(self, spec: AlgebraSpec, coeffs):
        c = np.array(coeffs, dtype=float)
        if c.ndim != 3 or c.shape[1:] != (2, spec.dim):
            raise InvalidArgumentError(f"stem coefficients must have shape (K, 2, {spec.dim})")
        if c.shape[0] == 0:
            c = np.zeros((1, 2, spec.dim))
        c.setflags(write=False)
        self.spec = spec
        self.coeffs = c

    # -- construction -----------------------------------------------------
    @classmethod
    def from_pairs(cls, spec, pairs):
        """Build from a list of (c1_k, c2_k); entries may be elements, arrays or None."""
        arr = np.zeros((len(pairs), 2, spec.dim))
        for k, (a, b) in enumerate(pairs):
            arr[k, 0] = _coords(spec, a)
            arr[k, 1] = _coords(spec, b)
        return cls(spec, arr)

    @classmethod
    def from_a_coefficients(cls, spec, coeffs):
        """Stem sum_k z**k a_k with a_k in A (so c2 = 0)."""
        arr = np.zeros((len(coeffs), 2, spec.dim))
        for k, a in enumerate(coeffs):
            arr[k, 0] = _coords(spec, a)
        return cls(spec, arr)

    @classmethod
    def constant(cls, spec, c1, c2=None):
        return cls.from_pairs(spec, [(c1, c2)])

    @classmethod
    def monomial(cls, spec, n, a=None):
        arr = np.zeros((n + 1, 2, spec.dim))
        arr[n, 0] = _coords(spec, a) if a is not None else spec.one().coords
        return cls(spec, arr)

    @classmethod
    def linear(cls, spec, y):
        """Stem z - y of the slice function x - y."""
        yc = _coords(spec, y)
        arr = np.zeros((2, 2, spec.dim))
        arr[0, 0] = -yc
        arr[1, 0, 0] = 1.0
        return cls(spec, arr)

    # -- basic properties -------------------------------------------------
    @property
    def degree(self) -> int:
        nz = np.flatnonzero(np.any(self.coeffs != 0, axis=(1, 2)))
        return int(nz[-1]) if len(nz) else 0

    def coefficient(self, k):
        """(c1_k, c2_k) as algebra elements (zero beyond the stored length)."""
        if k >= self.coeffs.shape[0]:
            return self.spec.zero(), self.spec.zero()
        return AlgebraElement(self.coeffs[k, 0], self.spec), AlgebraElement(self.coeffs[k, 1], self.spec)

    def trimmed(self):
        return StemPolynomial(self.spec, self.coeffs[: self.degree + 1])

    def is_a_valued(self, tol=0.0):
        """True when every c2_k vanishes (the stem of an A-coefficient polynomial)."""
        return bool(np.max(np.abs(self.coeffs[:, 1]), initial=0.0) <= tol)

    def __add__(self, other):
        _same(self, other)
        K = max(self.coeffs.shape[0], other.coeffs.shape[0])
        out = np.zeros((K, 2, self.spec.dim))
        out[: self.coeffs.shape[0]] += self.coeffs
        out[: other.coeffs.shape[0]] += other.coeffs
        return StemPolynomial(self.spec, out)

    def __sub__(self, other):
        return self + other.scale(-1.0)

    def scale(self, s):
        return StemPolynomial(self.spec, self.coeffs * float(s))

    def __mul__(self, other):
        if isinstance(other, StemPolynomial):
            return slice_product(self, other)
        return self.scale(other)

    def __eq__(self, other):
        if not isinstance(other, StemPolynomial) or other.spec != self.spec:
            return NotImplemented
        a, b = self.trimmed().coeffs, other.trimmed().coeffs
        return a.shape == b.shape and bool(np.array_equal(a, b))

    def __repr__(self):
        return f"StemPolynomial({self.spec.name}, degree={self.degree})"

    # -- evaluation -------------------------------------------------------
    def stem_values(self, z):
        """(F1, F2) at complex points z, arrays of shape (m, d), using the stem reflection."""
        z = np.atleast_1d(np.asarray(z, dtype=complex))
        lower = z.imag < 0
        zu = np.where(lower, np.conj(z), z)
        F1, F2 = kernels.stem_horner(self.coeffs, zu)
        if lower.any():
            F2[lower] *= -1.0
        return F1, F2

    def plane(self, j, v):
        """Values f(Re v + J Im v) for complex v, shape (m, d)."""
        jc = j.coords if isinstance(j, AlgebraElement) else np.asarray(j, dtype=float)
        F1, F2 = self.stem_values(v)
        return F1 + self.spec.mul_batch(np.broadcast_to(jc, F2.shape), F2)

    def __call__(self, x):
        return induce(self, x)

    # -- serialization ----------------------------------------------------
    def to_json_obj(self):
        return [
            {"k": k, "c1": [float(v) for v in self.coeffs[k, 0]], "c2": [float(v) for v in self.coeffs[k, 1]]}
            for k in range(self.degree + 1)
        ]

    def to_json(self):
        return json.dumps(self.to_json_obj())

    @classmethod
    def from_json_obj(cls, spec, obj):
        if not isinstance(obj, list):
            raise InvalidArgumentError("a stem is a JSON list of {k, c1, c2} terms")
        K = 1 + max((int(t["k"]) for t in obj), default=0)
        arr = np.zeros((K, 2, spec.dim))
        for t in obj:
            k = int(t["k"])
            if k < 0:
                raise InvalidArgumentError("stem powers must be >= 0")
            arr[k, 0] += _coords(spec, t.get("c1"))
            arr[k, 1] += _coords(spec, t.get("c2"))
        return cls(spec, arr)

    @classmethod
    def from_json(cls, spec, text):
        return cls.from_json_obj(spec, json.loads(text))


def _coords(spec, a):
    if a is None:
        return np.zeros(spec.dim)
    if isinstance(a, AlgebraElement):
        if a.spec != spec:
            raise SpecMismatchError(f"{a.spec.name} coefficient in a {spec.name} stem")
        return a.coords
    if isinstance(a, (int, float)):
        c = np.zeros(spec.dim)
        c[0] = a
        return c
    c = np.asarray(a, dtype=float)
    if c.shape != (spec.dim,):
        raise InvalidArgumentError(f"expected {spec.dim} coordinates, got {c.shape}")
    return c


def _same(F, G):
    if F.spec != G.spec:
        raise SpecMismatchError(f"{F.spec.name} vs {G.spec.name}")


# ---------------------------------------------------------------------------
# Induction and the representation formula
# ---------------------------------------------------------------------------

def induce(stem: StemPolynomial, x, tol=DEFAULT_TOL) -> AlgebraElement:
    """f(x) = F1(z) + J F2(z) for x = alpha + beta J, z = alpha + i beta."""
    p = as_cone_point(x, stem.spec)
    F1, F2 = stem.stem_values(np.array([p.z]))
    if not p.canonical:
        scale = max(1.0, float(np.linalg.norm(F1[0])))
        if np.linalg.norm(F2[0]) > tol * scale:
            warnings.warn("stem has a nonzero imaginary part on the real axis; dropped", StemWarning,
                          stacklevel=2)
        return AlgebraElement(F1[0], stem.spec)
    return AlgebraElement(F1[0] + stem.spec.mul(p.j.coords, F2[0]), stem.spec)


def induce_batch(stem: StemPolynomial, alpha, beta, J) -> np.ndarray:
    """Vectorised induce on arrays alpha (m,), beta >= 0 (m,), J (m, d)."""
    z = np.asarray(alpha, dtype=float) + 1j * np.asarray(beta, dtype=float)
    F1, F2 = stem.stem_values(z)
    return F1 + stem.spec.mul_batch(np.asarray(J, dtype=float), F2)


def representation_formula(f_at_zJ, f_at_zJc, i_new, j, tol=1e-7) -> AlgebraElement:
    """Reconstruct f(alpha + beta I) from f(alpha + beta J) and f(alpha - beta J).

    f(alpha + beta I) = (a + b)/2 - I (J (a - b)) / 2, with a = f(z_J), b = f(z_J^c).
    """
    for u in (i_new, j):
        if not is_unit_imaginary(u, tol):
            raise InvalidArgumentError(f"{u!r} is not a square root of -1")
    spec = j.spec
    a = f_at_zJ.coords
    b = f_at_zJc.coords
    odd = spec.mul(i_new.coords, spec.mul(j.coords, a - b))
    return AlgebraElement(0.5 * (a + b) - 0.5 * odd, spec)


def representation_batch(spec, a, b, I, J) -> np.ndarray:
    """Row-wise representation formula on arrays of shape (m, d)."""
    odd = spec.mul_batch(I, spec.mul_batch(J, a - b))
    return 0.5 * (a + b) - 0.5 * odd


# ---------------------------------------------------------------------------
# Slice product and derivatives
# ---------------------------------------------------------------------------

def tensor_mul(spec, p, q):
    """Product in A (x) C of p = (p1, p2) and q = (q1, q2), arrays of shape (..., 2, d)."""
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    shp = np.broadcast_shapes(p.shape, q.shape)
    p = np.broadcast_to(p, shp).reshape(-1, 2, spec.dim)
    q = np.broadcast_to(q, shp).reshape(-1, 2, spec.dim)
    m = spec.mul_batch
    r1 = m(p[:, 0], q[:, 0]) - m(p[:, 1], q[:, 1])
    r2 = m(p[:, 0], q[:, 1]) + m(p[:, 1], q[:, 0])
    return np.stack([r1, r2], axis=1).reshape(shp)


def slice_product(F: StemPolynomial, G: StemPolynomial) -> StemPolynomial:
    """Stem of f . g: coefficient convolution with single binary A (x) C products."""
    _same(F, G)
    spec = F.spec
    Fc = F.trimmed().coeffs
    Gc = G.trimmed().coeffs
    K, L = Fc.shape[0], Gc.shape[0]
    out = np.zeros((K + L - 1, 2, spec.dim))
    # all pairwise products in one batch, then accumulate in a fixed order
    ii, jj = np.meshgrid(np.arange(K), np.arange(L), indexing="ij")
    prods = tensor_mul(spec, Fc[ii.ravel()], Gc[jj.ravel()])
    np.add.at(out, (ii + jj).ravel(), prods)
    return StemPolynomial(spec, out)


def slice_power_stem(F: StemPolynomial, n: int) -> StemPolynomial:
    """F . F . ... . F (n factors, left-nested)."""
    if n < 0:
        raise InvalidArgumentError("n must be >= 0")
    out = StemPolynomial.constant(F.spec, F.spec.one())
    for _ in range(n):
        out = slice_product(out, F)
    return out


def slice_derivative(F: StemPolynomial) -> StemPolynomial:
    """Stem of the Cullen derivative: the formal z-derivative of F."""
    c = F.coeffs
    if c.shape[0] <= 1:
        return StemPolynomial(F.spec, np.zeros((1, 2, F.spec.dim)))
    k = np.arange(1, c.shape[0], dtype=float)
    return StemPolynomial(F.spec, c[1:] * k[:, None, None])


def slice_derivative_n(F: StemPolynomial, n: int) -> StemPolynomial:
    for _ in range(n):
        F = slice_derivative(F)
    return F


def conjugate_derivative(F: StemPolynomial) -> StemPolynomial:
    """Stem of df/dx^c, i.e. dF/d(conj z). Zero for every polynomial stem."""
    return StemPolynomial(F.spec, np.zeros((1, 2, F.spec.dim)))


def cullen_derivative_at(F: StemPolynomial, x) -> AlgebraElement:
    return induce(slice_derivative(F), x)


def conjugate_derivative_residual(F: StemPolynomial, x, h=0.5, nodes=None) -> float:
    """Size of the Wirtinger derivative d/dconj(z) of F near the shadow of x.

    Uses the e^{-i theta} Fourier mode of F on the circle |zeta - z| = h, which
    equals h dF/dconj(z) for smooth F and vanishes to roundoff for polynomial
    stems once the node count exceeds the degree. The check runs on the stem
    itself, not on the zero stem returned by :func:`conjugate_derivative`.
    """
    p = as_cone_point(x, F.spec)
    z = p.z if p.beta > 2 * h else complex(p.alpha, 2 * h)
    M = nodes or max(16, 2 * (F.degree + 2))
    om = np.exp(2j * np.pi * np.arange(M) / M)
    F1, F2 = F.stem_values(z + h * om)
    Fc = F1 + 1j * F2
    mode = (om @ Fc) / (M * h)
    return float(np.linalg.norm(mode))


def spherical_derivative(f_at_y, f_at_yc, y) -> AlgebraElement:
    """(2 im y)^{-1} (f(y) - f(y^c)) for y off the real axis."""
    p = as_cone_point(y)
    if not p.canonical:
        raise InvalidArgumentError("the spherical derivative is undefined at real points")
    spec = p.spec
    diff = f_at_y.coords - f_at_yc.coords
    # (2 beta J)^{-1} = -J / (2 beta)
    return AlgebraElement(-spec.mul(p.j.coords, diff) / (2.0 * p.beta), spec)
