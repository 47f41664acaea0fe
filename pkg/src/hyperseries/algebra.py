"""Finite-dimensional real alternative *-algebras.

Supported instances are the complex numbers, the quaternions, the octonions
and the Clifford algebras R_n of signature (0, n) for 1 <= n <= 5. Every
instance has a canonical basis in which the product of two basis vectors is
plus or minus a basis vector and the conjugation is diagonal, so products are
dispatched to the signed-permutation kernels in :mod:`hyperseries.kernels`.

Elements are immutable values. Array-level helpers on :class:`AlgebraSpec`
(``mul``, ``mul_batch``, ``conj``, ``norm``) work on raw coordinate vectors and
are what the numerical modules use internally.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from . import kernels

DEFAULT_TOL = 1e-9


class AlgebraError(ValueError):
    """Base class for algebra-level input errors."""


class SpecMismatchError(AlgebraError):
    pass


class NotInConeError(AlgebraError):
    pass


class InvalidArgumentError(AlgebraError):
    pass


class AlgebraSpec:
    """Structure constants, conjugation signs and norm of one algebra.

    ``structure_constants[i, j]`` holds the coordinates of ``v_i * v_j``.
    ``norm_kind`` is ``"euclidean"`` (coordinate norm, the default) or
    ``"clifford_operator"`` (operator norm of left multiplication).
    """

    def __init__(self, name, structure_constants, conjugation_signs, basis_names=None,
                 norm_kind="euclidean"):
        table = np.array(structure_constants, dtype=float)
        d = table.shape[0]
        if table.shape != (d, d, d):
            raise InvalidArgumentError("structure constants must have shape (d, d, d)")
        signs = np.array(conjugation_signs, dtype=float)
        if signs.shape != (d,) or not np.all(np.abs(signs) == 1):
            raise InvalidArgumentError("conjugation signs must be a length-d vector of +-1")
        if norm_kind not in ("euclidean", "clifford_operator"):
            raise InvalidArgumentError(f"unknown norm kind {norm_kind!r}")
        if norm_kind == "clifford_operator" and not str(name).startswith("Clifford"):
            raise InvalidArgumentError("the operator norm is offered for Clifford algebras only")
        table.setflags(write=False)
        signs.setflags(write=False)
        self.name = name
        self.dim = d
        self.structure_constants = table
        self.conjugation_signs = signs
        self.basis_names = tuple(basis_names or [f"v{k}" for k in range(d)])
        self.norm_kind = norm_kind
        self._idx, self._sgn = _monomial_form(table)
        # rows: left multiplication matrices L_{v_i}
        self._left = np.ascontiguousarray(np.transpose(table, (0, 2, 1)))

    # -- identity ---------------------------------------------------------
    def __eq__(self, other):
        return (
            isinstance(other, AlgebraSpec)
            and self.name == other.name
            and self.norm_kind == other.norm_kind
        )

    def __hash__(self):
        return hash((self.name, self.norm_kind))

    def __repr__(self):
        return f"AlgebraSpec({self.name!r}, dim={self.dim}, norm={self.norm_kind!r})"

    @property
    def h(self):
        """Complex dimension minus one of A viewed as a C_J-space (d = 2h + 2)."""
        return self.dim // 2 - 1

    # -- raw coordinate arithmetic ---------------------------------------
    def mul(self, a, b):
        if self._idx is not None:
            return kernels.mul(a, b, self._idx, self._sgn)
        return np.einsum("i,j,ijk->k", a, b, self.structure_constants)

    def mul_batch(self, a, b):
        a = np.atleast_2d(a)
        b = np.atleast_2d(b)
        if a.shape[0] == 1 and b.shape[0] > 1:
            a = np.broadcast_to(a, b.shape)
        elif b.shape[0] == 1 and a.shape[0] > 1:
            b = np.broadcast_to(b, a.shape)
        if self._idx is not None:
            return kernels.mul_batch(a, b, self._idx, self._sgn)
        return np.einsum("ni,nj,ijk->nk", a, b, self.structure_constants)

    def conj(self, a):
        return np.asarray(a) * self.conjugation_signs

    def left_matrix(self, a):
        """Matrix L with ``L @ b == mul(a, b)``."""
        return np.tensordot(a, self._left, axes=(0, 0))

    def right_matrix(self, b):
        """Matrix R with ``R @ a == mul(a, b)``."""
        return np.tensordot(b, self.structure_constants, axes=(0, 1)).T

    def norm(self, a):
        a = np.asarray(a, dtype=float)
        if self.norm_kind == "euclidean":
            return float(np.linalg.norm(a))
        return float(np.linalg.norm(self.left_matrix(a), 2))

    def norm_batch(self, a):
        a = np.atleast_2d(a)
        if self.norm_kind == "euclidean":
            # rescale rows so tiny or huge entries do not under/overflow when squared
            s = np.max(np.abs(a), axis=1)
            safe = np.where(s > 0, s, 1.0)
            return s * np.linalg.norm(a / safe[:, None], axis=1)
        L = np.einsum("ni,ijk->njk", a, self._left)
        return np.linalg.norm(L, 2, axis=(1, 2))

    # -- constructors -----------------------------------------------------
    def element(self, coords) -> "AlgebraElement":
        c = np.array(coords, dtype=float)
        if c.shape != (self.dim,):
            raise InvalidArgumentError(f"expected {self.dim} coordinates, got shape {c.shape}")
        return AlgebraElement(c, self)

    def one(self) -> "AlgebraElement":
        return self.basis(0)

    def zero(self) -> "AlgebraElement":
        return AlgebraElement(np.zeros(self.dim), self)

    def basis(self, k) -> "AlgebraElement":
        c = np.zeros(self.dim)
        c[k] = 1.0
        return AlgebraElement(c, self)

    def scalar(self, value) -> "AlgebraElement":
        c = np.zeros(self.dim)
        c[0] = value
        return AlgebraElement(c, self)

    def __getitem__(self, name) -> "AlgebraElement":
        return self.basis(self.basis_names.index(name))

    def to_config(self):
        if self.name.startswith("Clifford"):
            alg = {"clifford": int(self.name[len("Clifford("):-1])}
        else:
            alg = {"Complex": "C", "Quaternion": "H", "Octonion": "O"}[self.name]
        return {"algebra": alg, "norm": self.norm_kind}


def _monomial_form(table):
    """Return (idx, sgn) if every basis product is +-(basis vector), else (None, None)."""
    d = table.shape[0]
    nz = np.count_nonzero(table, axis=2)
    if not np.all(nz == 1):
        return None, None
    idx = np.argmax(table != 0, axis=2).astype(np.intp)
    sgn = np.take_along_axis(table, idx[:, :, None], axis=2)[:, :, 0]
    if not np.all(np.abs(sgn) == 1):
        return None, None
    return np.ascontiguousarray(idx), np.ascontiguousarray(sgn, dtype=float)


@dataclass(frozen=True, eq=False)
class AlgebraElement:
    coords: np.ndarray
    spec: AlgebraSpec

    def __post_init__(self):
        c = np.array(self.coords, dtype=float)
        c.setflags(write=False)
        object.__setattr__(self, "coords", c)

    def _check(self, other):
        if not isinstance(other, AlgebraElement):
            return None
        if other.spec is not self.spec and other.spec != self.spec:
            raise SpecMismatchError(f"{self.spec.name} vs {other.spec.name}")
        return other

    def __add__(self, other):
        if isinstance(other, (int, float)):
            return self + self.spec.scalar(other)
        other = self._check(other)
        if other is None:
            return NotImplemented
        return AlgebraElement(self.coords + other.coords, self.spec)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, float)):
            return self - self.spec.scalar(other)
        other = self._check(other)
        if other is None:
            return NotImplemented
        return AlgebraElement(self.coords - other.coords, self.spec)

    def __rsub__(self, other):
        if isinstance(other, (int, float)):
            return self.spec.scalar(other) - self
        return NotImplemented

    def __neg__(self):
        return AlgebraElement(-self.coords, self.spec)

    def __mul__(self, other):
        if isinstance(other, (int, float, np.floating)):
            return AlgebraElement(self.coords * float(other), self.spec)
        return multiply(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, float, np.floating)):
            return AlgebraElement(self.coords * float(other), self.spec)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, float, np.floating)):
            return AlgebraElement(self.coords / float(other), self.spec)
        return NotImplemented

    def conj(self):
        return conjugate(self)

    def norm(self):
        return self.spec.norm(self.coords)

    @property
    def real(self):
        return float(self.coords[0])

    def is_real(self, tol=DEFAULT_TOL):
        return float(np.linalg.norm(self.coords[1:])) <= tol * max(1.0, abs(self.coords[0]))

    def allclose(self, other, tol=1e-12):
        return float(np.linalg.norm(self.coords - other.coords)) <= tol * max(
            1.0, float(np.linalg.norm(other.coords))
        )

    def __repr__(self):
        terms = [
            f"{c:+.6g}{'' if k == 0 else self.spec.basis_names[k]}"
            for k, c in enumerate(self.coords)
            if c != 0
        ]
        return "".join(terms) if terms else "0"


# ---------------------------------------------------------------------------
# Multiplication tables
# ---------------------------------------------------------------------------

_FANO_TRIPLES = ((1, 2, 3), (1, 4, 5), (1, 7, 6), (2, 4, 6), (2, 5, 7), (3, 4, 7), (3, 6, 5))


def _unit_table(d):
    t = np.zeros((d, d, d))
    for k in range(d):
        t[0, k, k] = 1.0
        t[k, 0, k] = 1.0
    for k in range(1, d):
        t[k, k, 0] = -1.0
    return t


def complex_numbers(norm_kind="euclidean"):
    return AlgebraSpec("Complex", _unit_table(2), [1, -1], ["1", "i"], norm_kind)


def quaternions(norm_kind="euclidean"):
    t = _unit_table(4)
    for a, b, c in ((1, 2, 3), (2, 3, 1), (3, 1, 2)):
        t[a, b, c] = 1.0
        t[b, a, c] = -1.0
    return AlgebraSpec("Quaternion", t, [1, -1, -1, -1], ["1", "i", "j", "k"], norm_kind)


def octonions(norm_kind="euclidean"):
    t = _unit_table(8)
    for a, b, c in _FANO_TRIPLES:
        for p, q, r in ((a, b, c), (b, c, a), (c, a, b)):
            t[p, q, r] = 1.0
            t[q, p, r] = -1.0
    names = ["1"] + [f"e{k}" for k in range(1, 8)]
    return AlgebraSpec("Octonion", t, [1] + [-1] * 7, names, norm_kind)


def _blade_product(a, b):
    """Sign and bitmask of e_a e_b in signature (0, n) (every e_k squares to -1)."""
    swaps = 0
    x = a >> 1
    while x:
        swaps += bin(x & b).count("1")
        x >>= 1
    sign = -1.0 if swaps % 2 else 1.0
    if bin(a & b).count("1") % 2:
        sign = -sign
    return sign, a ^ b


def clifford(n, norm_kind="euclidean"):
    """Clifford algebra R_n of signature (0, n) with Clifford conjugation."""
    if not 1 <= n <= 5:
        raise InvalidArgumentError("Clifford(n) is supported for 1 <= n <= 5")
    masks = sorted(range(2 ** n), key=lambda m: (bin(m).count("1"), [k for k in range(n) if m >> k & 1]))
    pos = {m: i for i, m in enumerate(masks)}
    d = len(masks)
    t = np.zeros((d, d, d))
    for i, a in enumerate(masks):
        for j, b in enumerate(masks):
            s, c = _blade_product(a, b)
            t[i, j, pos[c]] = s
    grades = [bin(m).count("1") for m in masks]
    signs = [(-1) ** (g * (g + 1) // 2) for g in grades]
    names = ["1"] + ["e" + "".join(str(k + 1) for k in range(n) if m >> k & 1) for m in masks[1:]]
    return AlgebraSpec(f"Clifford({n})", t, signs, names, norm_kind)


def spec_from_config(config) -> AlgebraSpec:
    """Build an algebra from ``{"algebra": "H"|"O"|"C"|{"clifford": n}, "norm": ...}``.

    A JSON string or a bare algebra tag (``"H"``, ``"clifford:3"``) is accepted too.
    """
    if isinstance(config, str):
        text = config.strip()
        if text.startswith("{"):
            config = json.loads(text)
        else:
            config = {"algebra": text}
    alg = config.get("algebra", "H")
    norm_kind = config.get("norm", "euclidean")
    if isinstance(alg, dict):
        if "clifford" not in alg:
            raise InvalidArgumentError(f"unknown algebra {alg!r}")
        return clifford(int(alg["clifford"]), norm_kind)
    tag = str(alg).strip()
    low = tag.lower()
    if low.startswith("clifford"):
        digits = "".join(ch for ch in tag if ch.isdigit())
        return clifford(int(digits), norm_kind)
    builders = {"c": complex_numbers, "h": quaternions, "o": octonions,
                "complex": complex_numbers, "quaternion": quaternions, "octonion": octonions}
    if low not in builders:
        raise InvalidArgumentError(f"unknown algebra {tag!r}")
    return builders[low](norm_kind)


# ---------------------------------------------------------------------------
# Basic operations
# ---------------------------------------------------------------------------

def multiply(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    if x.spec is not y.spec and x.spec != y.spec:
        raise SpecMismatchError(f"cannot multiply {x.spec.name} by {y.spec.name}")
    return AlgebraElement(x.spec.mul(x.coords, y.coords), x.spec)


def conjugate(x: AlgebraElement) -> AlgebraElement:
    return AlgebraElement(x.spec.conj(x.coords), x.spec)


def trace(x: AlgebraElement) -> AlgebraElement:
    return x + conjugate(x)


def norm_q(x: AlgebraElement) -> AlgebraElement:
    """The algebraic squared norm n(x) = x x^c (an algebra element)."""
    return multiply(x, conjugate(x))


# ---------------------------------------------------------------------------
# Quadratic cone
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class ConePoint:
    """A point alpha + beta*J of the quadratic cone, beta >= 0.

    When beta == 0 the unit ``j`` is a placeholder and ``canonical`` is False.
    """

    alpha: float
    beta: float
    j: AlgebraElement
    element: AlgebraElement
    canonical: bool = True

    @property
    def spec(self):
        return self.element.spec

    @property
    def z(self) -> complex:
        """Complex shadow alpha + i*beta."""
        return complex(self.alpha, self.beta)

    @property
    def is_real(self):
        return not self.canonical

    def conj(self) -> "ConePoint":
        if not self.canonical:
            return self
        return compose(self.alpha, self.beta, -self.j)

    def in_plane(self, v: complex) -> "ConePoint":
        """The point Re(v) + J*Im(v) of the plane C_J of this point."""
        return plane_point(self.j, v, canonical=self.canonical)

    def __repr__(self):
        return f"ConePoint({self.alpha:.6g} + {self.beta:.6g}*[{self.j!r}])"


def placeholder_unit(spec: AlgebraSpec) -> AlgebraElement:
    return spec.basis(1)


def compose(alpha: float, beta: float, j: AlgebraElement, canonical=True) -> ConePoint:
    """Build the cone point alpha + beta*j (beta >= 0 expected)."""
    alpha = float(alpha)
    beta = float(beta)
    if beta < 0:
        beta, j = -beta, -j
    if beta == 0.0:
        return ConePoint(alpha, 0.0, j if canonical else placeholder_unit(j.spec),
                         j.spec.scalar(alpha), canonical=False)
    coords = beta * j.coords
    coords = coords.copy()
    coords[0] += alpha
    return ConePoint(alpha, beta, j, AlgebraElement(coords, j.spec), canonical)


def plane_point(j: AlgebraElement, v: complex, canonical=True) -> ConePoint:
    """Phi_J(v) = Re(v) + J Im(v) as a cone point (the sign of Im(v) moves onto J)."""
    v = complex(v)
    if v.imag >= 0:
        return compose(v.real, v.imag, j, canonical)
    return compose(v.real, -v.imag, -j, canonical)


def real_point(spec: AlgebraSpec, alpha: float) -> ConePoint:
    return ConePoint(float(alpha), 0.0, placeholder_unit(spec), spec.scalar(alpha), canonical=False)


def phi(j: AlgebraElement, v: complex) -> np.ndarray:
    """Coordinates of Re(v) + J Im(v)."""
    out = v.imag * j.coords
    out = out.copy()
    out[0] += v.real
    return out


def cone_decompose(x: AlgebraElement, tol: float = DEFAULT_TOL) -> ConePoint:
    """Write x = alpha + beta*J with beta >= 0 and J in S_A, or raise NotInConeError."""
    spec = x.spec
    c = x.coords
    scale = max(1.0, float(np.linalg.norm(c)))
    t = c + spec.conj(c)
    if np.linalg.norm(t[1:]) > tol * scale:
        raise NotInConeError(f"trace of {x!r} is not real")
    alpha = 0.5 * t[0]
    im = 0.5 * (c - spec.conj(c))
    if np.linalg.norm(im) <= tol * scale:
        return real_point(spec, alpha)
    n_im = spec.mul(im, spec.conj(im))
    if np.linalg.norm(n_im[1:]) > tol * scale * scale:
        raise NotInConeError(f"norm of {x!r} is not real")
    if n_im[0] <= tol * scale * scale:
        raise NotInConeError(f"{x!r} fails 4n(x) > t(x)^2")
    beta = math.sqrt(n_im[0])
    j = AlgebraElement(im / beta, spec)
    return ConePoint(float(alpha), beta, j, x, canonical=True)


def as_cone_point(x, spec: AlgebraSpec | None = None, tol=DEFAULT_TOL) -> ConePoint:
    if isinstance(x, ConePoint):
        return x
    if isinstance(x, AlgebraElement):
        return cone_decompose(x, tol)
    if spec is None:
        raise InvalidArgumentError("an algebra is needed to interpret raw coordinates")
    return cone_decompose(spec.element(x), tol)


def inverse_in_cone(x) -> AlgebraElement:
    """x^{-1} = n(x)^{-1} x^c for a nonzero cone point."""
    p = as_cone_point(x)
    n = p.alpha ** 2 + p.beta ** 2
    if n == 0.0:
        raise ZeroDivisionError("zero has no inverse")
    return conjugate(p.element) / n


def is_unit_imaginary(j: AlgebraElement, tol=DEFAULT_TOL) -> bool:
    """J in S_A iff t(J) = 0 and n(J) = 1."""
    c = j.coords
    spec = j.spec
    t = c + spec.conj(c)
    n = spec.mul(c, spec.conj(c))
    one = np.zeros_like(n)
    one[0] = 1.0
    return bool(np.linalg.norm(t) <= tol and np.linalg.norm(n - one) <= tol)


# ---------------------------------------------------------------------------
# Splitting bases
# ---------------------------------------------------------------------------

class SplittingBase(NamedTuple):
    """Ordered real basis (1, J, J_1, J J_1, ..., J_h, J J_h) and its coordinate matrix."""

    vectors: tuple
    matrix: np.ndarray  # columns are the basis vectors in canonical coordinates
    h: int

    def coordinates(self, x) -> np.ndarray:
        c = x.coords if isinstance(x, AlgebraElement) else np.asarray(x)
        return np.linalg.solve(self.matrix, c.T).T

    def operator_norm(self) -> float:
        """Operator 2-norm of the map canonical coords -> splitting coords."""
        return float(np.linalg.norm(np.linalg.inv(self.matrix), 2))


def splitting_base(j: AlgebraElement, tol=DEFAULT_TOL) -> SplittingBase:
    """Greedy splitting base associated with the square root of -1 ``j``.

    The candidates are the canonical coordinate vectors; each is made
    orthogonal to the current span and normalised before being paired with its
    left multiple by J.
    """
    spec = j.spec
    if not is_unit_imaginary(j, 1e-7):
        raise InvalidArgumentError(f"{j!r} is not a square root of -1 in the cone")
    d = spec.dim
    one = spec.one().coords
    vecs = [one, j.coords]
    Q = np.zeros((d, 0))
    for v in vecs:
        Q = _extend_orthonormal(Q, v)
    for k in range(d):
        if len(vecs) == d:
            break
        e = np.zeros(d)
        e[k] = 1.0
        r = e - Q @ (Q.T @ e)
        nr = np.linalg.norm(r)
        if nr < 1e-8:
            continue
        jl = r / nr
        jl = jl / spec.norm(jl)
        jjl = spec.mul(j.coords, jl)
        Q2 = _extend_orthonormal(Q, jl)
        if Q2 is None:
            continue
        Q3 = _extend_orthonormal(Q2, jjl)
        if Q3 is None:
            continue
        Q = Q3
        vecs.extend([jl, jjl])
    if len(vecs) != d:
        raise InvalidArgumentError("could not complete a splitting base")
    B = np.column_stack(vecs)
    B.setflags(write=False)
    return SplittingBase(tuple(AlgebraElement(v, spec) for v in vecs), B, d // 2 - 1)


def _extend_orthonormal(Q, v):
    r = v - Q @ (Q.T @ v)
    for _ in range(2):
        r = r - Q @ (Q.T @ r)
    nr = np.linalg.norm(r)
    if nr < 1e-8 * max(1.0, np.linalg.norm(v)):
        return None
    return np.column_stack([Q, r / nr])


# ---------------------------------------------------------------------------
# Random sampling (used by the constants and by property checks)
# ---------------------------------------------------------------------------

def imaginary_mask(spec: AlgebraSpec) -> np.ndarray:
    return spec.conjugation_signs < 0


def random_units_batch(spec: AlgebraSpec, rng, n) -> np.ndarray:
    """n random elements with unit A-norm (Gaussian directions)."""
    a = rng.standard_normal((n, spec.dim))
    return a / spec.norm_batch(a)[:, None]


def random_imaginary_units_batch(spec: AlgebraSpec, rng, n) -> np.ndarray:
    """n random square roots of -1.

    For C, H and O these are uniform on the unit imaginary sphere. For the
    Clifford algebras they are unit imaginary paravectors or basis bivectors,
    then conjugated as u J u^c by a random unit paravector u (which maps S_A
    to itself).
    """
    d = spec.dim
    if not spec.name.startswith("Clifford"):
        a = rng.standard_normal((n, d))
        a[:, ~imaginary_mask(spec)] = 0.0
        return a / np.linalg.norm(a, axis=1)[:, None]
    nvec = int(spec.name[len("Clifford("):-1])
    grade = np.array([len(name) - 1 if k else 0 for k, name in enumerate(spec.basis_names)])
    vec_idx = np.flatnonzero(grade == 1)
    biv_idx = np.flatnonzero(grade == 2)
    J = np.zeros((n, d))
    use_biv = rng.random(n) < 0.5 if len(biv_idx) else np.zeros(n, bool)
    g = rng.standard_normal((n, len(vec_idx)))
    J[:, vec_idx] = g / np.linalg.norm(g, axis=1)[:, None]
    if use_biv.any():
        pick = rng.integers(0, len(biv_idx), size=int(use_biv.sum()))
        J[use_biv] = 0.0
        J[np.flatnonzero(use_biv), biv_idx[pick]] = 1.0
    u = np.zeros((n, d))
    u[:, 0] = rng.standard_normal(n)
    u[:, vec_idx] = rng.standard_normal((n, nvec))
    u /= np.linalg.norm(u, axis=1)[:, None]
    uc = u * spec.conjugation_signs
    J = spec.mul_batch(spec.mul_batch(u, J), uc)
    return J / spec.norm_batch(J)[:, None]


def random_imaginary_unit(spec: AlgebraSpec, rng) -> AlgebraElement:
    return AlgebraElement(random_imaginary_units_batch(spec, rng, 1)[0], spec)


def random_cone_batch(spec: AlgebraSpec, rng, n, scale=1.0):
    """Random cone points as arrays (alpha, beta, J) with beta > 0."""
    J = random_imaginary_units_batch(spec, rng, n)
    alpha = scale * rng.standard_normal(n)
    beta = scale * np.abs(rng.standard_normal(n)) + 1e-3
    return alpha, beta, J


def random_cone_point(spec: AlgebraSpec, rng, scale=1.0) -> ConePoint:
    a, b, J = random_cone_batch(spec, rng, 1, scale)
    return compose(a[0], b[0], AlgebraElement(J[0], spec))


# ---------------------------------------------------------------------------
# The constants c_A, C_A and H
# ---------------------------------------------------------------------------

class AlgebraConstants(NamedTuple):
    c_A: float
    C_A: float
    H: float


_REFINE_STARTS = 16


def algebra_constants(spec: AlgebraSpec, samples: int = 2000, seed: int = 0) -> AlgebraConstants:
    """Estimate c_A, C_A and H by deterministic enumeration plus sampling.

    C_A and H are maxima and come back as lower bounds; c_A is a minimum and
    comes back as an upper bound. The sample stream for a given seed is
    nested in ``samples``, so estimates are monotone in the sample count.
    """
    if samples < 1:
        raise InvalidArgumentError("samples must be >= 1")
    d = spec.dim
    rng = np.random.default_rng(seed)
    refine_rng = np.random.default_rng([seed, 1])

    # C_A: basis pairs, samples, then alternating singular-vector ascent from fixed starts
    eye = np.eye(d)
    big = float(np.max(spec.norm_batch(spec.mul_batch(np.repeat(eye, d, 0), np.tile(eye, (d, 1))))))
    xs = random_units_batch(spec, rng, samples)
    ys = random_units_batch(spec, rng, samples)
    big = max(big, float(np.max(spec.norm_batch(spec.mul_batch(xs, ys)))))
    if spec.norm_kind == "euclidean":
        for x0 in random_units_batch(spec, refine_rng, _REFINE_STARTS):
            big = max(big, _ascend_product_norm(spec, x0))

    # c_A: unit cone x, z and unit y
    small = math.inf
    cx = _unit_cone_batch(spec, rng, samples)
    cz = _unit_cone_batch(spec, rng, samples)
    cy = random_units_batch(spec, rng, samples)
    small = min(small, float(np.min(spec.norm_batch(spec.mul_batch(spec.mul_batch(cx, cy), cz)))))
    if spec.norm_kind == "euclidean":
        rx = _unit_cone_batch(spec, refine_rng, _REFINE_STARTS)
        rz = _unit_cone_batch(spec, refine_rng, _REFINE_STARTS)
        for x, z in zip(rx, rz):
            M = spec.right_matrix(z) @ spec.left_matrix(x)
            small = min(small, float(np.linalg.svd(M, compute_uv=False)[-1]))

    # H: sup over S_A of the coordinate-change operator norm (m(V, ||.||_A) = 1 here)
    Js = random_imaginary_units_batch(spec, np.random.default_rng([seed, 2]), max(1, min(samples, 400)))
    basis_units = [spec.basis(k) for k in range(1, d)]
    H = 0.0
    for j in itertools.chain(
        (b for b in basis_units if is_unit_imaginary(b)),
        (AlgebraElement(row, spec) for row in Js),
    ):
        H = max(H, splitting_base(j).operator_norm())
    return AlgebraConstants(small, big, H)


def _unit_cone_batch(spec, rng, n):
    alpha, beta, J = random_cone_batch(spec, rng, n)
    r = np.hypot(alpha, beta)
    out = J * (beta / r)[:, None]
    out[:, 0] += alpha / r
    return out


def _ascend_product_norm(spec, x, iters=40):
    """Alternating maximisation of ||x y|| over unit x, y (euclidean norm)."""
    best = 0.0
    y = None
    for _ in range(iters):
        L = spec.left_matrix(x)
        _, s, vt = np.linalg.svd(L)
        y = vt[0]
        R = spec.right_matrix(y)
        _, s2, vt2 = np.linalg.svd(R)
        x = vt2[0]
        val = float(s2[0])
        if val <= best * (1 + 1e-15):
            best = max(best, val)
            break
        best = val
    return best


def elements_from_rows(spec: AlgebraSpec, rows: Sequence) -> list:
    return [AlgebraElement(np.asarray(r, dtype=float), spec) for r in rows]
