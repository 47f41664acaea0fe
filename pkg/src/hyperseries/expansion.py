"""Coefficient recovery and remainder estimates.

Three independent routes to expansion coefficients at a centre y = xi + J eta:

* derivatives: a_n = (1/n!) d^n f/dx^n (y) from the stem;
* the spherical-matrix system e . s = E built from derivatives at y and y^c;
* contour integrals over the circle dB_J(y, r) or the Cassini boundary dU_J(y, r).

Every integrand is formed in the plane C_J, where all factors commute, and
the left factor (2 pi J)^{-1} is applied last.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .algebra import (
    AlgebraElement,
    AlgebraSpec,
    ConePoint,
    InvalidArgumentError,
    as_cone_point,
    splitting_base,
)
from .geometry import (
    QuadratureError,
    cassini_boundary,
    delta_complex,
    sigma,
    spherical_poly_complex,
    tau,
    theta_constant,
)
from .series import PowerSeries, SphericalSeries, _frame, _lift, cached_constants
from .stem import StemPolynomial, induce, slice_derivative_n


# ---------------------------------------------------------------------------
# The spherical matrix
# ---------------------------------------------------------------------------

def _binom(a, b):
    if b < 0 or b > a or a < 0:
        return 0
    return math.comb(a, b)


def spherical_entry(n: int, l: int) -> int:
    """e_{n l} by the four binomial cases."""
    m, n_odd = divmod(n, 2)
    k, l_odd = divmod(l, 2)
    if not l_odd:
        return _binom(k, m - k)
    if not n_odd:
        return _binom(k, m - k - 1)
    return -_binom(k + 1, m - k)


@dataclass(frozen=True)
class SphericalMatrix:
    order: int
    entries: np.ndarray  # (order+1, order+1) int64

    def __getitem__(self, idx):
        return int(self.entries[idx])

    def row(self, n):
        return self.entries[n]


@lru_cache(maxsize=64)
def spherical_matrix(N: int) -> SphericalMatrix:
    if N < 0:
        raise InvalidArgumentError("N must be >= 0")
    e = np.array([[spherical_entry(n, l) for l in range(N + 1)] for n in range(N + 1)], dtype=np.int64)
    e.setflags(write=False)
    return SphericalMatrix(N, e)


# ---------------------------------------------------------------------------
# Plane helpers
# ---------------------------------------------------------------------------

def _left_plane(spec, J, c, a):
    """Phi_J(c) a for complex scalar c and coordinates a."""
    return c.real * a + c.imag * spec.mul(J, a)


def _plane_values(f, J: AlgebraElement, v):
    """Rows f(Re v + J Im v) for complex v."""
    v = np.atleast_1d(np.asarray(v, dtype=complex))
    if hasattr(f, "plane"):
        return np.asarray(f.plane(J, v), dtype=float)
    out = np.asarray(f(v), dtype=float)
    if out.shape != (len(v), J.spec.dim):
        raise InvalidArgumentError("a plane callable must return an (m, d) array")
    return out


def _require_nonreal(y: ConePoint):
    if not y.canonical:
        raise InvalidArgumentError("this operation needs a centre off the real axis")


# ---------------------------------------------------------------------------
# Derivative route
# ---------------------------------------------------------------------------

def taylor_coeffs_by_derivative(F: StemPolynomial, y, N: int) -> list:
    """a_n = (1/n!) d^n f/dx^n (y) for n = 0..N."""
    y = as_cone_point(y, F.spec)
    return [
        AlgebraElement(induce(slice_derivative_n(F, n), y).coords / math.factorial(n), F.spec)
        for n in range(N + 1)
    ]


def derivatives_at(F: StemPolynomial, y, M: int):
    """Lists d^m f/dx^m at y and at y^c for m = 0..M (no factorials)."""
    y = as_cone_point(y, F.spec)
    _require_nonreal(y)
    yc = y.conj()
    at_y, at_yc = [], []
    for m in range(M + 1):
        D = slice_derivative_n(F, m)
        at_y.append(induce(D, y))
        at_yc.append(induce(D, yc))
    return at_y, at_yc


def _rhs(derivs_at_y, derivs_at_yc, y: ConePoint, N: int) -> np.ndarray:
    """E_0..E_N as rows."""
    spec = y.spec
    need = N // 2 + 1
    if len(derivs_at_y) < need or len(derivs_at_yc) < (N - 1) // 2 + 1:
        raise InvalidArgumentError(f"need {need} derivatives at y and {(N - 1) // 2 + 1} at y^c for order {N}")
    J = y.j.coords
    E = np.zeros((N + 1, spec.dim))
    for n in range(N + 1):
        m, odd = divmod(n, 2)
        src = derivs_at_yc[m] if odd else derivs_at_y[m]
        c = (-2j * y.beta) ** m if odd else (2j * y.beta) ** m
        a = src.coords if isinstance(src, AlgebraElement) else np.asarray(src, dtype=float)
        E[n] = _left_plane(spec, J, c, a) / math.factorial(m)
    return E


def _unscale(spec, y: ConePoint, frak_s):
    """s_n = (2 im y)^{-n} frak_s_n."""
    J = y.j.coords
    out = []
    for n, row in enumerate(frak_s):
        c = (2j * y.beta) ** (-n)
        out.append(AlgebraElement(_left_plane(spec, J, c, row), spec))
    return out


def spherical_numbers_by_system(derivs_at_y, derivs_at_yc, y, N: int) -> list:
    """Solve e . frak_s = E by forward substitution and return s_0..s_N.

    The matrix is integer and lower triangular with diagonal (-1)^n, so no
    pivoting is needed. Its inverse grows quickly (condition number about 1e4
    at N = 12 and 4e8 at N = 24), which bounds the attainable accuracy.
    """
    y = as_cone_point(y, None if isinstance(y, ConePoint) else derivs_at_y[0].spec)
    _require_nonreal(y)
    spec = y.spec
    E = _rhs(derivs_at_y, derivs_at_yc, y, N)
    e = spherical_matrix(N).entries
    s = np.zeros_like(E)
    for n in range(N + 1):
        lo = n // 2
        acc = E[n] - e[n, lo:n].astype(float) @ s[lo:n]
        s[n] = acc / e[n, n]
    return _unscale(spec, y, s)


def _det_int(rows):
    """Exact determinant of a small integer matrix (Bareiss elimination)."""
    M = [[Fraction(v) for v in r] for r in rows]
    n = len(M)
    if n == 0:
        return 1
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c] != 0), None)
        if piv is None:
            return 0
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            det = -det
        det *= M[c][c]
        for r in range(c + 1, n):
            f = M[r][c] / M[c][c]
            if f:
                for k in range(c, n):
                    M[r][k] -= f * M[c][k]
    return int(det)


def cramer_cofactors(n: int):
    """Integer cofactors of the last column of (e_n | E_n) for the Laplace expansion."""
    e = spherical_matrix(n).entries
    block = e[: n + 1, :n]
    return [(-1) ** (i + n) * _det_int(np.delete(block, i, axis=0).tolist()) for i in range(n + 1)]


def spherical_numbers_by_cramer(derivs_at_y, derivs_at_yc, y, N: int) -> list:
    """Cross-check: frak_s_n = det(e_n | E_n) / det(e restricted to rows, columns 0..n).

    The determinant with the A-valued last column is expanded along that column
    with integer cofactors. The leading block is lower triangular with diagonal
    (-1)^k, so its determinant is (-1)^{n(n+1)/2}.
    """
    y = as_cone_point(y, None if isinstance(y, ConePoint) else derivs_at_y[0].spec)
    _require_nonreal(y)
    spec = y.spec
    E = _rhs(derivs_at_y, derivs_at_yc, y, N)
    s = np.zeros_like(E)
    for n in range(N + 1):
        cof = np.array(cramer_cofactors(n), dtype=float)
        lead = (-1) ** (n * (n + 1) // 2)
        s[n] = (cof @ E[: n + 1]) / lead
    return _unscale(spec, y, s)


def spherical_numbers_from_stem(F: StemPolynomial, y, N: int, method: str = "system") -> list:
    y = as_cone_point(y, F.spec)
    at_y, at_yc = derivatives_at(F, y, N // 2 + 1)
    solver = spherical_numbers_by_cramer if method == "cramer" else spherical_numbers_by_system
    return solver(at_y, at_yc, y, N)


def derivative_from_spherical(s, y, n: int) -> AlgebraElement:
    """(1/n!) d^n S/dx^n (y) = (2 im y)^{-n} sum_{l=n}^{2n} e_{2n,l} (2 im y)^l s_l."""
    spec = s[0].spec if isinstance(s[0], AlgebraElement) else None
    y = as_cone_point(y, spec)
    _require_nonreal(y)
    spec = y.spec
    if len(s) < 2 * n + 1:
        raise InvalidArgumentError(f"need {2 * n + 1} spherical numbers for n = {n}")
    e = spherical_matrix(2 * n).entries
    J = y.j.coords
    acc = np.zeros(spec.dim)
    for l in range(n, 2 * n + 1):
        if e[2 * n, l] == 0:
            continue
        sl = s[l].coords if isinstance(s[l], AlgebraElement) else np.asarray(s[l], dtype=float)
        acc += e[2 * n, l] * _left_plane(spec, J, (2j * y.beta) ** (l - n), sl)
    return AlgebraElement(acc, spec)


# ---------------------------------------------------------------------------
# Contour route
# ---------------------------------------------------------------------------

def _close_with_inverse_J(spec, J, weighted_sum):
    """(2 pi J)^{-1} v = -J v / (2 pi)."""
    return -spec.mul(J, weighted_sum) / (2 * math.pi)


def _plane_weighted_sum(spec, J, c, F):
    """sum_k Phi_J(c_k) F_k for complex weights c (m,) and rows F (m, d)."""
    JF = spec.mul_batch(np.broadcast_to(J, F.shape), F)
    return c.real @ F + c.imag @ JF


def _power_contour_once(f, y, r, n, M):
    """Trapezoidal sum on the circle; returns (value, sup ||f||, L1 size of the integrand)."""
    spec = y.spec
    J = y.j.coords
    w = y.z if y.canonical else complex(y.alpha, 0.0)
    th = np.arange(M) * (2 * math.pi / M)
    zeta = w + r * np.exp(1j * th)
    F = _plane_values(f, AlgebraElement(J, spec), zeta)
    # (zeta - w)^{-n-1} d zeta = i r^{-n} e^{-i n theta} d theta
    c = 1j * r ** (-n) * np.exp(-1j * n * th) * (2 * math.pi / M)
    total = _plane_weighted_sum(spec, J, c, F)
    nF = spec.norm_batch(F)
    return _close_with_inverse_J(spec, J, total), float(np.max(nF)), float(np.abs(c) @ nF) / (2 * math.pi)


def _spherical_contour_once(f, y, r, n, M, offset=0.5):
    spec = y.spec
    J = y.j.coords
    w = y.z
    B = cassini_boundary(w, r, M, offset=offset)
    total = np.zeros(spec.dim)
    sup = 0.0
    l1 = 0.0
    for loop in B.loops:
        S = spherical_poly_complex(w, n + 1, loop.z)
        if np.any(np.abs(S) == 0) or not np.all(np.isfinite(loop.dz)):
            raise QuadratureError("the contour passes through a zero of the spherical polynomial")
        F = _plane_values(f, AlgebraElement(J, spec), loop.z)
        nF = spec.norm_batch(F)
        sup = max(sup, float(np.max(nF)))
        c = loop.dz / S * (loop.period / M)
        l1 += float(np.abs(c) @ nF) / (2 * math.pi)
        total += _plane_weighted_sum(spec, J, c, F)
    return _close_with_inverse_J(spec, J, total), sup, l1


def _doubling(once, quad_points, tol, max_points, what):
    """Double the node count until two successive rules agree to tol times the integrand's L1 size."""
    prev = once(quad_points // 2)
    M = quad_points
    while True:
        cur = once(M)
        diff = float(np.linalg.norm(cur[0] - prev[0]))
        if diff <= tol * max(cur[2], np.finfo(float).tiny):
            return cur[0], cur[1], M
        if 2 * M > max_points:
            raise QuadratureError(f"{what} quadrature not converged at {M} nodes: doubling changed the result by {diff:.3e}")
        prev, M = cur, 2 * M


def contour_coeff_power(f, y, r: float, n: int, quad_points: int = 256, tol: float = 1e-12,
                        max_points: int = 1 << 14, return_sup: bool = False):
    """(2 pi J)^{-1} int_{dB_J(y, r)} (zeta - y)^{-n-1} d zeta f(zeta) by the trapezoidal rule.

    The node count starts at ``quad_points`` and doubles until the result is
    stable relative to the integrand's L1 size.
    """
    y = as_cone_point(y, getattr(f, "spec", None))
    if not r > 0:
        raise InvalidArgumentError("the radius must be positive")
    if quad_points < 8 or quad_points % 2:
        raise InvalidArgumentError("quad_points must be an even number >= 8")
    val, sup, _ = _doubling(lambda M: _power_contour_once(f, y, r, n, M), quad_points, tol, max_points, "circle")
    out = AlgebraElement(val, y.spec)
    return (out, sup) if return_sup else out


def contour_coeff_spherical(f, y, r: float, n: int, quad_points: int = 512, tol: float = 1e-12,
                            max_points: int = 1 << 16, return_sup: bool = False):
    """s_n = (2 pi J)^{-1} int_{dU_J(y, r)} S_{y,n+1}(zeta)^{-1} d zeta f(zeta).

    The boundary may consist of two loops; both are traversed counterclockwise
    and their contributions added. Radii close to |Im y| put the contour near
    the lemniscate, where the parametrization is nearly singular; the node
    count then grows by doubling until the result is stable.
    """
    y = as_cone_point(y, getattr(f, "spec", None))
    _require_nonreal(y)
    if not r > 0:
        raise InvalidArgumentError("the radius must be positive")
    if quad_points < 16 or quad_points % 2:
        raise InvalidArgumentError("quad_points must be an even number >= 16")
    val, sup, _ = _doubling(lambda M: _spherical_contour_once(f, y, r, n, M), quad_points, tol, max_points,
                            "Cassini")
    out = AlgebraElement(val, y.spec)
    return (out, sup) if return_sup else out


# ---------------------------------------------------------------------------
# Constants
# ---------------------------------------------------------------------------

def splitting_constant(spec: AlgebraSpec, J=None, samples: int = 2000, seed: int = 0) -> float:
    """H: sampled sup of the splitting-coordinate norm, including the base actually used at J."""
    H = cached_constants(spec, samples, seed).H
    if J is not None:
        H = max(H, splitting_base(J).operator_norm())
    return H


def cauchy_constant(spec: AlgebraSpec, J=None) -> float:
    """C = C_A (h + 1) H for the power-coefficient estimate."""
    k = cached_constants(spec)
    return k.C_A * (spec.h + 1) * splitting_constant(spec, J)


def spherical_coeff_constant(spec: AlgebraSpec, J=None) -> float:
    """C = C_A (h + 1) H Theta for the spherical-number estimate."""
    k = cached_constants(spec)
    return k.C_A * (spec.h + 1) * splitting_constant(spec, J) * _theta()


@lru_cache(maxsize=1)
def _theta():
    return theta_constant()


def power_remainder_constant(spec: AlgebraSpec, J=None) -> float:
    """C' = (1 + C_A^2) C_A (h + 1) H: component Taylor bounds lifted off the plane."""
    k = cached_constants(spec)
    return (1 + k.C_A ** 2) * k.C_A * (spec.h + 1) * splitting_constant(spec, J)


def spherical_remainder_constant(spec: AlgebraSpec, J=None) -> float:
    """C' = (1 + C_A^2) C_A (h + 1) H Theta."""
    return power_remainder_constant(spec, J) * _theta()


def spherical_bound_factor(r: float, eta: float, t: float) -> float:
    """(3r + 2 eta)(r + 2 eta)^2 / (r (r - t)^2)."""
    if not t < r:
        raise InvalidArgumentError("need tau < r")
    return (3 * r + 2 * eta) * (r + 2 * eta) ** 2 / (r * (r - t) ** 2)


# ---------------------------------------------------------------------------
# Remainders
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RemainderResult:
    direct: AlgebraElement  # f(x) minus the partial sum
    kernel: AlgebraElement  # the same quantity from the integral kernel
    bound: float
    coefficients: list = field(repr=False, default_factory=list)
    sup_f: float = math.nan


def _evaluate(f, x: ConePoint):
    if isinstance(f, StemPolynomial):
        return induce(f, x).coords
    if hasattr(f, "evaluate"):
        return f.evaluate(x, tail=False).value.coords
    J = x.j
    return _plane_values(f, J, np.array([x.z]))[0]


def _is_associative(spec):
    return spec.name in ("Complex", "Quaternion") or spec.name.startswith("Clifford")


def _phi_rows(J, c):
    """Rows Re(c) + J Im(c) for a complex array c."""
    c = np.asarray(c, dtype=complex)
    out = np.multiply.outer(c.imag, J)
    out[..., 0] += c.real
    return out


def _kernel_sum(spec, J, v, zeta, weight, F, assoc):
    """(2 pi J)^{-1} sum_k (zeta_k - v)^{-1} weight_k f_k evaluated at x = Phi_J(v).

    ``weight`` holds the remaining complex factors, line element included.
    Associative algebras use the pointwise product
    Delta_zeta(x)^{-1} (zeta^c - x) J^{-1} (weight) f(zeta) computed in A; the
    octonions use the same integrand formed in C_J, where the two agree.
    """
    if not assoc:
        return _close_with_inverse_J(spec, J, _plane_weighted_sum(spec, J, weight / (zeta - v), F))
    m = len(zeta)
    Jb = np.broadcast_to(J, (m, spec.dim))
    x = _phi_rows(J, np.full(m, v))
    D = (v - zeta) * (v - np.conj(zeta))
    left = spec.mul_batch(_phi_rows(J, 1.0 / D), _phi_rows(J, np.conj(zeta)) - x)
    left = spec.mul_batch(left, -Jb)
    left = spec.mul_batch(left, _phi_rows(J, weight))
    return spec.mul_batch(left, F).sum(axis=0) / (2 * math.pi)


def _kernel_doubling(once, quad_points, tol=1e-12, max_points=1 << 15):
    return _doubling(once, quad_points, tol, max_points, "remainder kernel")


def power_remainder(f, y, r: float, n: int, x, quad_points: int = 256, coefficients=None) -> RemainderResult:
    """f(x) - sum_{k<=n} (x - y)^{.k} a_k, directly and through the Taylor kernel, plus the bound.

    x must lie in Omega(y, r): both shadows z and conj(z) inside the disk B(w, r).
    Coefficients default to the contour values on dB_J(y, r).
    """
    spec = getattr(f, "spec", None)
    y = as_cone_point(y, spec)
    spec = y.spec
    x = as_cone_point(x, spec)
    w = y.z if y.canonical else complex(y.alpha, 0.0)
    z = x.z
    if not (abs(z - w) < r and abs(np.conj(z) - w) < r):
        raise InvalidArgumentError("x is outside Omega(y, r)")
    if coefficients is None:
        coefficients = [contour_coeff_power(f, y, r, k, quad_points) for k in range(n + 1)]
    partial = PowerSeries(y, coefficients).evaluate(x, tail=False).value.coords
    direct = _evaluate(f, x) - partial

    J, I = _frame(y, x)
    Jc = J.coords
    assoc = _is_associative(spec)

    def once(v):
        def run(M):
            th = np.arange(M) * (2 * math.pi / M)
            zeta = w + r * np.exp(1j * th)
            dz = 1j * r * np.exp(1j * th) * (2 * math.pi / M)
            F = _plane_values(f, J, zeta)
            weight = (v - w) ** (n + 1) * (zeta - w) ** (-n - 1) * dz
            nF = spec.norm_batch(F)
            val = _kernel_sum(spec, Jc, v, zeta, weight, F, assoc)
            return val, float(np.max(nF)), float(np.abs(weight / (zeta - v)) @ nF) / (2 * math.pi)
        return run

    vals = []
    sup = 0.0
    for v in (z, np.conj(z)):
        val, s_v, _ = _kernel_doubling(once(v), quad_points)
        vals.append(val)
        sup = max(sup, s_v)
    kernel = _lift(spec, vals[0], vals[1], I.coords, Jc)
    # the sup in the bound runs over both circles dB_J(y, r) and dB_J(y^c, r)
    th = np.arange(quad_points) * (2 * math.pi / quad_points)
    for c in (w, np.conj(w)):
        sup = max(sup, float(np.max(spec.norm_batch(_plane_values(f, J, c + r * np.exp(1j * th))))))
    s = sigma(x, y)
    bound = power_remainder_constant(spec, J) * sup * (s / r) ** n * s / (r - s) if s < r else math.inf
    return RemainderResult(AlgebraElement(direct, spec), AlgebraElement(kernel, spec), bound,
                           list(coefficients), sup)


def spherical_remainder(f, y, r: float, n: int, x, quad_points: int = 512, coefficients=None) -> RemainderResult:
    """f(x) - sum_{k<=n} S_{y,k}(x) s_k, directly and through the Cassini kernel, plus the bound."""
    spec = getattr(f, "spec", None)
    y = as_cone_point(y, spec)
    _require_nonreal(y)
    spec = y.spec
    x = as_cone_point(x, spec)
    t = tau(x, y)
    if not t < r:
        raise InvalidArgumentError("x is outside U(y, r): tau(x, y) >= r")
    if coefficients is None:
        coefficients = [contour_coeff_spherical(f, y, r, k, quad_points) for k in range(n + 1)]
    partial = SphericalSeries(y, coefficients).evaluate(x, tail=False).value.coords
    direct = _evaluate(f, x) - partial

    J, I = _frame(y, x)
    Jc = J.coords
    w = y.z
    assoc = _is_associative(spec)

    def once(v):
        Sv = complex(spherical_poly_complex(w, n + 1, v))

        def run(M):
            B = cassini_boundary(w, r, M)
            total = np.zeros(spec.dim)
            sup = l1 = 0.0
            for loop in B.loops:
                F = _plane_values(f, J, loop.z)
                nF = spec.norm_batch(F)
                sup = max(sup, float(np.max(nF)))
                weight = Sv / spherical_poly_complex(w, n + 1, loop.z) * loop.dz * (loop.period / M)
                total += _kernel_sum(spec, Jc, v, loop.z, weight, F, assoc)
                l1 += float(np.abs(weight / (loop.z - v)) @ nF) / (2 * math.pi)
            return total, sup, l1
        return run

    vals = []
    sup = 0.0
    for v in (x.z, np.conj(x.z)):
        val, s_v, _ = _kernel_doubling(once(v), quad_points)
        vals.append(val)
        sup = max(sup, s_v)
    kernel = _lift(spec, vals[0], vals[1], I.coords, Jc)
    factor = spherical_bound_factor(r, y.beta, t)
    bound = spherical_remainder_constant(spec, J) * sup * (t / r) ** n * factor
    return RemainderResult(AlgebraElement(direct, spec), AlgebraElement(kernel, spec), bound,
                           list(coefficients), sup)


# ---------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------

@dataclass
class ExpansionReport:
    method: str  # "deriv" | "system" | "contour"
    kind: str  # "power" | "spherical"
    coefficients: list
    residuals: dict = field(default_factory=dict)
    bounds: dict = field(default_factory=dict)

    def to_json_obj(self):
        return {
            "method": self.method,
            "kind": self.kind,
            "coefficients": [[float(v) for v in c.coords] for c in self.coefficients],
            "residuals": {k: float(v) for k, v in self.residuals.items()},
            "bounds": {k: float(v) for k, v in self.bounds.items()},
        }


def _max_rel(a, b):
    A = np.array([c.coords for c in a])
    B = np.array([c.coords for c in b])
    scale = max(1.0, float(np.max(np.linalg.norm(B, axis=1))))
    return float(np.max(np.linalg.norm(A - B, axis=1)) / scale)


def expand(F: StemPolynomial, y, N: int, method: str = "system", r: float | None = None,
           quad_points: int = 512) -> ExpansionReport:
    """Coefficients of F at y by one method, with residuals against the other two.

    ``deriv`` returns power coefficients a_n; ``system`` and ``contour`` return
    spherical numbers s_n (the contour radius defaults to |Im y| / 2, or 1 for real y).
    """
    y = as_cone_point(y, F.spec)
    if method not in ("deriv", "system", "contour"):
        raise InvalidArgumentError(f"unknown method {method!r}")
    if r is None:
        r = 0.5 * y.beta if y.canonical else 1.0
    res = {}
    bounds = {}
    if method == "deriv" or not y.canonical:
        coeffs = taylor_coeffs_by_derivative(F, y, N)
        if y.canonical:
            circ = [contour_coeff_power(F, y, r, k, quad_points) for k in range(N + 1)]
            res["contour"] = _max_rel(circ, coeffs)
            s = spherical_numbers_from_stem(F, y, 2 * N)
            back = [derivative_from_spherical(s, y, k) for k in range(N + 1)]
            res["system"] = _max_rel(back, coeffs)
        bounds["cauchy_constant"] = cauchy_constant(F.spec, y.j if y.canonical else None)
        return ExpansionReport("deriv", "power", coeffs, res, bounds)
    sys_s = spherical_numbers_from_stem(F, y, N)
    if method == "system":
        coeffs = sys_s
        res["cramer"] = _max_rel(spherical_numbers_from_stem(F, y, N, "cramer"), sys_s)
        try:
            cont = [contour_coeff_spherical(F, y, r, k, quad_points) for k in range(N + 1)]
            res["contour"] = _max_rel(cont, sys_s)
        except QuadratureError:
            res["contour"] = math.inf
    else:
        coeffs = [contour_coeff_spherical(F, y, r, k, quad_points) for k in range(N + 1)]
        res["system"] = _max_rel(sys_s, coeffs)
    M = min(N // 2, N)
    ders = taylor_coeffs_by_derivative(F, y, M)
    back = [derivative_from_spherical(coeffs, y, k) for k in range(M + 1)]
    res["deriv"] = _max_rel(back, ders)
    bounds["spherical_constant"] = spherical_coeff_constant(F.spec, y.j)
    return ExpansionReport(method, "spherical", coeffs, res, bounds)
