"""Slice powers, spherical polynomials, truncated series and Abel radii.

Every evaluation works through one complex plane C_J at a time, where all
quantities commute, and lifts to a general point alpha + beta I with the
representation formula

    f(alpha + beta I) = (f_J(z) + f_J(conj z)) / 2 - I (J (f_J(z) - f_J(conj z))) / 2.

For the octonions this fixes the bracketing of every product: coefficients
multiply plane elements from the right inside C_J, and I, J act last.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np

from .algebra import (
    AlgebraElement,
    AlgebraSpec,
    ConePoint,
    InvalidArgumentError,
    algebra_constants,
    as_cone_point,
    cone_decompose,
    NotInConeError,
)
from .geometry import sigma, tau
from .stem import StemPolynomial


@lru_cache(maxsize=32)
def cached_constants(spec: AlgebraSpec, samples: int = 2000, seed: int = 0):
    return algebra_constants(spec, samples, seed)


# ---------------------------------------------------------------------------
# Plane bookkeeping
# ---------------------------------------------------------------------------

def _frame(y: ConePoint, x: ConePoint):
    """Units (J, I) for the representation formula centred on the plane of y."""
    if y.canonical:
        J = y.j
        I = x.j if x.canonical else y.j
    elif x.canonical:
        J = I = x.j
    else:
        J = I = y.j  # both real: any unit works
    return J, I


def _lift(spec, fz, fzb, I, J):
    """Representation formula on coordinate arrays of shape (..., d)."""
    a = np.asarray(fz)
    b = np.asarray(fzb)
    diff = a - b
    if diff.ndim == 1:
        odd = spec.mul(I, spec.mul(J, diff))
    else:
        odd = spec.mul_batch(np.broadcast_to(I, diff.shape), spec.mul_batch(np.broadcast_to(J, diff.shape), diff))
    return 0.5 * (a + b) - 0.5 * odd


def _plane_side(I, J, tol=1e-12):
    """+1 if I = J, -1 if I = -J, else 0."""
    if np.linalg.norm(I - J) <= tol:
        return 1
    if np.linalg.norm(I + J) <= tol:
        return -1
    return 0


def _phi(J, c):
    """Coordinates of Re(c) + J Im(c) for complex arrays c: shape c.shape + (d,)."""
    c = np.asarray(c, dtype=complex)
    out = np.multiply.outer(c.imag, J)
    out[..., 0] += c.real
    return out


# ---------------------------------------------------------------------------
# Slice powers and spherical polynomials
# ---------------------------------------------------------------------------

def slice_powers(y, N: int, x, spec: AlgebraSpec | None = None) -> np.ndarray:
    """All (x - y)^{.n} for n = 0..N as an (N+1, d) array.

    Uses ((1 - IJ)/2) Phi_J((z - w)^n) + ((1 + IJ)/2) Phi_J((conj z - w)^n).
    """
    y = as_cone_point(y, spec)
    x = as_cone_point(x, y.spec)
    sp = y.spec
    J, I = _frame(y, x)
    w = y.z if y.canonical else complex(y.alpha, 0.0)
    z = x.z
    n = np.arange(N + 1)
    p = (z - w) ** n
    q = (np.conj(z) - w) ** n
    side = _plane_side(I.coords, J.coords)
    if side:
        # x = Phi_J(z) or Phi_J(conj z): the other shadow power would only add cancellation
        return _phi(J.coords, p if side > 0 else q)
    s = 0.5 * (p + q)
    dlt = 0.5 * (p - q)
    IJ = sp.mul(I.coords, J.coords)
    # (IJ) Phi_J(c) = Re(c) IJ + Im(c) (IJ)J and (IJ)J = -I by alternativity
    out = _phi(J.coords, s)
    out -= np.multiply.outer(dlt.real, IJ)
    out += np.multiply.outer(dlt.imag, I.coords)
    return out


def slice_power(y, n: int, x, spec: AlgebraSpec | None = None) -> AlgebraElement:
    """(x - y)^{.n}: the value at x of the slice function induced by (z - y)^n."""
    if n < 0:
        raise InvalidArgumentError("n must be >= 0")
    y = as_cone_point(y, spec)
    return AlgebraElement(slice_powers(y, n, x)[n], y.spec)


def spherical_polys(y, N: int, x, spec: AlgebraSpec | None = None) -> np.ndarray:
    """All S_{y,n}(x) for n = 0..N as an (N+1, d) array.

    S_{y,2m}(x) = Delta_y(x)^m in C_I and S_{y,2m+1}(x) = Delta_y(x)^m (x - y).
    """
    y = as_cone_point(y, spec)
    x = as_cone_point(x, y.spec)
    sp = y.spec
    Ix = x.j.coords if x.canonical else (y.j.coords if y.canonical else x.j.coords)
    w = y.z
    D = (x.z - w) * (x.z - np.conj(w))
    m = np.arange(N // 2 + 1)
    Dm = D ** m
    v = x.element.coords - y.element.coords
    Iv = sp.mul(Ix, v)
    out = np.zeros((N + 1, sp.dim))
    even = _phi(Ix, Dm)
    out[0::2] = even[: len(out[0::2])]
    odd_count = len(out[1::2])
    out[1::2] = np.multiply.outer(Dm.real[:odd_count], v) + np.multiply.outer(Dm.imag[:odd_count], Iv)
    return out


def spherical_poly(y, n: int, x, spec: AlgebraSpec | None = None) -> AlgebraElement:
    if n < 0:
        raise InvalidArgumentError("n must be >= 0")
    y = as_cone_point(y, spec)
    return AlgebraElement(spherical_polys(y, n, x)[n], y.spec)


def spherical_poly_stem(y, n: int, spec: AlgebraSpec | None = None) -> StemPolynomial:
    """Stem of S_{y,n}: Delta_y^m, times (z - y) for odd n."""
    from .geometry import characteristic_poly
    from .stem import slice_power_stem, slice_product

    y = as_cone_point(y, spec)
    m, odd = divmod(n, 2)
    out = slice_power_stem(characteristic_poly(y), m)
    if odd:
        out = slice_product(out, StemPolynomial.linear(y.spec, y.element))
    return out


# ---------------------------------------------------------------------------
# Series
# ---------------------------------------------------------------------------

def _coeff_array(spec, coeffs, count):
    if callable(coeffs):
        rows = [coeffs(n) for n in range(count)]
    else:
        rows = list(coeffs)[:count]
    arr = np.zeros((count, spec.dim))
    for n, c in enumerate(rows):
        if isinstance(c, AlgebraElement):
            arr[n] = c.coords
        elif isinstance(c, (int, float)):
            arr[n, 0] = c
        else:
            arr[n] = np.asarray(c, dtype=float)
    return arr


@dataclass(frozen=True)
class SeriesValue:
    value: AlgebraElement
    tail_bound: float
    divergent: bool
    confidence: str  # "proved" | "plane-only" | "heuristic"
    distance: float  # sigma (power) or tau (spherical) from the centre
    radius: float
    partial_norms: np.ndarray = field(repr=False, default=None)


class _Series:
    kind = ""

    def __init__(self, center, coeffs, order=None, spec: AlgebraSpec | None = None):
        self.center = as_cone_point(center, spec)
        self.spec = self.center.spec
        self._callable = callable(coeffs)
        if self._callable:
            if order is None:
                raise InvalidArgumentError("a truncation order is needed for callable coefficients")
            self._fn = coeffs
            self.order = int(order)
            self._stored = _coeff_array(self.spec, coeffs, self.order + 1)
        else:
            arr = _coeff_array(self.spec, coeffs, len(coeffs))
            self._fn = None
            self.order = len(arr) - 1 if order is None else int(order)
            if self.order < 0:
                raise InvalidArgumentError("empty coefficient list")
            self._stored = arr
        self._stored.setflags(write=False)

    @property
    def coeffs(self) -> np.ndarray:
        """The coefficients a_0..a_N used for evaluation, shape (N+1, d)."""
        return self._stored[: self.order + 1]

    def coefficient_array(self, count):
        """The first ``count`` coefficients (callables are sampled; lists are zero-padded)."""
        if self._fn is not None:
            return _coeff_array(self.spec, self._fn, count)
        out = np.zeros((count, self.spec.dim))
        k = min(count, len(self._stored))
        out[:k] = self._stored[:k]
        return out

    def tail_coefficient_norms(self, horizon=None):
        """Norms of a_n for n beyond the truncation order (a finite list, or a sample)."""
        N = self.order
        if self._fn is None:
            rest = self._stored[N + 1:]
            return self.spec.norm_batch(rest) if len(rest) else np.zeros(0)
        T = horizon or max(200, 4 * N)
        rest = _coeff_array(self.spec, lambda n: self._fn(N + 1 + n), T)
        return self.spec.norm_batch(rest)

    def radius(self):
        count = max(self.order + 1, len(self._stored)) if self._fn is None else max(4 * self.order, 200)
        if count < 2:
            return math.inf
        arr = self.coefficient_array(count)
        lo = max(1, (count - 1) // 2)
        return abel_radius(arr, (lo, count - 1), spec=self.spec).R

    def to_json_obj(self):
        return {
            "kind": self.kind,
            "center": [float(v) for v in self.center.element.coords],
            "coeffs": [[float(v) for v in row] for row in self.coeffs],
            "order": self.order,
        }

    @classmethod
    def from_json_obj(cls, spec, obj):
        center = spec.element(obj["center"])
        return cls(center, [np.asarray(c, dtype=float) for c in obj["coeffs"]], obj.get("order"))

    def __call__(self, x):
        return self.evaluate(x).value

    def plane(self, J, v):
        """Values of the series at Re(v) + J Im(v) (rows), for complex v."""
        v = np.atleast_1d(np.asarray(v, dtype=complex))
        jc = J.coords if isinstance(J, AlgebraElement) else np.asarray(J, dtype=float)
        jel = AlgebraElement(jc, self.spec)
        out = np.zeros((len(v), self.spec.dim))
        for k, vk in enumerate(v):
            if vk.imag >= 0:
                pt = _point(self.spec, vk.real, vk.imag, jel)
            else:
                pt = _point(self.spec, vk.real, -vk.imag, -jel)
            out[k] = self.evaluate(pt, tail=False).value.coords
        return out


def _point(spec, a, b, j):
    from .algebra import compose

    return compose(a, b, j)


class PowerSeries(_Series):
    """f(x) = sum_n (x - y)^{.n} a_n truncated at ``order``."""

    kind = "power"

    def plane_sums(self, J, v):
        """f_J(v) = sum_n Phi_J((v - w)^n) a_n for complex v, with J the centre's unit."""
        y = self.center
        w = y.z if y.canonical else complex(y.alpha, 0.0)
        v = np.atleast_1d(np.asarray(v, dtype=complex))
        A = self.coeffs
        JA = self.spec.mul_batch(np.broadcast_to(J, A.shape), A)
        P = (v[:, None] - w) ** np.arange(len(A))[None, :]
        return P.real @ A + P.imag @ JA

    def evaluate(self, x, tail=True, constants=None) -> SeriesValue:
        y = self.center
        x = as_cone_point(x, self.spec)
        J, I = _frame(y, x)
        value = self._value(J, I, x)
        dist = sigma(x, y)
        R = self.radius()
        if not tail:
            return SeriesValue(AlgebraElement(value, self.spec), math.nan, False, "", dist, R)
        C = (constants or cached_constants(self.spec)).C_A
        norms = self.tail_coefficient_norms()
        N = self.order
        bound = _tail_sum(norms, dist, N + 1, callable_tail=self._fn is not None)
        bound *= C * (1 + C * C)
        partial = _partial_norms_power(self, x)
        divergent = _diverges(partial) or (dist > R * (1 + 1e-12) and self._fn is not None)
        confidence = _confidence(self.spec, self.coeffs, same=_in_plane(x, y))
        return SeriesValue(AlgebraElement(value, self.spec), bound, bool(divergent), confidence, dist, R, partial)

    def _value(self, J, I, x):
        # inside the plane of the centre only one shadow contributes; the other
        # may lie outside the disk of convergence and must not enter the sum
        side = _plane_side(I.coords, J.coords)
        if side:
            return self.plane_sums(J.coords, np.array([x.z if side > 0 else np.conj(x.z)]))[0]
        fz, fzb = self.plane_sums(J.coords, np.array([x.z, np.conj(x.z)]))
        return _lift(self.spec, fz, fzb, I.coords, J.coords)

    def stem(self) -> StemPolynomial:
        """Expanded stem sum_n (z - y)^n a_n (finite truncation)."""
        from .stem import slice_power_stem, slice_product

        y = self.center
        lin = StemPolynomial.linear(self.spec, y.element)
        out = StemPolynomial(self.spec, np.zeros((1, 2, self.spec.dim)))
        for n, a in enumerate(self.coeffs):
            if not np.any(a):
                continue
            out = out + slice_product(slice_power_stem(lin, n), StemPolynomial.constant(self.spec, a))
        return out


class SphericalSeries(_Series):
    """S(x) = sum_n S_{y,n}(x) s_n truncated at ``order``."""

    kind = "spherical"

    def evaluate(self, x, tail=True, constants=None) -> SeriesValue:
        y = self.center
        x = as_cone_point(x, self.spec)
        value = _spherical_terms(self.spec, y, x, self.coeffs).sum(axis=0)
        dist = tau(x, y)
        R = self.radius()
        if not tail:
            return SeriesValue(AlgebraElement(value, self.spec), math.nan, False, "", dist, R)
        C = (constants or cached_constants(self.spec)).C_A
        norms = self.tail_coefficient_norms()
        N = self.order
        xy = self.spec.norm(x.element.coords - y.element.coords)
        bound = _spherical_tail(norms, dist, xy, N + 1, C, callable_tail=self._fn is not None)
        partial = np.linalg.norm(np.cumsum(_spherical_terms(self.spec, y, x, self.coeffs), axis=0), axis=1)
        divergent = _diverges(partial) or (dist > R * (1 + 1e-12) and self._fn is not None)
        confidence = _confidence(self.spec, self.coeffs, same=_in_plane(x, y))
        return SeriesValue(AlgebraElement(value, self.spec), bound, bool(divergent), confidence, dist, R, partial)


def _spherical_terms(spec, y, x, coeffs):
    """Rows S_{y,n}(x) s_n grouped as Phi_I(D^m) ((x - y) s_n) for odd n."""
    N = len(coeffs) - 1
    Ix = x.j.coords if x.canonical else (y.j.coords if y.canonical else x.j.coords)
    w = y.z
    D = (x.z - w) * (x.z - np.conj(w))
    n = np.arange(N + 1)
    Dm = D ** (n // 2)
    v = x.element.coords - y.element.coords
    inner = coeffs.copy()
    odd = n % 2 == 1
    if odd.any():
        inner[odd] = spec.mul_batch(np.broadcast_to(v, coeffs[odd].shape), coeffs[odd])
    Iinner = spec.mul_batch(np.broadcast_to(Ix, inner.shape), inner)
    return Dm.real[:, None] * inner + Dm.imag[:, None] * Iinner


def _in_plane(x, y):
    from .geometry import same_plane

    return same_plane(x, y)


def _confidence(spec, coeffs, same):
    """Divergence claims are only backed off the plane of y when all coefficients lie in the cone."""
    return "proved" if same or mark_in_cone(coeffs, spec) else "plane-only"


def _tail_sum(norms, dist, n0, callable_tail):
    if len(norms) == 0:
        return 0.0
    n = np.arange(n0, n0 + len(norms))
    with np.errstate(over="ignore", invalid="ignore"):
        terms = norms * dist ** n.astype(float)
    total = float(np.sum(terms))
    if callable_tail:
        total += _geometric_remainder(terms)
    return total


def _spherical_tail(norms, t, xy, n0, C, callable_tail):
    if len(norms) == 0:
        return 0.0
    n = np.arange(n0, n0 + len(norms))
    m = n // 2
    with np.errstate(over="ignore", invalid="ignore"):
        base = t ** (2.0 * m)
    factor = np.where(n % 2 == 1, C * xy, 1.0)
    terms = C * factor * base * norms
    total = float(np.sum(terms))
    if callable_tail:
        total += _geometric_remainder(terms)
    return total


def _geometric_remainder(terms):
    """Extrapolate a sampled tail beyond its horizon by the last observed ratio."""
    tail = terms[-20:]
    nz = tail[tail > 0]
    if len(nz) < 2:
        return 0.0
    q = (nz[-1] / nz[0]) ** (1.0 / (len(nz) - 1))
    if not q < 1:
        return math.inf
    return float(nz[-1] * q / (1 - q))


def _partial_norms_power(series: PowerSeries, x):
    y = series.center
    J, I = _frame(y, x)
    sp = series.spec
    A = series.coeffs
    w = y.z if y.canonical else complex(y.alpha, 0.0)
    n = np.arange(len(A))
    pz = (x.z - w) ** n
    pzb = (np.conj(x.z) - w) ** n
    JA = sp.mul_batch(np.broadcast_to(J.coords, A.shape), A)
    tz = pz.real[:, None] * A + pz.imag[:, None] * JA
    tzb = pzb.real[:, None] * A + pzb.imag[:, None] * JA
    side = _plane_side(I.coords, J.coords)
    terms = tz if side > 0 else tzb if side < 0 else _lift(sp, tz, tzb, I.coords, J.coords)
    return np.linalg.norm(np.cumsum(terms, axis=0), axis=1)


def _diverges(partial_norms, factor=1e3):
    """Three successive partial-sum norms increasing beyond factor x the initial one."""
    p = np.asarray(partial_norms)
    if len(p) < 4:
        return False
    ref = max(p[0], 1e-300)
    big = p > factor * ref
    inc = np.diff(p) > 0
    run = 0
    for k in range(1, len(p)):
        if big[k] and inc[k - 1]:
            run += 1
            if run >= 3:
                return True
        else:
            run = 0
    return False


def eval_power_series(P: PowerSeries, x, constants=None) -> SeriesValue:
    return P.evaluate(x, constants=constants)


def eval_spherical_series(S: SphericalSeries, x, constants=None) -> SeriesValue:
    return S.evaluate(x, constants=constants)


# ---------------------------------------------------------------------------
# Radii and limit laws
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RadiusEstimate:
    R: float
    window: tuple
    diagnostics: np.ndarray  # ||a_n||^{1/n} for n in the window
    R_fit: float  # from a log-linear fit with a power-law correction


def abel_radius(coeffs, window=None, spec: AlgebraSpec | None = None) -> RadiusEstimate:
    """Root-test radius R = 1 / max_{n in window} ||a_n||^{1/n}.

    ``coeffs`` may be algebra elements or coordinate rows. The fit estimate
    regresses log ||a_n|| on (n, log n, 1) over the window, which is exact for
    sequences of the form C n^p q^n.
    """
    rows = []
    for c in coeffs:
        if isinstance(c, AlgebraElement):
            rows.append(c.norm())
        elif spec is not None:
            rows.append(spec.norm(np.asarray(c, dtype=float)))
        else:
            rows.append(float(np.linalg.norm(np.atleast_1d(np.asarray(c, dtype=float)))))
    norms = np.asarray(rows, dtype=float)
    if window is None:
        window = (max(1, (len(norms) - 1) // 2), len(norms) - 1)
    lo, hi = int(window[0]), int(window[1])
    lo = max(lo, 1)
    if hi < lo or hi >= len(norms):
        raise InvalidArgumentError(f"window {window} is empty or exceeds {len(norms)} coefficients")
    n = np.arange(lo, hi + 1)
    a = norms[lo: hi + 1]
    roots = a ** (1.0 / n)
    top = float(np.max(roots))
    R = math.inf if top == 0 else 1.0 / top
    nz = a > 0
    R_fit = math.inf
    if np.count_nonzero(nz) >= 3:
        X = np.column_stack([n[nz], np.log(n[nz]), np.ones(np.count_nonzero(nz))])
        coef, *_ = np.linalg.lstsq(X, np.log(a[nz]), rcond=None)
        R_fit = math.exp(-coef[0])
    elif top == 0:
        R_fit = math.inf
    else:
        R_fit = R
    return RadiusEstimate(R, (lo, hi), roots, R_fit)


@dataclass(frozen=True)
class LimitLawReport:
    sigma: float
    tau: float
    power_roots: np.ndarray  # ||(x - y)^{.n}||^{1/n}, n = 1..N
    spherical_roots: np.ndarray  # ||S_{y,n}(x)||^{1/n}, n = 1..N
    power_deviation: float  # |root_N - sigma|, relative to sigma when sigma > 0
    spherical_deviation: float


def limit_laws_check(y, x, N: int = 200, spec: AlgebraSpec | None = None) -> LimitLawReport:
    if N < 10:
        raise InvalidArgumentError("N must be at least 10")
    y = as_cone_point(y, spec)
    x = as_cone_point(x, y.spec)
    sp = y.spec
    n = np.arange(1, N + 1)
    P = slice_powers(y, N, x)[1:]
    S = spherical_polys(y, N, x)[1:]
    pr = sp.norm_batch(P) ** (1.0 / n)
    sr = sp.norm_batch(S) ** (1.0 / n)
    s = sigma(x, y)
    t = tau(x, y)
    pd = abs(pr[-1] - s) / s if s > 0 else abs(pr[-1])
    sd = abs(sr[-1] - t) / t if t > 0 else abs(sr[-1])
    return LimitLawReport(s, t, pr, sr, float(pd), float(sd))


def mark_in_cone(coeff_rows, spec, tol=1e-9):
    """Whether every coefficient lies in the quadratic cone."""
    for row in coeff_rows:
        try:
            cone_decompose(AlgebraElement(np.asarray(row, dtype=float), spec), tol)
        except NotInConeError:
            return False
    return True
