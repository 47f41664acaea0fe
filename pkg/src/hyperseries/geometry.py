"""The sigma metric, the Cassini pseudo-metric tau, their balls, and Cassini ovals.

Points of the quadratic cone are handled through their complex shadows
z = alpha + i beta (beta >= 0). For the Cassini boundary we use the
parametrisation u**2 = r**2 e^{i theta} - eta**2 with u = z - Re(w) and
eta = |Im w|, which gives points exact to rounding, a closed-form dz/dtheta and
uniform parameter spacing on every loop.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy import integrate, optimize, special

from .algebra import (
    DEFAULT_TOL,
    AlgebraSpec,
    ConePoint,
    InvalidArgumentError,
    as_cone_point,
)
from .stem import StemPolynomial


class QuadratureError(RuntimeError):
    """A quadrature did not reach its tolerance."""


# ---------------------------------------------------------------------------
# sigma and tau
# ---------------------------------------------------------------------------

def same_plane(x: ConePoint, y: ConePoint, tol=1e-12) -> bool:
    """Whether x lies in the complex plane C_J of y (reals lie in every plane)."""
    if not x.canonical or not y.canonical:
        return True
    d1 = np.linalg.norm(x.j.coords - y.j.coords)
    d2 = np.linalg.norm(x.j.coords + y.j.coords)
    return bool(min(d1, d2) <= tol)


def sigma(x, y, spec: AlgebraSpec | None = None) -> float:
    """sigma_A(x, y): ||x - y|| inside a common plane, else |z - conj(w)|."""
    x = as_cone_point(x, spec)
    y = as_cone_point(y, spec)
    if same_plane(x, y):
        return x.spec.norm(x.element.coords - y.element.coords)
    return math.hypot(x.alpha - y.alpha, x.beta + y.beta)


def sigma_max_form(z: complex, w: complex) -> float:
    """max(|z - w|, |z - conj(w)|), the off-plane value of sigma in shadows."""
    return max(abs(z - w), abs(z - np.conj(w)))


def sigma_batch(ax, bx, Jx, ay, by, Jy, tol=1e-12):
    """Vectorised sigma for cone points given as (alpha, beta, J) arrays."""
    ax, bx, ay, by = (np.asarray(v, dtype=float) for v in (ax, bx, ay, by))
    Jx = np.asarray(Jx, dtype=float)
    Jy = np.asarray(Jy, dtype=float)
    dplus = np.linalg.norm(Jx - Jy, axis=-1)
    dminus = np.linalg.norm(Jx + Jy, axis=-1)
    real = (bx == 0) | (by == 0)
    off = np.hypot(ax - ay, bx + by)
    # inside a common plane: |z - w| or |z - conj w|
    in_plus = np.hypot(ax - ay, bx - by)
    in_minus = off
    out = off.copy()
    m = (dplus <= tol) | real
    out[m] = in_plus[m]
    m2 = (dminus <= tol) & ~m
    out[m2] = in_minus[m2]
    return out


def delta_complex(z, w):
    """Delta_w(z) = (z - w)(z - conj w)."""
    z = np.asarray(z, dtype=complex)
    w = np.asarray(w, dtype=complex)
    return (z - w) * (z - np.conj(w))


def tau_complex(z, w):
    return np.sqrt(np.abs(delta_complex(z, w)))


def tau(x, y, spec: AlgebraSpec | None = None) -> float:
    """tau_A(x, y) = sqrt(|Delta_w(z)|) from the complex shadows."""
    x = as_cone_point(x, spec)
    y = as_cone_point(y, spec)
    return float(tau_complex(x.z, y.z))


def delta_value(y, x, spec: AlgebraSpec | None = None) -> np.ndarray:
    """Delta_y(x) = x^2 - x t(y) + n(y) computed in A (coordinates)."""
    x = as_cone_point(x, spec)
    y = as_cone_point(y, spec)
    # shifted form (x - alpha_y)^2 + beta_y^2 avoids cancellation near the sphere of y
    u = x.element.coords.copy()
    u[0] -= y.alpha
    out = x.spec.mul(u, u).copy()
    out[0] += y.beta ** 2
    return out


def tau_direct(x, y, spec: AlgebraSpec | None = None) -> float:
    """tau_A(x, y) = sqrt(||Delta_y(x)||_A) computed in the algebra."""
    x = as_cone_point(x, spec)
    return math.sqrt(x.spec.norm(delta_value(y, x)))


def characteristic_poly(y, spec: AlgebraSpec | None = None) -> StemPolynomial:
    """Stem z^2 - z t(y) + n(y) of Delta_y (real coefficients)."""
    y = as_cone_point(y, spec)
    sp = y.spec
    return StemPolynomial.from_a_coefficients(
        sp, [y.alpha ** 2 + y.beta ** 2, -2.0 * y.alpha, 1.0]
    )


def spherical_poly_complex(w, n, z):
    """S_{w,n}(z) in C: Delta_w(z)^m, times (z - w) when n = 2m + 1."""
    z = np.asarray(z, dtype=complex)
    m, odd = divmod(int(n), 2)
    val = delta_complex(z, w) ** m
    return val * (z - w) if odd else val


# ---------------------------------------------------------------------------
# Inequalities used as property predicates
# ---------------------------------------------------------------------------

def sto_inequality_check(z, w, slack=1e-12):
    """sqrt(|D|+eta^2) - eta <= |z - w| <= sqrt(|D|+eta^2) + eta, elementwise."""
    z = np.asarray(z, dtype=complex)
    w = np.asarray(w, dtype=complex)
    eta = np.abs(w.imag)
    root = np.sqrt(np.abs(delta_complex(z, w)) + eta ** 2)
    dist = np.abs(z - w)
    scale = slack * np.maximum(1.0, root + eta)
    ok = (root - eta <= dist + scale) & (dist <= root + eta + scale)
    return bool(np.all(ok))


def sigma_dominates_norm(x, y, spec: AlgebraSpec | None = None, slack=1e-12) -> bool:
    """||x - y||_A <= sigma_A(x, y)."""
    x = as_cone_point(x, spec)
    y = as_cone_point(y, spec)
    s = sigma(x, y)
    return x.spec.norm(x.element.coords - y.element.coords) <= s + slack * max(1.0, s)


def spherical_bound_residuals(w, z, zeta, n):
    """Slack of the four growth and separation bounds for S_{w,n+1} (nonnegative means it holds).

    Returns a dict of arrays keyed ``upper``, ``lower``, ``separation`` and ``outer``. Entries of
    ``separation`` and ``outer`` are NaN where tau(w, zeta) <= tau(w, z), the
    case those inequalities do not cover.
    """
    w, z, zeta = (np.asarray(v, dtype=complex) for v in (w, z, zeta))
    n = np.asarray(n)
    eta = np.abs(w.imag)
    s = tau_complex(z, w)
    r = tau_complex(zeta, w)
    S_z = np.abs(_spherical_poly_vec(w, n + 1, z))
    S_zeta = np.abs(_spherical_poly_vec(w, n + 1, zeta))
    root_s = np.sqrt(s ** 2 + eta ** 2)
    u1 = s ** n * (root_s + eta) - S_z
    u2 = S_z - s ** n * (root_s - eta)
    covered = r > s
    u3 = np.abs(zeta - z) - (r - s) ** 2 / (3 * r + 2 * eta)
    u4 = S_zeta - r ** (n + 1) * r / (r + 2 * eta)
    u3 = np.where(covered, u3, np.nan)
    u4 = np.where(covered, u4, np.nan)
    return {"upper": u1, "lower": u2, "separation": u3, "outer": u4}


def _spherical_poly_vec(w, n, z):
    m, odd = np.divmod(n, 2)
    val = delta_complex(z, w) ** m
    return np.where(odd == 1, val * (z - w), val)


def spherical_bound_check(w, z, zeta, n, rel=1e-10) -> dict:
    """Whether each spherical-polynomial bound holds on all samples (relative slack ``rel``)."""
    res = spherical_bound_residuals(w, z, zeta, n)
    out = {}
    scale_terms = {
        "upper": np.abs(_spherical_poly_vec(np.asarray(w), np.asarray(n) + 1, np.asarray(z))),
        "lower": np.abs(_spherical_poly_vec(np.asarray(w), np.asarray(n) + 1, np.asarray(z))),
        "separation": np.abs(np.asarray(zeta) - np.asarray(z)),
        "outer": np.abs(_spherical_poly_vec(np.asarray(w), np.asarray(n) + 1, np.asarray(zeta))),
    }
    for key, v in res.items():
        tolv = rel * np.maximum(1.0, scale_terms[key])
        ok = np.isnan(v) | (v >= -tolv)
        out[key] = bool(np.all(ok))
    return out


# ---------------------------------------------------------------------------
# Cassini ovals
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CassiniLoop:
    label: str
    theta: np.ndarray
    z: np.ndarray
    dz: np.ndarray  # dz/dtheta
    period: float


@dataclass(frozen=True)
class CassiniBoundary:
    w: complex
    r: float
    topology: str  # "one-loop" | "lemniscate" | "two-loop"
    loops: tuple

    @property
    def points(self) -> np.ndarray:
        return np.concatenate([lp.z for lp in self.loops])

    def residual(self) -> float:
        """max | |Delta_w(z)| - r^2 | over the emitted points."""
        return float(np.max(np.abs(np.abs(delta_complex(self.points, self.w)) - self.r ** 2)))


def cassini_topology(eta, r, tol=0.0):
    if abs(r - eta) <= tol * max(1.0, r):
        return "lemniscate"
    return "one-loop" if r > eta else "two-loop"


def cassini_boundary(w: complex, r: float, n_points: int = 256, offset: float = 0.5) -> CassiniBoundary:
    """Boundary of {z : |(z - w)(z - conj w)| < r^2}.

    ``n_points`` is the number of nodes per loop; nodes sit at
    theta_k = (k + offset) h so the lemniscate's double point is never hit with
    the default offset. One loop (r >= eta) uses theta in [0, 4 pi); two loops
    (r < eta) use theta in [0, 2 pi) each, both counterclockwise.
    """
    if not r > 0:
        raise InvalidArgumentError("the radius must be positive")
    if n_points < 8:
        raise InvalidArgumentError("at least 8 boundary points are needed")
    w = complex(w)
    c = w.real
    eta = abs(w.imag)
    r = float(r)
    topo = cassini_topology(eta, r)
    if r >= eta:
        period = 4 * math.pi
        th = (np.arange(n_points) + offset) * (period / n_points)
        u = r * np.exp(0.5j * th) * np.sqrt(1 - (eta / r) ** 2 * np.exp(-1j * th))
        loops = [_loop("outer", th, c + u, r, u, period)]
    else:
        period = 2 * math.pi
        th = (np.arange(n_points) + offset) * (period / n_points)
        s = np.sqrt(1 - (r / eta) ** 2 * np.exp(1j * th))
        up = 1j * eta * s
        um = -1j * eta * s
        loops = [_loop("upper", th, c + up, r, up, period), _loop("lower", th, c + um, r, um, period)]
    return CassiniBoundary(w, r, topo, tuple(loops))


def _loop(label, th, z, r, u, period):
    with np.errstate(divide="ignore", invalid="ignore"):
        dz = 1j * r ** 2 * np.exp(1j * th) / (2 * u)
    return CassiniLoop(label, th, z, dz, period)


def _quad(f, a, b, args, tol):
    # roundoff warnings near the lemniscate are judged by the returned error estimate instead
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        return integrate.quad(f, a, b, args=args, epsabs=tol, epsrel=tol, limit=200)


def _length_integrand(t, eta, r):
    # theta = t^2 removes the inverse square-root singularity at theta = 0
    th = t * t
    return 2 * t * r * r / math.sqrt(abs(r * r * complex(math.cos(th), math.sin(th)) - eta * eta))


def cassini_arclength(eta: float, r: float, tol: float = 1e-13) -> float:
    """Length of the Cassini boundary with half focal distance eta and radius r.

    Integrates |dz/dtheta| = r^2 / (2|u|) over all loops, which reduces to
    2 * int_0^pi r^2 / sqrt|r^2 e^{i theta} - eta^2| d theta.
    """
    if eta < 0 or not r > 0:
        raise InvalidArgumentError("need eta >= 0 and r > 0")
    if eta == 0:
        return 2 * math.pi * r
    val, err = _quad(_length_integrand, 0.0, math.sqrt(math.pi), (eta, r), tol)
    if not np.isfinite(val) or err > 1e4 * tol * max(1.0, abs(val)):
        raise QuadratureError(f"arc-length quadrature error estimate {err:g}")
    return 2 * val


def lemniscate_length_closed(gamma: float, tol: float = 1e-13) -> float:
    """l(i, gamma) from the one-dimensional closed integral formula."""
    k = 4 * gamma ** 2 / (1 + gamma ** 2) ** 2
    one_minus_k = ((1 - gamma ** 2) / (1 + gamma ** 2)) ** 2

    def integrand(u):
        # phi = pi/2 - u^2, and 1 - k sin^2 phi = (1 - k) + k sin^2(u^2) without cancellation
        if u == 0.0:
            return 2.0 if one_minus_k == 0.0 else 0.0
        base = one_minus_k + k * math.sin(u * u) ** 2
        return 2 * u * base ** -0.25

    val, err = _quad(integrand, 0.0, math.sqrt(0.5 * math.pi), (), tol)
    if err > 1e4 * tol * max(1.0, abs(val)):
        raise QuadratureError(f"closed-form quadrature error estimate {err:g}")
    return 4 * gamma ** 2 / math.sqrt(1 + gamma ** 2) * val


def lemniscate_length_exact() -> float:
    """l(i, 1) = Gamma(1/4)^2 / sqrt(pi)."""
    return float(special.gamma(0.25) ** 2 / math.sqrt(math.pi))


def normalized_length(gamma: float, method: str = "boundary") -> float:
    """L(i, gamma) = gamma^-2 (1 + sqrt(1 + gamma^2)) l(i, gamma)."""
    if not gamma > 0:
        raise InvalidArgumentError("gamma must be positive")
    ell = cassini_arclength(1.0, gamma) if method == "boundary" else lemniscate_length_closed(gamma)
    return (1 + math.sqrt(1 + gamma ** 2)) * ell / gamma ** 2


def theta_closed_form() -> float:
    """(1 + sqrt 2) Gamma(1/4)^2 / (2 pi^{3/2})."""
    return float((1 + math.sqrt(2)) * special.gamma(0.25) ** 2 / (2 * math.pi ** 1.5))


def theta_search(lo=0.5, hi=2.0, xtol=1e-9):
    """Bounded scalar maximisation of L(i, gamma)/(2 pi); returns (gamma*, value)."""
    res = optimize.minimize_scalar(lambda g: -normalized_length(g) / (2 * math.pi), bounds=(lo, hi),
                                   method="bounded", options={"xatol": xtol})
    return float(res.x), float(-res.fun)


def theta_constant() -> float:
    """sup over gamma of the normalised Cassini length divided by 2 pi."""
    return theta_search()[1]


# ---------------------------------------------------------------------------
# Balls
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SigmaBall:
    """Sigma ball: the disk B_J(y, r) in C_J joined with the circular set Omega(y, r)."""

    center: ConePoint
    radius: float

    def __post_init__(self):
        if not self.radius > 0:
            raise InvalidArgumentError("the radius must be positive")

    @property
    def eta(self):
        return self.center.beta

    @property
    def omega_nonempty(self) -> bool:
        """Omega(y, r) is nonempty iff the disks B(w, r), B(conj w, r) meet, i.e. r > eta."""
        return self.radius > self.eta

    def contains(self, x) -> bool:
        return sigma(x, self.center) < self.radius

    def in_disk(self, x) -> bool:
        x = as_cone_point(x, self.center.spec)
        return same_plane(x, self.center) and sigma(x, self.center) < self.radius

    def in_omega(self, x) -> bool:
        x = as_cone_point(x, self.center.spec)
        w = self.center.z
        return abs(x.z - w) < self.radius and abs(x.z - np.conj(w)) < self.radius

    def boundary_slices(self, n_points=256):
        """Shadow curves: the circle bounding B_J and the lens bounding Omega (if any)."""
        w = self.center.z
        th = np.arange(n_points) * (2 * math.pi / n_points)
        out = [("disk", th, w + self.radius * np.exp(1j * th))]
        if self.omega_nonempty:
            z = w + self.radius * np.exp(1j * th)
            zb = np.conj(w) + self.radius * np.exp(1j * th)
            lens = np.concatenate([z[np.abs(z - np.conj(w)) <= self.radius],
                                   zb[np.abs(zb - w) <= self.radius]])
            ph = np.angle(lens - w.real)
            order = np.argsort(ph)
            out.append(("lens", ph[order], lens[order]))
        return out


@dataclass(frozen=True)
class CassiniBall:
    """tau ball U_A(y, r), the circularisation of U(w, r)."""

    center: ConePoint
    radius: float

    def __post_init__(self):
        if not self.radius > 0:
            raise InvalidArgumentError("the radius must be positive")

    @property
    def topology(self) -> str:
        return cassini_topology(self.center.beta, self.radius, tol=DEFAULT_TOL)

    def contains(self, x) -> bool:
        return tau(x, self.center) < self.radius

    def boundary(self, n_points=256) -> CassiniBoundary:
        return cassini_boundary(self.center.z, self.radius, n_points)
