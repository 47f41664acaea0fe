"""Named property suite.

Each property draws its own samples from a seeded generator and reports how
many cases it checked, how many failed and the worst residual seen. The suite
is what ``hyperseries verify`` runs.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import expansion as ex
from .algebra import (
    AlgebraElement,
    clifford,
    compose,
    cone_decompose,
    is_unit_imaginary,
    octonions,
    quaternions,
    random_cone_batch,
    random_imaginary_units_batch,
    random_units_batch,
)
from .geometry import (
    cassini_boundary,
    delta_complex,
    spherical_bound_check,
    spherical_bound_residuals,
    normalized_length,
    sigma_batch,
    sto_inequality_check,
    tau_complex,
)
from .series import (
    PowerSeries,
    cached_constants,
    limit_laws_check,
    slice_powers,
    spherical_polys,
)
from .stem import (
    StemPolynomial,
    conjugate_derivative_residual,
    induce,
    induce_batch,
    representation_batch,
    slice_power_stem,
    slice_product,
    tensor_mul,
)


@dataclass(frozen=True)
class PropertyResult:
    name: str
    module: str
    checked: int
    failures: int
    worst: float

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.module}.{self.name} checked={self.checked} failures={self.failures} worst={self.worst:.3e}"


PROPERTIES: dict[str, tuple[str, Callable]] = {}


def _register(module, name):
    def deco(fn):
        PROPERTIES[name] = (module, fn)
        return fn
    return deco


def _algebras():
    return (quaternions(), octonions(), clifford(3))


def _tally(residuals, tol):
    r = np.asarray(residuals, dtype=float).ravel()
    r = r[~np.isnan(r)]
    bad = int(np.sum(~(r <= tol)))
    return len(r), bad, float(np.max(r)) if len(r) else 0.0


def _cone_rows(spec, alpha, beta, J):
    rows = J * beta[:, None]
    rows[:, 0] += alpha
    return rows


# ---------------------------------------------------------------------------
# algebra_core
# ---------------------------------------------------------------------------

@_register("algebra", "anti_involution")
def prop_anti_involution(rng, n):
    res = []
    for spec in _algebras():
        x = rng.standard_normal((n, spec.dim))
        y = rng.standard_normal((n, spec.dim))
        lhs = spec.conj(spec.mul_batch(x, y))
        rhs = spec.mul_batch(spec.conj(y), spec.conj(x))
        scale = np.linalg.norm(x, axis=1) * np.linalg.norm(y, axis=1)
        res.append(np.linalg.norm(lhs - rhs, axis=1) / scale)
    return _tally(np.concatenate(res), 1e-12)


@_register("algebra", "alternativity")
def prop_alternativity(rng, n):
    spec = octonions()
    x = rng.standard_normal((n, 8))
    y = rng.standard_normal((n, 8))
    m = spec.mul_batch
    xx = m(x, x)
    left = m(x, m(x, y)) - m(xx, y)
    right = m(m(y, x), x) - m(y, xx)
    scale = np.linalg.norm(x, axis=1) ** 2 * np.linalg.norm(y, axis=1)
    r = np.maximum(np.linalg.norm(left, axis=1), np.linalg.norm(right, axis=1)) / scale
    return _tally(r, 1e-10)


def _bracketings(word):
    """All full bracketings of a word, as nested tuples of letters."""
    if len(word) == 1:
        yield word[0]
        return
    for k in range(1, len(word)):
        for a in _bracketings(word[:k]):
            for b in _bracketings(word[k:]):
                yield (a, b)


def _evaluate_tree(spec, tree, env):
    if isinstance(tree, str):
        return env[tree]
    return spec.mul_batch(_evaluate_tree(spec, tree[0], env), _evaluate_tree(spec, tree[1], env))


@_register("algebra", "artin_bracketings")
def prop_artin(rng, n):
    spec = octonions()
    n = max(1, n // 20)
    x = random_units_batch(spec, rng, n)
    y = random_units_batch(spec, rng, n)
    env = {"x": x, "y": y}
    worst = []
    for L in range(3, 5):
        for word in itertools.product("xy", repeat=L):
            vals = [_evaluate_tree(spec, t, env) for t in _bracketings(word)]
            ref = vals[0]
            for v in vals[1:]:
                worst.append(np.linalg.norm(v - ref, axis=1))
    return _tally(np.concatenate(worst), 1e-10)


@_register("algebra", "quasi_banach")
def prop_quasi_banach(rng, n):
    res = []
    for spec in _algebras():
        k = cached_constants(spec)
        a, b, J = random_cone_batch(spec, rng, n)
        x = _cone_rows(spec, a, b, J)
        y = rng.standard_normal((n, spec.dim))
        nx, ny = spec.norm_batch(x), spec.norm_batch(y)
        nxy = spec.norm_batch(spec.mul_batch(x, y))
        nyx = spec.norm_batch(spec.mul_batch(y, x))
        scale = nx * ny
        res.append((k.c_A * scale - np.minimum(nxy, nyx)) / scale)
        z = rng.standard_normal((n, spec.dim))
        nz = spec.norm_batch(z)
        res.append((spec.norm_batch(spec.mul_batch(z, y)) - k.C_A * nz * ny) / (nz * ny))
    return _tally(np.concatenate(res), 1e-10)


@_register("algebra", "cone_roundtrip")
def prop_cone_roundtrip(rng, n):
    res = []
    n = min(n, 3000)
    for spec in _algebras():
        a, b, J = random_cone_batch(spec, rng, n)
        for i in range(n):
            p = cone_decompose(AlgebraElement(_cone_rows(spec, a[i:i + 1], b[i:i + 1], J[i:i + 1])[0], spec))
            q = compose(p.alpha, p.beta, p.j)
            err = max(abs(p.alpha - a[i]), abs(p.beta - b[i]), float(np.linalg.norm(p.j.coords - J[i])))
            err = max(err, float(np.linalg.norm(q.element.coords - p.element.coords)))
            res.append(err / max(1.0, abs(a[i]) + b[i]))
    return _tally(res, 1e-12)


@_register("algebra", "unit_sphere_characterization")
def prop_unit_sphere(rng, n):
    res = []
    n = min(n, 2000)
    for spec in _algebras():
        J = random_imaginary_units_batch(spec, rng, n)
        for row in J:
            ok = is_unit_imaginary(AlgebraElement(row, spec))
            perturbed = row.copy()
            perturbed[0] += 0.1
            bad = is_unit_imaginary(AlgebraElement(perturbed, spec)) or is_unit_imaginary(
                AlgebraElement(1.1 * row, spec))
            res.append(0.0 if ok and not bad else 1.0)
    return _tally(res, 0.5)


# ---------------------------------------------------------------------------
# slice_rep
# ---------------------------------------------------------------------------

def _random_stem(spec, rng, deg, a_valued=True):
    if a_valued:
        return StemPolynomial.from_a_coefficients(spec, rng.standard_normal((deg + 1, spec.dim)))
    return StemPolynomial(spec, rng.standard_normal((deg + 1, 2, spec.dim)))


@_register("slice_rep", "real_stem_product_pointwise")
def prop_real_product(rng, n):
    res = []
    n = min(n, 300)
    for spec in _algebras():
        for _ in range(n // 3 + 1):
            real = np.zeros((4, spec.dim))
            real[:, 0] = rng.standard_normal(4)
            F = StemPolynomial.from_a_coefficients(spec, real)
            G = _random_stem(spec, rng, 5)
            a, b, J = random_cone_batch(spec, rng, 1)
            x = compose(a[0], b[0], AlgebraElement(J[0], spec))
            lhs = induce(slice_product(F, G), x).coords
            rhs = spec.mul(induce(F, x).coords, induce(G, x).coords)
            res.append(np.linalg.norm(lhs - rhs) / max(1.0, np.linalg.norm(rhs)))
    return _tally(res, 1e-11)


@_register("slice_rep", "slice_product_convolution")
def prop_convolution(rng, n):
    res = []
    n = min(n, 300)
    for spec in _algebras():
        for _ in range(n // 3 + 1):
            F = _random_stem(spec, rng, 4)
            G = _random_stem(spec, rng, 3)
            P = slice_product(F, G)
            want = np.zeros((8, spec.dim))
            for i in range(5):
                for j in range(4):
                    want[i + j] += spec.mul(F.coeffs[i, 0], G.coeffs[j, 0])
            err = np.abs(P.coeffs[:, 0] - want).max() + np.abs(P.coeffs[:, 1]).max()
            if spec.name != "Octonion":
                H = _random_stem(spec, rng, 2)
                err = max(err, np.abs(slice_product(slice_product(F, G), H).coeffs
                                      - slice_product(F, slice_product(G, H)).coeffs).max() / 10)
            res.append(err)
    return _tally(res, 1e-11)


@_register("slice_rep", "representation_roundtrip")
def prop_representation(rng, n):
    res = []
    for spec in _algebras():
        F = _random_stem(spec, rng, 6)
        a, b, I = random_cone_batch(spec, rng, n)
        J = random_imaginary_units_batch(spec, rng, n)
        want = induce_batch(F, a, b, I)
        fz = induce_batch(F, a, b, J)
        fzb = induce_batch(F, a, b, -J)
        got = representation_batch(spec, fz, fzb, I, J)
        scale = np.maximum(1.0, np.linalg.norm(want, axis=1))
        res.append(np.linalg.norm(got - want, axis=1) / scale)
    return _tally(np.concatenate(res), 1e-11)


@_register("slice_rep", "holomorphic_stems")
def prop_holomorphic(rng, n):
    res = []
    n = min(n, 300)
    for spec in _algebras():
        for _ in range(n // 3 + 1):
            F = _random_stem(spec, rng, int(rng.integers(0, 10)))
            x = compose(rng.standard_normal(), abs(rng.standard_normal()) + 0.1,
                        AlgebraElement(random_imaginary_units_batch(spec, rng, 1)[0], spec))
            scale = max(1.0, float(np.max(np.abs(F.coeffs))) * (abs(x.z) + 1) ** F.degree)
            res.append(conjugate_derivative_residual(F, x) / scale)
    return _tally(res, 1e-12)


# ---------------------------------------------------------------------------
# geometry
# ---------------------------------------------------------------------------

def _triples(spec, rng, n):
    pts = [random_cone_batch(spec, rng, n) for _ in range(3)]
    # a third of the triples share one plane so the in-plane branch is exercised
    share = rng.random(n) < 1 / 3
    for k in (1, 2):
        sign = np.where(rng.random(n) < 0.5, 1.0, -1.0)
        pts[k][2][share] = sign[share, None] * pts[0][2][share]
    return pts


@_register("geometry", "sigma_metric_axioms")
def prop_sigma(rng, n):
    res = []
    for spec in (quaternions(), clifford(3)):
        (ax, bx, Jx), (ay, by, Jy), (au, bu, Ju) = _triples(spec, rng, n)
        # points with J and -J in a shared plane are handled by flipping to beta >= 0 form
        sxy = sigma_batch(ax, bx, Jx, ay, by, Jy)
        syx = sigma_batch(ay, by, Jy, ax, bx, Jx)
        syu = sigma_batch(ay, by, Jy, au, bu, Ju)
        sxu = sigma_batch(ax, bx, Jx, au, bu, Ju)
        sxx = sigma_batch(ax, bx, Jx, ax, bx, Jx)
        res.append(sxu - sxy - syu)
        res.append(np.abs(sxy - syx))
        res.append(sxx)
        x = _cone_rows(spec, ax, bx, Jx)
        y = _cone_rows(spec, ay, by, Jy)
        res.append(spec.norm_batch(x - y) - sxy)
    return _tally(np.concatenate(res), 1e-10)


@_register("geometry", "tau_pseudometric")
def prop_tau(rng, n):
    z = rng.standard_normal((3, n)) + 1j * rng.standard_normal((3, n))
    t = lambda a, b: tau_complex(a, b)  # noqa: E731
    res = [t(z[0], z[2]) - t(z[0], z[1]) - t(z[1], z[2]),
           np.abs(t(z[0], z[1]) - t(z[1], z[0])),
           t(z[0], np.conj(z[0])), t(z[0], z[0])]
    return _tally(np.concatenate(res), 1e-10)


@_register("geometry", "delta_norm_identity")
def prop_delta_norm(rng, n):
    res = []
    for spec in _algebras():
        ax, bx, Jx = random_cone_batch(spec, rng, n)
        ay, by, Jy = random_cone_batch(spec, rng, n)
        x = _cone_rows(spec, ax, bx, Jx)
        x[:, 0] -= ay
        D = spec.mul_batch(x, x)
        D[:, 0] += by ** 2
        want = np.abs(delta_complex(ax + 1j * bx, ay + 1j * by))
        got = spec.norm_batch(D)
        res.append(np.abs(got - want) / np.maximum(want, 1e-300))
    return _tally(np.concatenate(res), 1e-12)


@_register("geometry", "cassini_boundary_residual")
def prop_cassini(rng, n):
    res = []
    for _ in range(min(n, 500)):
        w = complex(rng.standard_normal(), rng.standard_normal())
        r = float(np.exp(rng.uniform(-2, 2)))
        res.append(cassini_boundary(w, r, 64).residual())
    return _tally(res, 1e-10)


@_register("geometry", "normalized_length_shape")
def prop_length_shape(rng, n):
    g1 = np.linspace(0.02, 0.98, 25)
    g2 = np.linspace(1.02, 6.0, 25)
    L1 = np.array([normalized_length(g) for g in g1])
    L2 = np.array([normalized_length(g) for g in g2])
    bad = [float(np.sum(np.diff(L1) <= 0)), float(np.sum(np.diff(L2) >= 0))]
    bad.append(0.0 if abs(L1[0] - 4 * math.pi) < 0.05 * 4 * math.pi else 1.0)
    bad.append(0.0 if L2[-1] > 2 * math.pi and L2[-1] < L2[0] else 1.0)
    return len(g1) + len(g2), int(sum(b > 0 for b in bad)), float(max(bad))


@_register("geometry", "spherical_poly_bounds")
def prop_spherical_bounds(rng, n):
    w = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    z = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    zeta = 2 * (rng.standard_normal(n) + 1j * rng.standard_normal(n))
    k = rng.integers(0, 21, size=n)
    ok = spherical_bound_check(w, z, zeta, k)
    res = spherical_bound_residuals(w, z, zeta, k)
    worst = max(float(np.nanmax(-v)) for v in res.values())
    return 4 * n, sum(not v for v in ok.values()), max(worst, 0.0)


@_register("geometry", "sto_inequality")
def prop_sto(rng, n):
    z = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    w = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return n, 0 if sto_inequality_check(z, w) else 1, 0.0


# ---------------------------------------------------------------------------
# series_engine
# ---------------------------------------------------------------------------

def _pair(spec, rng, scale=0.5):
    a, b, J = random_cone_batch(spec, rng, 2, scale)
    return (compose(a[0], b[0], AlgebraElement(J[0], spec)),
            compose(a[1], b[1], AlgebraElement(J[1], spec)))


def stem_power_value(y, k, x):
    """Value at x of the function induced by (z - y)^k, computed on the stem side.

    The stem value (z - y) in A (x) C is raised to the k-th power by repeated
    tensor products at the shadow of x, then induced. Expanding into monomials
    first would lose accuracy to binomial cancellation at large k.
    """
    spec = y.spec
    base = np.zeros((2, spec.dim))
    base[0] = -y.element.coords
    base[0, 0] += x.z.real
    base[1, 0] = x.z.imag
    val = np.zeros((2, spec.dim))
    val[0, 0] = 1.0
    for _ in range(k):
        val = tensor_mul(spec, val, base)
    if not x.canonical:
        return val[0]
    return val[0] + spec.mul(x.j.coords, val[1])


@_register("series", "slice_power_vs_stem")
def prop_slice_power(rng, n):
    res = []
    for spec in _algebras():
        for _ in range(min(n, 60) // 3 + 1):
            y, x = _pair(spec, rng)
            P = slice_powers(y, 30, x)
            for k in (0, 1, 2, 7, 30):
                want = stem_power_value(y, k, x)
                res.append(np.linalg.norm(P[k] - want) / max(1.0, np.linalg.norm(want)))
            # the monomial-expanded stem agrees at low order
            want = induce(slice_power_stem(StemPolynomial.linear(spec, y.element), 7), x).coords
            res.append(np.linalg.norm(P[7] - want) / max(1.0, np.linalg.norm(want)))
    return _tally(res, 1e-10)


@_register("series", "power_estimate")
def prop_power_estimate(rng, n):
    res = []
    for spec in _algebras():
        CA = cached_constants(spec).C_A
        for _ in range(min(n, 60) // 3 + 1):
            y, x = _pair(spec, rng)
            from .geometry import sigma
            s = sigma(x, y)
            P = spec.norm_batch(slice_powers(y, 40, x))
            bound = CA * (1 + CA ** 2) * s ** np.arange(41)
            res.append(np.max((P - bound) / np.maximum(bound, 1e-300)))
    return _tally(res, 1e-10)


@_register("series", "spherical_sandwich")
def prop_sandwich(rng, n):
    res = []
    for spec in _algebras():
        k = cached_constants(spec)
        for _ in range(min(n, 60) // 3 + 1):
            y, x = _pair(spec, rng)
            S = spec.norm_batch(spherical_polys(y, 21, x))
            D = abs(complex(delta_complex(x.z, y.z)))
            d = spec.norm(x.element.coords - y.element.coords)
            for m in range(10):
                mid = D ** m * d
                val = S[2 * m + 1]
                scale = max(mid, 1e-300)
                res.append((k.c_A * mid - val) / scale)
                res.append((val - k.C_A * mid) / scale)
                res.append(abs(S[2 * m] - D ** m) / max(D ** m, 1e-300))
    return _tally(res, 1e-9)


@_register("series", "geometric_partial_sums")
def prop_partial_sums(rng, n):
    res = []
    spec = quaternions()
    for _ in range(min(n, 40)):
        y, x = _pair(spec, rng, 0.3)
        from .geometry import sigma
        s = sigma(x, y)
        R = 2 * s + 0.5
        coeffs = [AlgebraElement(rng.standard_normal(4) * R ** -k, spec) for k in range(80)]
        ev = PowerSeries(y, coeffs, order=20).evaluate(x)
        P20, bound = ev.value, ev.tail_bound
        P79 = PowerSeries(y, coeffs).evaluate(x, tail=False).value
        res.append((np.linalg.norm(P79.coords - P20.coords) - bound) / max(bound, 1e-300))
    return _tally(res, 1e-9)


@_register("series", "limit_laws")
def prop_limit_laws(rng, n):
    res = []
    for spec in (quaternions(), clifford(3)):
        for _ in range(min(n, 100) // 2):
            y, x = _pair(spec, rng)
            rep = limit_laws_check(y, x, 200)
            res.append(max(rep.power_deviation, rep.spherical_deviation))
    return _tally(res, 0.02)


# ---------------------------------------------------------------------------
# expansion
# ---------------------------------------------------------------------------

def _centre(spec, rng):
    J = AlgebraElement(random_imaginary_units_batch(spec, rng, 1)[0], spec)
    return compose(rng.standard_normal() * 0.5, rng.uniform(0.5, 1.5), J)


def _rel(a, b):
    A = np.array([c.coords for c in a])
    B = np.array([c.coords for c in b])
    scale = max(1.0, float(np.max(np.linalg.norm(B, axis=1))))
    return float(np.max(np.linalg.norm(A - B, axis=1))) / scale


def three_way_case(spec, rng, deg=None):
    """Residuals (power deriv vs contour, spherical system vs contour, taylor-bis vs deriv, cauchy slack)."""
    deg = int(rng.integers(0, 13)) if deg is None else deg
    F = _random_stem(spec, rng, deg)
    y = _centre(spec, rng)
    N = 12
    a_der = ex.taylor_coeffs_by_derivative(F, y, N)
    r = float(rng.uniform(0.3, 1.5))
    circ, sups = [], []
    for k in range(N + 1):
        c, sup = ex.contour_coeff_power(F, y, r, k, 128, return_sup=True)
        circ.append(c)
        sups.append(sup)
    s_sys = ex.spherical_numbers_from_stem(F, y, 2 * N)
    rr = float(rng.uniform(0.4, 1.6)) * y.beta
    # indices above the degree vanish; on small ovals they only measure roundoff amplified by rr^{-n}
    s_con = [ex.contour_coeff_spherical(F, y, rr, k, 512) for k in range(N + 1)]
    back = [ex.derivative_from_spherical(s_sys, y, k) for k in range(N + 1)]
    C = ex.cauchy_constant(spec, y.j)
    cauchy = max((c.norm() - C * r ** -k * sups[k]) / max(C * r ** -k * sups[k], 1e-300)
                 for k, c in enumerate(circ))
    return {
        "deriv_contour": _rel(circ, a_der),
        "system_contour": _rel(s_con, s_sys[: N + 1]),
        "system_deriv": _rel(back, a_der),
        "cauchy": cauchy,
    }


@_register("expansion", "three_way_agreement")
def prop_three_way(rng, n):
    res = []
    for spec in (quaternions(), clifford(3)):
        for _ in range(max(1, min(n, 50) // 2)):
            d = three_way_case(spec, rng)
            res.append(max(d["deriv_contour"], d["system_contour"], d["system_deriv"]))
            res.append(d["cauchy"])
    return _tally(res, 1e-8)


def partial_identity_exact(n: int, l: int) -> tuple[bool, bool]:
    """Exact integer check of the Taylor coefficients of S_{y,l} at y and at conj(y).

    With u = z - w and c = 2 i im(w), S_{y,l} is homogeneous of degree l in
    (u, c), so setting c = 1 leaves integer polynomials whose u^n coefficient
    must equal e_{2n,l} (at y) and (-1)^l e_{2n+1,l} (-1)^{l-n} (at conj(y),
    where the expansion variable is z - conj(w) and z - w = v - c).
    """
    m, odd = divmod(l, 2)
    # at y: u^m (u + 1)^m u^odd
    at_y = np.polymul(np.poly1d([1, 0]) ** (m + odd), np.poly1d([1, 1]) ** m).coeffs[::-1]
    # at conj(y): v = z - conj(w), z - w = v - c: v^m (v - 1)^(m + odd)
    at_yc = np.polymul(np.poly1d([1, -1]) ** (m + odd), np.poly1d([1, 0]) ** m).coeffs[::-1]
    cy = int(at_y[n]) if n < len(at_y) else 0
    cyc = int(at_yc[n]) if n < len(at_yc) else 0
    want_y = ex.spherical_entry(2 * n, l) if l >= n else 0
    want_yc = (-1) ** l * ex.spherical_entry(2 * n + 1, l) * (-1) ** (l - n) if l >= n else 0
    return cy == want_y, cyc == want_yc


@_register("expansion", "partial_identities")
def prop_partial(rng, n):
    ok = [partial_identity_exact(k, l) for k in range(7) for l in range(13)]
    bad = sum((not a) + (not b) for a, b in ok)
    return 2 * len(ok), bad, float(bad)


@_register("expansion", "taylor_bis_roundtrip")
def prop_roundtrip(rng, n):
    """Spherical numbers -> derivative data (taylor-bis) -> triangular solve gives the numbers back.

    Errors are measured on the unknowns of the triangular system, (2 im y)^n s_n,
    at order 12 (the degree range of the three-way check).
    """
    res = []
    for spec in (quaternions(), clifford(3), octonions()):
        for _ in range(max(1, min(n, 60) // 3)):
            y = _centre(spec, rng)
            for order in (12,):
                w = (2 * y.beta) ** np.arange(order + 1)
                s = [AlgebraElement(rng.standard_normal(spec.dim) / w[k], spec) for k in range(order + 1)]
                at_y = [ex.derivative_from_spherical(s + [spec.zero()] * order, y, m) * math.factorial(m)
                        for m in range(order // 2 + 1)]
                at_yc = [_derivative_at_conj(s, y, m) * math.factorial(m) for m in range((order + 1) // 2)]
                back = ex.spherical_numbers_by_system(at_y, at_yc, y, order)
                A = np.array([c.coords for c in back]) * w[:, None]
                B = np.array([c.coords for c in s]) * w[:, None]
                res.append(float(np.max(np.linalg.norm(A - B, axis=1)) / np.max(np.linalg.norm(B, axis=1))))
    return _tally(res, 1e-12)


def _derivative_at_conj(s, y, n):
    """(1/n!) d^n S/dx^n at y^c = sum_l (-1)^l e_{2n+1,l} (-2 im y)^{l-n} s_l."""
    spec = y.spec
    J = y.j.coords
    acc = np.zeros(spec.dim)
    for l in range(n, min(2 * n + 2, len(s))):
        e = ex.spherical_entry(2 * n + 1, l)
        if e:
            c = (-1) ** l * e * (-2j * y.beta) ** (l - n)
            acc += c.real * s[l].coords + c.imag * spec.mul(J, s[l].coords)
    return AlgebraElement(acc, spec)


@_register("expansion", "quadrature_doubling")
def prop_quadrature(rng, n):
    """Trapezoidal error ratio per node doubling for series analytic on a disk twice the contour radius."""
    res = []
    spec = quaternions()
    for _ in range(max(1, min(n, 40))):
        y = _centre(spec, rng)
        coeffs = rng.standard_normal((90, spec.dim)) * 2.0 ** -np.arange(90)[:, None]
        f = PowerSeries(y, coeffs)
        k = int(rng.integers(0, 4))
        exact = coeffs[k]
        errs = [np.linalg.norm(ex._power_contour_once(f, y, 1.0, k, M)[0] - exact) for M in (16, 32, 64)]
        for e0, e1 in zip(errs, errs[1:]):
            if e0 > 1e-11:
                res.append(e1 / e0)
    return _tally(res, 1e-2)


def _sample_until(rng, w, r, inside):
    """Uniform proposals around w in the upper half plane, shrinking the box until one is inside."""
    h = r
    while True:
        for _ in range(50):
            z = w + complex(*rng.uniform(-h, h, 2))
            if z.imag > 0 and inside(z):
                return z
        h *= 0.5


def remainder_case(spec, rng, kind):
    """One sampled (f, y, r, x, n) remainder check; returns (excess over bound, kernel mismatch)."""
    F = _random_stem(spec, rng, int(rng.integers(1, 9)))
    y = _centre(spec, rng)
    n = int(rng.integers(0, 8))
    J = AlgebraElement(random_imaginary_units_batch(spec, rng, 1)[0], spec)
    if kind == "power":
        r = 2 * y.beta + float(rng.uniform(0.2, 1.0))
        # x with both shadows inside B(w, r)
        z = _sample_until(rng, y.z, r, lambda z: max(abs(z - y.z), abs(np.conj(z) - y.z)) < 0.95 * r)
        x = compose(z.real, z.imag, J)
        R = ex.power_remainder(F, y, r, n, x, quad_points=128)
    else:
        r = float(rng.uniform(0.3, 2.0)) * y.beta
        z = _sample_until(rng, y.z, r, lambda z: float(tau_complex(z, y.z)) < 0.95 * r)
        x = compose(z.real, z.imag, J)
        R = ex.spherical_remainder(F, y, r, n, x, quad_points=256)
    val = R.direct.norm()
    excess = (val - R.bound) / max(R.bound, 1e-300)
    mism = np.linalg.norm(R.direct.coords - R.kernel.coords) / max(1.0, R.sup_f)
    return excess, mism


@_register("expansion", "remainder_bounds")
def prop_remainders(rng, n):
    res = []
    for spec in (quaternions(), clifford(3), octonions()):
        for kind in ("power", "spherical"):
            for _ in range(max(1, min(n, 60) // 6)):
                excess, mism = remainder_case(spec, rng, kind)
                res.append(max(excess, mism - 1e-8))
    return _tally(res, 0.0)


# ---------------------------------------------------------------------------

def run_suite(samples: int = 2000, seed: int = 0, names=None) -> list:
    """Run the named properties (all by default) in registration order."""
    chosen = list(PROPERTIES) if names is None else list(names)
    out = []
    for i, name in enumerate(chosen):
        if name not in PROPERTIES:
            raise KeyError(f"unknown property {name!r}")
        module, fn = PROPERTIES[name]
        rng = np.random.default_rng([seed, i])
        checked, failures, worst = fn(rng, samples)
        out.append(PropertyResult(name, module, int(checked), int(failures), float(worst)))
    return out
