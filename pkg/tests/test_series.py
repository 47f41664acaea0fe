import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import special

from hyperseries import (
    PowerSeries,
    SphericalSeries,
    StemPolynomial,
    abel_radius,
    compose,
    eval_power_series,
    eval_spherical_series,
    induce,
    limit_laws_check,
    octonions,
    quaternions,
    sigma,
    slice_power,
    spherical_poly,
    tau,
)
from hyperseries.algebra import random_cone_batch, random_imaginary_units_batch
from hyperseries.series import slice_powers, spherical_poly_stem, spherical_polys
from hyperseries.stem import slice_power_stem
from hyperseries.verify import stem_power_value


def random_point(spec, rng, scale=1.0):
    a, b, J = random_cone_batch(spec, rng, 1, scale)
    return compose(a[0], b[0], spec.element(J[0]))


def example_spherical_numbers(N, J):
    """Spherical numbers of f = 1 - I_x J at y = J: s_0 = 2, then 4^-k C(2k,k) and -4^-k C(2k,k) J."""
    spec = J.spec
    out = []
    for n in range(N + 1):
        k = n // 2
        c = special.comb(2 * k, k, exact=True) / 4 ** k
        if n == 0:
            out.append(2 * spec.one())
        elif n % 2 == 0:
            out.append(c * spec.one())
        else:
            out.append(-c * J)
    return out


def test_slice_power_examples(H):
    zero = compose(0.0, 0.0, H["i"])
    assert slice_power(zero, 2, compose(0, 1, H["j"])).allclose(-H.one(), 1e-15)
    y = compose(0, 1, H["i"])
    x = compose(0, 1, H["j"])
    want = induce(StemPolynomial.linear(H, H["i"]), x)
    assert slice_power(y, 1, x).allclose(want, 1e-15)
    assert want.allclose(H["j"] - H["i"], 1e-15)
    for p in (x, zero, y):
        assert slice_power(y, 0, p).allclose(H.one(), 0.0)


def test_slice_power_real_centre_is_ordinary_power(O, rng):
    y = compose(0.7, 0.0, O.basis(1))
    x = random_point(O, rng)
    v = x.element - 0.7
    p = O.one()
    for n in range(8):
        assert slice_power(y, n, x).allclose(p, 1e-12)
        p = p * v


def test_slice_power_in_plane(H):
    y = compose(0.2, 0.5, H["k"])
    x = compose(-0.4, 1.2, H["k"])
    d = x.element - y.element
    p = H.one()
    for n in range(10):
        assert slice_power(y, n, x).allclose(p, 1e-12)
        p = p * d


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**31), st.sampled_from(["H", "O"]))
def test_slice_power_two_paths(seed, name):
    spec = quaternions() if name == "H" else octonions()
    rng = np.random.default_rng(seed)
    y, x = random_point(spec, rng, 0.5), random_point(spec, rng, 0.5)
    P = slice_powers(y, 30, x)
    for n in (0, 1, 3, 10, 30):
        want = stem_power_value(y, n, x)
        assert np.linalg.norm(P[n] - want) / max(1.0, np.linalg.norm(want)) < 1e-10


def test_spherical_poly_examples(H, rng):
    y = compose(0, 1, H["i"])
    x = compose(0, 1, H["j"])
    assert spherical_poly(y, 0, x).allclose(H.one(), 0.0)
    assert spherical_poly(y, 2, x).allclose(H.zero(), 1e-15)
    y, x = random_point(H, rng), random_point(H, rng)
    D = spherical_poly(y, 2, x).norm()
    for m in range(1, 7):
        assert math.isclose(spherical_poly(y, 2 * m, x).norm(), D ** m, rel_tol=1e-12)


def test_spherical_polys_match_stem(O, rng):
    y, x = random_point(O, rng), random_point(O, rng)
    S = spherical_polys(y, 9, x)
    for n in range(10):
        assert np.allclose(S[n], induce(spherical_poly_stem(y, n), x).coords, atol=1e-12)


def test_geometric_power_series(H):
    zero = compose(0.0, 0.0, H["i"])
    P = PowerSeries(zero, lambda n: H.one().coords, order=60)
    v = eval_power_series(P, compose(0.5, 0.0, H["i"]))
    assert v.value.allclose(2 * H.one(), 1e-15)
    assert not v.divergent
    # the true tail is 2^-60; the bound carries the constant C_A (1 + C_A^2) = 2
    assert 2 ** -60 <= v.tail_bound <= 2 ** -58
    assert v.radius == pytest.approx(1.0)


def test_power_series_divergence_flag(H):
    zero = compose(0.0, 0.0, H["i"])
    P = PowerSeries(zero, lambda n: H.one().coords, order=60)
    v = eval_power_series(P, compose(0.0, 2.0, H["j"]))
    assert v.divergent
    assert v.confidence == "proved"


def test_exp_series_matches_complex_plane(H):
    y = compose(0.3, 0.8, H["j"])
    coeffs = [H.one().coords / math.factorial(n) for n in range(40)]
    P = PowerSeries(y, coeffs)
    x = compose(-0.2, 1.7, H["j"])
    # sum (z - w)^n / n! = exp(z - w) in C_j
    e = complex(np.exp(x.z - y.z))
    want = H.element([e.real, 0, e.imag, 0])
    assert eval_power_series(P, x).value.allclose(want, 1e-12)


def test_power_series_in_plane_with_distant_conjugate(H):
    # the conjugate shadow lies outside the disk of convergence; the value must still be exact
    y = compose(0.0, 2.0, H["i"])
    coeffs = [H.one().coords * 0.5 ** n for n in range(200)]
    P = PowerSeries(y, coeffs)
    x = compose(0.1, 2.3, H["i"])
    e = 1 / (1 - 0.5 * (x.z - y.z))
    assert eval_power_series(P, x).value.allclose(H.element([e.real, e.imag, 0, 0]), 1e-12)


def test_power_series_matches_stem(O, rng):
    y = random_point(O, rng)
    coeffs = rng.standard_normal((6, 8))
    P = PowerSeries(y, coeffs)
    x = random_point(O, rng)
    assert P(x).allclose(induce(P.stem(), x), 1e-10)


def test_spherical_series_constant(H, rng):
    y = compose(0, 1, H["k"])
    a = H.element([1, 2, 3, 4])
    S = SphericalSeries(y, [a.coords])
    assert eval_spherical_series(S, random_point(H, rng)).value.allclose(a, 0.0)


def test_spherical_series_on_sphere(H, rng):
    y = compose(0.3, 1.1, H["i"])
    s = rng.standard_normal((8, 4))
    x = compose(0.3, 1.1, H["j"])
    val = SphericalSeries(y, s).evaluate(x).value
    want = H.element(s[0]) + (x.element - y.element) * H.element(s[1])
    assert val.allclose(want, 1e-12)


def test_spherical_series_example_limit(H):
    J = H["k"]
    y = compose(0, 1, J)
    s = example_spherical_numbers(400, J)
    x = compose(0, 1, H["i"])
    # tau(i, k) = 0, so only s_0 + (x - y) s_1 remains; check a point off the sphere as well
    got = SphericalSeries(y, [c.coords for c in s]).evaluate(x).value
    assert got.allclose(H.one() - H["i"] * J, 1e-12)
    x = compose(0.1, 0.8, H["i"])
    assert tau(x, y) < 0.7
    got = SphericalSeries(y, [c.coords for c in s]).evaluate(x).value
    assert got.allclose(H.one() - H["i"] * J, 1e-12)


def test_spherical_tail_bound(H, rng):
    y = compose(0, 1, H["k"])
    s = [c.coords for c in example_spherical_numbers(120, H["k"])]
    S = SphericalSeries(y, s, order=30)
    x = compose(0.1, 0.8, H["i"])
    v = S.evaluate(x)
    exact = H.one() - H["i"] * H["k"]
    assert (v.value - exact).norm() <= v.tail_bound
    assert v.tail_bound < 1e-6


def test_abel_radius_examples(H):
    assert abel_radius(np.ones(50)).R == pytest.approx(1.0)
    assert abel_radius(2.0 ** np.arange(50)).R == pytest.approx(0.5)
    assert abel_radius(np.zeros(10)).R == math.inf
    s = example_spherical_numbers(400, H["k"])
    est = abel_radius(s, (200, 400))
    assert est.R_fit == pytest.approx(1.0, rel=1e-4)
    assert 1.0 <= est.R < 1.01


def test_limit_laws_in_plane(H):
    y = compose(0.2, 0.7, H["j"])
    x = compose(-0.4, 1.1, H["j"])
    rep = limit_laws_check(y, x, 50)
    assert np.allclose(rep.power_roots, sigma(x, y), rtol=1e-12)


def test_limit_laws_random(H, rng):
    for _ in range(5):
        y, x = random_point(H, rng, 0.5), random_point(H, rng, 0.5)
        rep = limit_laws_check(y, x, 200)
        assert rep.power_deviation < 0.02
        assert rep.spherical_deviation < 0.02


def test_limit_laws_on_sphere(H):
    y = compose(0.2, 0.7, H["j"])
    x = compose(0.2, 0.7, H["k"])
    rep = limit_laws_check(y, x, 40)
    assert rep.tau == 0.0
    assert np.all(rep.spherical_roots[1:] == 0.0)


def test_series_json_roundtrip(H, rng):
    y = random_point(H, rng)
    P = PowerSeries(y, rng.standard_normal((5, 4)))
    Q = PowerSeries.from_json_obj(H, P.to_json_obj())
    assert np.array_equal(P.coeffs, Q.coeffs)
    assert Q.order == P.order


def test_random_unit_helper_is_unit(O, rng):
    J = random_imaginary_units_batch(O, rng, 20)
    assert np.allclose(np.linalg.norm(J, axis=1), 1.0)
    assert np.allclose(J[:, 0], 0.0)
