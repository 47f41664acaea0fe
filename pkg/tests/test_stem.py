import math
import warnings

import numpy as np
import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperseries import StemPolynomial, compose, induce, octonions, quaternions, representation_formula, slice_product
from hyperseries.algebra import InvalidArgumentError, random_imaginary_units_batch
from hyperseries.stem import (
    StemWarning,
    conjugate_derivative_residual,
    cullen_derivative_at,
    slice_derivative,
    spherical_derivative,
)


def random_stem(spec, rng, deg, a_valued=False):
    c = rng.standard_normal((deg + 1, 2, spec.dim))
    if a_valued:
        c[:, 1] = 0
    return StemPolynomial(spec, c)


def random_unit(spec, rng):
    return spec.element(random_imaginary_units_batch(spec, rng, 1)[0])


def test_induce_examples(H):
    z2 = StemPolynomial.monomial(H, 2)
    assert induce(z2, compose(0, 1, H["j"])).allclose(-H.one(), 1e-15)
    za = StemPolynomial.monomial(H, 1, H["k"])
    # alpha a + J (beta a) at x = i gives i k = -j
    assert induce(za, compose(0, 1, H["i"])).allclose(-H["j"], 1e-15)
    a = H.element([1, -2, 3, 0.5])
    const = StemPolynomial.constant(H, a)
    for x in (compose(0.3, 2, H["k"]), compose(-1, 0, H["i"])):
        assert induce(const, x).allclose(a, 0.0)


def test_induce_real_point_drops_odd_part(H):
    F = StemPolynomial.constant(H, H.one(), H["i"])
    with pytest.warns(StemWarning):
        v = induce(F, compose(2.0, 0.0, H["i"]))
    assert v.allclose(H.one(), 0.0)


def test_value_depends_on_shadow_pair(H, rng):
    F = random_stem(H, rng, 4)
    J = random_unit(H, rng)
    a = induce(F, compose(0.4, 1.3, J))
    b = induce(F, compose(0.4, -1.3, -J))
    assert a.allclose(b, 1e-13)


def test_representation_formula_limits(H, rng):
    F = random_stem(H, rng, 3)
    J = random_unit(H, rng)
    a = induce(F, compose(0.2, 0.7, J))
    b = induce(F, compose(0.2, 0.7, -J))
    assert representation_formula(a, b, J, J).allclose(a, 1e-13)
    assert representation_formula(a, b, -J, J).allclose(b, 1e-13)
    with pytest.raises(InvalidArgumentError):
        representation_formula(a, b, 2 * J, J)


def test_representation_formula_z_squared(H):
    z2 = StemPolynomial.monomial(H, 2)
    a = induce(z2, compose(0.5, 1.5, H["i"]))
    b = induce(z2, compose(0.5, -1.5, H["i"]))
    got = representation_formula(a, b, H["k"], H["i"])
    want = induce(z2, compose(0.5, 1.5, H["k"]))
    assert got.allclose(want, 1e-12)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**31), st.integers(0, 8), st.sampled_from(["H", "O"]))
def test_representation_roundtrip(seed, deg, name):
    spec = quaternions() if name == "H" else octonions()
    rng = np.random.default_rng(seed)
    F = random_stem(spec, rng, deg)
    I, J = random_unit(spec, rng), random_unit(spec, rng)
    al, be = rng.standard_normal(), abs(rng.standard_normal()) + 0.05
    a = induce(F, compose(al, be, J))
    b = induce(F, compose(al, be, -J))
    want = induce(F, compose(al, be, I))
    got = representation_formula(a, b, I, J)
    scale = max(1.0, want.norm())
    assert np.linalg.norm(got.coords - want.coords) / scale < 1e-11


def test_slice_product_delta(H):
    i = H["i"]
    p = slice_product(StemPolynomial.linear(H, i), StemPolynomial.linear(H, -i))
    want = StemPolynomial.from_a_coefficients(H, [1.0, 0.0, 1.0])
    assert np.allclose(p.trimmed().coeffs, want.coeffs, atol=1e-15)


def test_slice_product_unit(H, rng):
    F = random_stem(H, rng, 5)
    one = StemPolynomial.constant(H, H.one())
    assert np.allclose(slice_product(F, one).coeffs, F.coeffs)
    assert np.allclose(slice_product(one, F).coeffs, F.coeffs)


def test_slice_product_noncommutative(H):
    a = slice_product(StemPolynomial.linear(H, H["i"]), StemPolynomial.linear(H, H["j"]))
    b = slice_product(StemPolynomial.linear(H, H["j"]), StemPolynomial.linear(H, H["i"]))
    assert np.allclose(a.coeffs[1:], b.coeffs[1:])
    assert np.allclose(a.coeffs[0, 0], H["k"].coords)
    assert np.allclose(b.coeffs[0, 0], -H["k"].coords)


def test_real_stem_product_is_pointwise(O, rng):
    R = StemPolynomial.from_a_coefficients(O, [O.scalar(c) for c in rng.standard_normal(4)])
    G = random_stem(O, rng, 3, a_valued=True)
    x = compose(0.3, 0.8, random_unit(O, rng))
    lhs = induce(slice_product(R, G), x)
    rhs = induce(R, x) * induce(G, x)
    assert lhs.allclose(rhs, 1e-12)


def test_slice_product_convolution_octonions(O, rng):
    F = random_stem(O, rng, 3)
    G = random_stem(O, rng, 2)
    P = slice_product(F, G)
    for n in range(6):
        acc = np.zeros((2, 8))
        for k in range(n + 1):
            if k <= 3 and n - k <= 2:
                p1, p2 = F.coeffs[k]
                q1, q2 = G.coeffs[n - k]
                acc[0] += O.mul(p1, q1) - O.mul(p2, q2)
                acc[1] += O.mul(p1, q2) + O.mul(p2, q1)
        assert np.allclose(P.coeffs[n], acc, atol=1e-12)


def test_slice_derivative_examples(H):
    a = H.element([0, 1, 2, 3])
    d = slice_derivative(StemPolynomial.monomial(H, 5, a))
    assert np.allclose(d.coeffs[4, 0], 5 * a.coords)
    assert np.allclose(np.delete(d.coeffs, 4, axis=0), 0)
    assert np.allclose(slice_derivative(StemPolynomial.constant(H, a)).coeffs, 0)


def test_cullen_derivative_of_delta_power(H):
    # d/dz of (z^2 + 1)^m at z = i, compared with sympy
    z = sp.symbols("z")
    i = H["i"]
    delta = slice_product(StemPolynomial.linear(H, i), StemPolynomial.linear(H, -i))
    F = StemPolynomial.constant(H, H.one())
    for m in range(1, 5):
        F = slice_product(F, delta)
        want = complex(sp.diff((z ** 2 + 1) ** m, z).subs(z, sp.I))
        got = cullen_derivative_at(F, compose(0, 1, H["j"]))
        assert got.allclose(H.element([want.real, 0, want.imag, 0]), 1e-12)


def test_holomorphic_residual(O, rng):
    for deg in (0, 3, 9):
        F = random_stem(O, rng, deg)
        x = compose(0.2, 1.1, random_unit(O, rng))
        scale = float(np.max(np.abs(F.coeffs))) * 3.0 ** deg
        assert conjugate_derivative_residual(F, x) / scale < 1e-12


def test_spherical_derivative_examples(H):
    y = compose(0.5, 2.0, H["j"])
    ident = StemPolynomial.linear(H, H.zero())
    s1 = spherical_derivative(induce(ident, y), induce(ident, y.conj()), y)
    assert s1.allclose(H.one(), 1e-15)
    J = H["k"]
    example = StemPolynomial.constant(H, H.one(), -J)
    yj = compose(0, 1, J)
    s1 = spherical_derivative(induce(example, yj), induce(example, yj.conj()), yj)
    assert s1.allclose(-J, 1e-15)
    const = StemPolynomial.constant(H, H.element([1, 2, 3, 4]))
    assert spherical_derivative(induce(const, y), induce(const, y.conj()), y).allclose(H.zero(), 0.0)
    with pytest.raises(InvalidArgumentError):
        spherical_derivative(H.one(), H.one(), compose(1.0, 0.0, H["i"]))


def test_json_roundtrip(H, rng):
    F = random_stem(H, rng, 4)
    G = StemPolynomial.from_json(H, F.to_json())
    assert F == G


def test_derivative_matches_finite_difference(H, rng):
    F = random_stem(H, rng, 6, a_valued=True)
    J = random_unit(H, rng)
    h = 1e-6
    x0 = compose(0.1, 0.9, J)
    fwd = induce(F, compose(0.1 + h, 0.9, J)).coords
    bwd = induce(F, compose(0.1 - h, 0.9, J)).coords
    fd = (fwd - bwd) / (2 * h)
    assert np.allclose(cullen_derivative_at(F, x0).coords, fd, atol=1e-6 * math.fsum(np.abs(fd)) + 1e-6)


def test_no_warning_for_a_valued_stem_at_reals(H, rng):
    F = random_stem(H, rng, 3, a_valued=True)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        induce(F, compose(0.7, 0.0, H["i"]))
