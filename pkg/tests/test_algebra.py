import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperseries import (
    AlgebraError,
    NotInConeError,
    SpecMismatchError,
    algebra_constants,
    clifford,
    compose,
    cone_decompose,
    octonions,
    quaternions,
    spec_from_config,
)
from hyperseries.algebra import (
    conjugate,
    inverse_in_cone,
    is_unit_imaginary,
    multiply,
    norm_q,
    random_cone_batch,
    random_imaginary_units_batch,
    splitting_base,
    trace,
)

coords = st.floats(min_value=-10, max_value=10, allow_nan=False, allow_infinity=False)


def vec(d):
    return st.lists(coords, min_size=d, max_size=d).map(np.array)


def test_quaternion_table(H):
    assert multiply(H["i"], H["j"]).allclose(H["k"], 0.0)
    assert multiply(H["j"], H["i"]).allclose(-H["k"], 0.0)
    assert multiply(H["i"], H["i"]).allclose(-H.one(), 0.0)


def test_octonion_non_associative(O):
    e1, e2, e4 = O.basis(1), O.basis(2), O.basis(4)
    left = (e1 * e2) * e4
    right = e1 * (e2 * e4)
    assert not left.allclose(right, 1e-12)
    # for basis elements the two bracketings differ by a sign
    assert left.allclose(-right, 0.0)


def test_unity(any_spec, rng):
    x = any_spec.element(rng.standard_normal(any_spec.dim))
    one = any_spec.one()
    assert (one * x).allclose(x, 0.0)
    assert (x * one).allclose(x, 0.0)


def test_integer_products_are_exact(O):
    a = O.element(np.arange(8) - 3)
    b = O.element(np.arange(8)[::-1] - 2)
    p = (a * b).coords
    assert np.array_equal(p, np.round(p))


def test_spec_mismatch(H, O):
    with pytest.raises(SpecMismatchError):
        multiply(H.one(), O.one())


def test_trace_and_norm(H):
    x = H.element([1, 2, 0, 0])
    assert conjugate(x).allclose(H.element([1, -2, 0, 0]), 0.0)
    assert trace(x).allclose(H.scalar(2.0), 0.0)
    assert norm_q(x).allclose(H.scalar(5.0), 0.0)
    one = H.one()
    assert trace(one).allclose(H.scalar(2.0), 0.0)
    assert norm_q(one).allclose(one, 0.0)


def test_clifford_conjugation_signs():
    cl2 = clifford(2)
    # grade k blades pick up (-1)^{k(k+1)/2}
    assert list(cl2.conj(np.ones(4))) == [1, -1, -1, -1]
    cl3 = clifford(3)
    grades = [bin(m).count("1") for m in range(8)]
    want = [(-1) ** (k * (k + 1) // 2) for k in grades]
    assert sorted(zip(grades, cl3.conj(np.ones(8)))) == sorted(zip(grades, want))
    e12 = cl2["e12"]
    assert conjugate(e12).allclose(-e12, 0.0)


def test_cone_decompose_examples(H):
    p = cone_decompose(H.element([3, 0, 0, 4]))
    assert (p.alpha, p.beta) == (3.0, 4.0)
    assert p.j.allclose(H["k"], 1e-15)
    r = cone_decompose(H.scalar(5.0))
    assert (r.alpha, r.beta) == (5.0, 0.0)
    assert not r.canonical


def test_cone_decompose_clifford_3():
    cl3 = clifford(3)
    p = cone_decompose(cl3.one() + cl3["e1"])
    assert (p.alpha, p.beta) == (1.0, 1.0)
    assert p.j.allclose(cl3["e1"], 0.0)
    assert is_unit_imaginary(cl3["e1"])
    # e123 is not in the cone: its trace is 2 e123 under Clifford conjugation
    with pytest.raises(NotInConeError):
        cone_decompose(cl3["e123"])


def test_not_in_cone_rejected():
    cl3 = clifford(3)
    with pytest.raises(NotInConeError):
        cone_decompose(cl3["e1"] + cl3["e23"])


def test_inverse_in_cone(H, O):
    assert inverse_in_cone(H["j"]).allclose(-H["j"], 1e-15)
    assert inverse_in_cone(H.element([1, 1, 0, 0])).allclose(H.element([0.5, -0.5, 0, 0]), 1e-15)
    x = 2 * O.basis(7)
    inv = inverse_in_cone(x)
    assert inv.allclose(-0.5 * O.basis(7), 1e-15)
    assert (x * inv).allclose(O.one(), 1e-15)
    with pytest.raises(ZeroDivisionError):
        inverse_in_cone(compose(0.0, 0.0, H["i"]))


def test_splitting_base_examples(H, C):
    sb = splitting_base(H["i"])
    assert sb.h == 1
    assert abs(abs(np.linalg.det(sb.matrix)) - 1) < 1e-12
    j = H.element([0, 1, 1, 0]) / math.sqrt(2)
    sb = splitting_base(j)
    assert abs(np.linalg.det(sb.matrix)) > 1e-8
    for v in sb.vectors:
        assert abs(v.norm() - 1) < 1e-12
    assert splitting_base(C["i"]).h == 0
    with pytest.raises(AlgebraError):
        splitting_base(H.element([0, 2, 0, 0]))


def test_splitting_base_pairs(O, rng):
    J = O.element(random_imaginary_units_batch(O, rng, 1)[0])
    sb = splitting_base(J)
    v = sb.vectors
    assert sb.h == 3
    assert v[1].allclose(J, 1e-12)
    for k in range(1, sb.h + 1):
        assert (J * v[2 * k]).allclose(v[2 * k + 1], 1e-12)


def test_constants_multiplicative_norms():
    for spec in (quaternions(), octonions()):
        c = algebra_constants(spec, samples=500)
        assert abs(c.c_A - 1) < 1e-12
        assert abs(c.C_A - 1) < 1e-12
        assert c.H >= 1 - 1e-12


def test_constants_clifford2_enumeration():
    cl2 = clifford(2)
    c = algebra_constants(cl2, samples=2000)
    # dense enumeration of unit pairs: products of basis pairs plus a fine angular grid
    rng = np.random.default_rng(5)
    x = rng.standard_normal((20000, 4))
    y = rng.standard_normal((20000, 4))
    x /= np.linalg.norm(x, axis=1)[:, None]
    y /= np.linalg.norm(y, axis=1)[:, None]
    dense = float(np.max(cl2.norm_batch(cl2.mul_batch(x, y))))
    assert abs(c.C_A - max(dense, 1.0)) < 1e-6


def test_constants_monotone_in_samples():
    cl3 = clifford(3)
    a = algebra_constants(cl3, samples=200)
    b = algebra_constants(cl3, samples=2000)
    assert b.C_A >= a.C_A - 1e-15
    assert b.H >= a.H - 1e-15
    assert b.c_A <= a.c_A + 1e-15


def test_spec_from_config():
    assert spec_from_config({"algebra": "H"}).dim == 4
    assert spec_from_config({"algebra": {"clifford": 3}}).dim == 8
    assert spec_from_config("O").dim == 8
    with pytest.raises(AlgebraError):
        spec_from_config({"algebra": {"clifford": 9}})


@settings(max_examples=60, deadline=None)
@given(vec(8), vec(8))
def test_octonion_anti_involution(x, y):
    O = octonions()
    lhs = O.conj(O.mul(x, y))
    rhs = O.mul(O.conj(y), O.conj(x))
    assert np.allclose(lhs, rhs, atol=1e-10 * (1 + np.linalg.norm(x) * np.linalg.norm(y)))


@settings(max_examples=60, deadline=None)
@given(vec(8), vec(8))
def test_octonion_alternative(x, y):
    O = octonions()
    m = O.mul
    scale = 1e-10 * (1 + np.linalg.norm(x) ** 2 * np.linalg.norm(y))
    assert np.allclose(m(x, m(x, y)), m(m(x, x), y), atol=scale)
    assert np.allclose(m(m(y, x), x), m(y, m(x, x)), atol=scale)


@settings(max_examples=60, deadline=None)
@given(vec(8), vec(8))
def test_octonion_norm_multiplicative(x, y):
    O = octonions()
    assert math.isclose(O.norm(O.mul(x, y)), O.norm(x) * O.norm(y), rel_tol=1e-12, abs_tol=1e-12)


def test_cone_roundtrip_batch(any_spec, rng):
    a, b, J = random_cone_batch(any_spec, rng, 200)
    for k in range(200):
        p = compose(a[k], b[k], any_spec.element(J[k]))
        q = cone_decompose(p.element)
        assert abs(q.alpha - a[k]) < 1e-12
        assert abs(q.beta - b[k]) < 1e-12
        assert np.allclose(q.j.coords, J[k], atol=1e-12)
        # the norm is sqrt(n(x)) on the cone
        assert math.isclose(any_spec.norm(p.element.coords), math.hypot(a[k], b[k]), rel_tol=1e-12)
