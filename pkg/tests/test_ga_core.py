import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from spheroidal_ga.ga_core import (DimensionMismatchError, Multivector, SingularElementError,
                                   basis_vector, dot_wedge, grade_project, inverse, outer_product,
                                   pseudoscalar, render, reverse, scalar_part)

finite = st.floats(-3, 3, allow_nan=False, allow_infinity=False)
mv3 = st.lists(finite, min_size=8, max_size=8).map(lambda c: Multivector(3, c))
vec3 = st.lists(finite, min_size=3, max_size=3)
small_q = st.fractions(min_value=-5, max_value=5, max_denominator=7)


def test_generators_square_to_one_and_anticommute():
    for dim in (2, 3, 4):
        e = [basis_vector(k, dim, exact=True) for k in range(dim)]
        for i in range(dim):
            assert e[i] * e[i] == Multivector.scalar(1, dim)
            for j in range(i + 1, dim):
                assert e[i] * e[j] == -(e[j] * e[i])


def test_pseudoscalar_squares():
    # (e0 e1 ... e_{n-1})^2 = (-1)^{n(n-1)/2}
    for dim in range(1, 6):
        I = pseudoscalar(dim, exact=True)
        assert (I * I).coeffs[0] == (-1) ** (dim * (dim - 1) // 2)


def test_vector_product_matches_dot_plus_wedge_by_hand():
    a, b = np.array([1.0, -2.0, 0.5]), np.array([0.3, 0.7, -1.1])
    ab = Multivector.vector(a) * Multivector.vector(b)
    assert ab.coeffs[0] == pytest.approx(a @ b)
    # bivector mask 0b011 is e01, 0b101 e02, 0b110 e12
    assert ab.coeffs[0b011] == pytest.approx(a[0] * b[1] - a[1] * b[0])
    assert ab.coeffs[0b101] == pytest.approx(a[0] * b[2] - a[2] * b[0])
    assert ab.coeffs[0b110] == pytest.approx(a[1] * b[2] - a[2] * b[1])


@given(mv3, mv3, mv3)
def test_associative(a, b, c):
    assert ((a * b) * c - a * (b * c)).max_abs() <= 1e-9 * (1 + (a * b * c).max_abs())


@given(mv3, mv3, mv3)
def test_distributive(a, b, c):
    assert (a * (b + c) - (a * b + a * c)).max_abs() <= 1e-9 * (1 + a.max_abs() * (b.max_abs() + c.max_abs()))


@given(mv3, mv3)
def test_reverse_is_anti_automorphism(a, b):
    assert (reverse(a * b) - reverse(b) * reverse(a)).max_abs() <= 1e-9 * (1 + a.max_abs() * b.max_abs())


@given(st.lists(small_q, min_size=3, max_size=3).filter(any),
       st.lists(small_q, min_size=3, max_size=3))
def test_exact_dot_wedge_split(a, b):
    A, B = Multivector.vector(a), Multivector.vector(b)
    d, w = dot_wedge(A, B)
    assert d + w == A * B
    assert d.coeffs[0] == sum(x * y for x, y in zip(a, b))
    assert w == outer_product(A, B)
    assert inverse(A) * A == Multivector.scalar(1, 3)


@given(vec3.filter(lambda v: math.hypot(*v) > 0.1))
def test_vector_inverse(v):
    x = Multivector.vector(v)
    assert (inverse(x) * x - 1.0).max_abs() < 1e-12


def test_even_element_inverse_and_singular():
    e0, e1 = basis_vector(0, 3), basis_vector(1, 3)
    z = e1 * e0 * 0.7 + 1.3
    assert (inverse(z) * z - 1.0).max_abs() < 1e-14
    with pytest.raises(SingularElementError):
        inverse(Multivector.zero(3))


def test_grade_helpers_and_errors():
    a = Multivector(3, [1, 2, 3, 4, 5, 6, 7, 8])
    assert scalar_part(a) == 1
    assert grade_project(a, 1).grades() == {1}
    assert grade_project(a, 3).coeffs[7] == 8
    with pytest.raises(DimensionMismatchError):
        a * Multivector.zero(2)


def test_render_and_json_roundtrip():
    x = basis_vector(0, 3) * 2.0 + basis_vector(1, 3) * basis_vector(2, 3)
    s = render(x)
    assert "e0" in s and "e12" in s
    assert Multivector.from_json(x.to_json()) == x


def test_exact_and_float_agree():
    a = Multivector.vector([Fraction(1, 3), Fraction(-2), Fraction(5, 7)])
    b = Multivector.vector([Fraction(4), Fraction(1, 2), Fraction(-1)])
    assert ((a * b).to_float() - a.to_float() * b.to_float()).max_abs() < 1e-15
