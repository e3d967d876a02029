from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from spheroidal_ga.diffops import MvPolynomial, monomials, nullspace, rref, solve
from spheroidal_ga.ga_core import basis_vector

coef = st.fractions(min_value=-4, max_value=4, max_denominator=5)


def poly(draw_terms):
    return MvPolynomial(3, 3, {(e, m): c for (e, m), c in draw_terms.items()})


polys = st.dictionaries(
    st.tuples(st.tuples(*[st.integers(0, 2)] * 3), st.integers(0, 7)), coef, max_size=5).map(poly)


@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == MvPolynomial.zero(3, 3)


@given(polys, polys)
def test_leibniz_rule(a, b):
    for k in range(3):
        assert (a * b).diff(k) == a.diff(k) * b + a * b.diff(k)


def test_position_gradient_and_laplacian():
    x = MvPolynomial.position(3)
    assert x.gradient() == MvPolynomial.constant(3, 3, 3)
    r2 = x * x
    assert r2.grades() == {0}
    assert r2.laplacian() == MvPolynomial.constant(6, 3, 3)
    # Euler operator multiplies homogeneous degree-d by d
    assert (r2 * r2).euler() == r2 * r2 * 4


def test_evaluate_and_string():
    p = MvPolynomial.monomial((2, 0, 1), 3, Fraction(1, 2), mask=0b001)
    assert p.evaluate((2.0, 5.0, 3.0)).coeffs[1] == pytest.approx(6.0)
    assert "x0^2" in p.to_string()
    assert p.divide_by_variable(2) == MvPolynomial.monomial((2, 0, 0), 3, Fraction(1, 2), 0b001)
    with pytest.raises(ArithmeticError):
        p.divide_by_variable(1)


def test_from_multivector_requires_exact():
    with pytest.raises(TypeError):
        MvPolynomial.from_multivector(basis_vector(0, 3), 3)


def test_monomial_count():
    # C(n + d, d) monomials in n variables of degree <= d
    assert len(monomials(3, 4)) == 35
    assert len(monomials(3, 4, 4)) == 15


def test_exact_linear_algebra():
    A = [[Fraction(1), Fraction(2), Fraction(3)], [Fraction(2), Fraction(4), Fraction(6)]]
    red, piv = rref(A, 3)
    assert piv == [0] and len(red) == 1
    ns = nullspace(A, 3)
    assert len(ns) == 2
    for v in ns:
        assert all(sum(a * x for a, x in zip(row, v)) == 0 for row in A)
    assert solve(A, [Fraction(1), Fraction(2)], 3) == [1, 0, 0]
    assert solve(A, [Fraction(1), Fraction(3)], 3) is None
