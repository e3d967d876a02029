from fractions import Fraction

import pytest

from spheroidal_ga.diffops import (MvPolynomial, SymmetryOp, apply_symmetry, bracket_suite,
                                   compare_ops, cross, fit_multiple, harmonic_basis,
                                   jx_squared_check, mixed_bracket_closed_form)
from spheroidal_ga.ga_core import pseudoscalar

x0, x1, x2 = (MvPolynomial.variable(k, 3, 3) for k in range(3))
I3 = MvPolynomial.from_multivector(pseudoscalar(3, exact=True), 3)


def test_translation_is_directional_derivative():
    f = x0 * x0 * x1
    assert apply_symmetry(SymmetryOp.P((1, 0, 0)), f) == x0 * x1 * 2
    assert apply_symmetry(SymmetryOp.P((0, 2, 0)), f) == x0 * x0 * 2


def test_rotation_is_i_cross_gradient():
    # J_b f = i (b x x).grad f; for b = e2 and f = x0 that is -x1 i
    assert apply_symmetry(SymmetryOp.J((0, 0, 1)), x0) == -(I3 * x1)
    # rotations annihilate radial functions
    r2 = x0 * x0 + x1 * x1 + x2 * x2
    assert apply_symmetry(SymmetryOp.J((1, -2, 3)), r2).is_zero()


def test_cross_product():
    assert cross((1, 0, 0), (0, 1, 0)) == (0, 0, 1)


@pytest.mark.parametrize("a,b", [((1, 0, 0), (0, 1, 0)), ((1, 2, -1), (Fraction(1, 3), 0, 2))])
def test_rotation_bracket_sign_is_minus_i(a, b):
    i = pseudoscalar(3, exact=True)
    lhs = SymmetryOp.J(a) @ SymmetryOp.J(b) - SymmetryOp.J(b) @ SymmetryOp.J(a)
    rhs = SymmetryOp.J(cross(a, b))
    assert compare_ops(lhs, -1 * (i * rhs), 3).exact
    assert not compare_ops(lhs, i * rhs, 3).exact


def test_mixed_bracket_closed_form():
    a, b = (1, 2, 0), (0, 1, 3)
    w = mixed_bracket_closed_form(a, b)
    assert w == tuple(-c for c in cross(a, b))


def test_fit_multiple_detects_scalar_multiples():
    P = SymmetryOp.P((1, 1, 0))
    assert fit_multiple(3 * P, P, 3) == 3
    assert fit_multiple(SymmetryOp.P((1, 0, 0)), SymmetryOp.P((0, 1, 0)), 3) is None


@pytest.mark.parametrize("n", range(5))
def test_harmonic_basis(n):
    basis = harmonic_basis(n)
    assert len(basis) == 2 * n + 1
    assert all(h.laplacian().is_zero() for h in basis)


def test_bracket_suite_small():
    rep = bracket_suite(pairs=3, degree=3, seed=2)
    assert rep.passed
    assert rep.info["lambda_JJ"] == ["-1"]
    assert not rep["[J_a,J_b] = i J_{a x b}"].passed


def test_jx_squared():
    rep = jx_squared_check(degree=3)
    assert rep.passed
    assert not rep["[printed] J_x^2 = x^2 - x.grad - (x.grad)^2"].passed
