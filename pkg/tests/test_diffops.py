import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from spheroidal_ga.diffops import (FieldFn, StencilOutOfDomainError, cartesian_field,
                                   fd_gradient, fd_laplacian, laplacian_equivalence,
                                   quaternion_gradient, spheroidal_laplacian)
from spheroidal_ga.ga_core import Multivector
from spheroidal_ga.spheroidal import SpheroidalPoint, cartesian

pts3 = st.lists(st.floats(-2, 2), min_size=3, max_size=3).map(np.array)


@given(pts3)
def test_gradient_of_quadratic(x):
    f = lambda v: float(v[0] ** 2 + 3 * v[1] * v[2])
    g = fd_gradient(f, x)
    assert g.vector_components().astype(float) == pytest.approx([2 * x[0], 3 * x[2], 3 * x[1]], abs=1e-8)


@given(pts3)
def test_gradient_of_position_is_dimension(x):
    g = fd_gradient(lambda v: Multivector.vector(list(v)), x)
    assert g.coeffs[0] == pytest.approx(3.0, abs=1e-8)
    assert g.grade(2).max_abs() < 1e-8


@pytest.mark.parametrize("order", [2, 4])
def test_laplacian_of_inverse_distance(order):
    x = np.array([0.4, -0.8, 1.1])
    f = lambda v: 1.0 / float(np.linalg.norm(v))
    assert abs(fd_laplacian(f, x, 1e-3, order)) < 1e-5


def test_stencil_domain():
    f = FieldFn(lambda v: float(v[0]), lower=[0, -1, -1], upper=[1, 1, 1], dim=3)
    with pytest.raises(StencilOutOfDomainError):
        fd_gradient(f, np.array([0.0, 0.0, 0.0]))


@pytest.mark.parametrize("case", ["prolate", "oblate"])
def test_chart_laplacian_of_textbook_harmonic(case):
    # x0 (prolate) or y0 (oblate) is harmonic; so is r^{-1}
    p = SpheroidalPoint(1.3, 0.8, 1.0, 0.4, case)
    f = lambda eta, theta, phi: float(cartesian(SpheroidalPoint(1.3, eta, theta, phi, case))[0])
    assert abs(spheroidal_laplacian(f, p, 1e-3, order=4)) < 1e-7
    g = lambda eta, theta, phi: 1 / float(np.linalg.norm(cartesian(SpheroidalPoint(1.3, eta, theta, phi, case))))
    assert abs(spheroidal_laplacian(g, p, 1e-3, order=4)) < 1e-6


def test_quaternion_gradient_of_z_is_three():
    p = SpheroidalPoint(1.0, 0.7, 1.1, 0.3)
    from spheroidal_ga.frames import zeta
    F = lambda eta, theta, phi: zeta(eta, theta, phi).value
    g = quaternion_gradient(F, p, "z")
    assert g.coeffs[0] == pytest.approx(3.0, abs=1e-6)
    assert (g - 3.0).max_abs() < 1e-6


def test_laplacian_equivalence_small():
    rep = laplacian_equivalence(fields=3, points=3, seed=5)
    assert rep.passed, [(c.identity_name, c.max_abs_error) for c in rep.failures()]
