import itertools
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from spheroidal_ga import monogenic as mg
from spheroidal_ga.diffops.fd import fd_gradient
from spheroidal_ga.ga_core import Multivector, basis_vector

q = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@given(st.lists(q, min_size=3, max_size=4), st.data())
def test_paravector_bridge(a, data):
    b = data.draw(st.lists(q, min_size=len(a), max_size=len(a)))
    x, y = Multivector.vector(a), Multivector.vector(b)
    X = mg.to_paravector(x).value()
    e0 = basis_vector(0, len(a), True)
    assert mg.to_vector(X) == x
    assert mg.conj(X) == e0 * x
    assert (X * mg.conj(X)).coeffs[0] == sum(v * v for v in a)
    dot, wedge = mg.paravector_dot_wedge(x, y)
    assert dot.coeffs[0] == sum(u * v for u, v in zip(a, b))
    assert wedge == (x * y - y * x) * Fraction(1, 2)


@pytest.mark.parametrize("n", [2, 3])
def test_cauchy_kernel_is_monogenic(n, rng):
    y = rng.uniform(-1, 1, n + 1)
    for _ in range(10):
        x = rng.uniform(-2, 2, n + 1)
        if np.linalg.norm(x - y) < 0.3:
            continue
        g = mg.cauchy_kernel(x, y, n)
        r = np.linalg.norm(x - y)
        assert g.norm() == pytest.approx(r ** -n)
        res = fd_gradient(lambda v: mg.cauchy_kernel(v, y, n), x)
        assert res.max_abs() < 1e-6 * g.max_abs() / r


def test_cauchy_kernel_singular():
    with pytest.raises(mg.SingularityError):
        mg.cauchy_kernel([0, 0, 0], [0, 0, 0])


def test_ck_worked_example():
    ex, direct = mg.ck_extension((2, 2)) * -1, mg.ck_worked_example()[1]
    assert ex == direct


@pytest.mark.parametrize("ks", list(itertools.product(range(0, 4), repeat=3)))
def test_ck_extensions_monogenic(ks):
    assert mg.ck_extension(ks).gradient().is_zero()


def test_ck_restricts_to_spatial_sum():
    # at x0 = 0 the extension is sum_i x_i^{k_i}
    f = mg.ck_extension((3, 1))
    v = f.evaluate((0.0, 1.5, -2.0))
    assert v.coeffs[0] == pytest.approx(1.5 ** 3 - 2.0)


def test_qm_is_vector_and_curl_free():
    for k in range(1, 16):
        f = mg.qm(k)
        assert f.grades() <= {1}
        assert mg.qm_curl(k).is_zero()


def test_qm_divergence_is_imaginary_part():
    # QM[k] = A e0 + B e_p with A + iB = (x0 - i x_p)^k; d0 A + dp B = 0 by Cauchy-Riemann,
    # so only the axial term B / x_p survives
    for k in range(1, 9):
        for x0, xp in ((0.3, 0.7), (-1.1, 0.4)):
            got = mg.qm_residual_value(k, x0, xp)
            w = complex(x0, -xp)
            expected = (w ** k).imag / xp
            assert got == pytest.approx(expected, rel=1e-12, abs=1e-12)


def test_qm11_coefficients():
    assert [abs(c) for c in mg.qm11_coefficients()] == [11, 165, 462, 330, 55, 1]
    assert mg.qm11_coefficients() == [-11, 165, -462, 330, -55, 1]


@pytest.mark.parametrize("k", [1, 2, 3])
def test_printed_corrections_complete_qm(k):
    assert mg.is_monogenic_completion(k, mg.PRINTED_CORRECTIONS[k])
    res = mg.qm_correction_search(k)
    assert res.found and mg.is_monogenic_completion(k, res.correction)
    # the two corrections differ by an axially symmetric monogenic field
    diff = res.correction - mg.PRINTED_CORRECTIONS[k]
    assert mg.cylindrical_gradient(diff).is_zero()


def test_correction_search_higher_k():
    for k in range(4, 7):
        assert mg.qm_correction_search(k).found
    with pytest.raises(ValueError):
        mg.qm_correction_search(3, max_degree=2)


def test_qm11_small_near_origin():
    assert abs(mg.qm_residual_value(11, 0.1, 0.1)) * 1e3 < abs(mg.qm_residual_value(11, 0.9, 0.1))


@given(st.lists(st.floats(-1, 1), min_size=3, max_size=4).filter(lambda v: 0 < np.linalg.norm(v)))
def test_hypergeom_kernel_matches_cauchy(v):
    x = np.asarray(v) * (0.5 / np.linalg.norm(v)) * 0.99
    a, b = mg.hypergeom_kernel(x), mg.hypergeom_direct(x)
    assert (a - b).max_abs() < 1e-9 * b.max_abs()


def test_paravector_power():
    e1, e0 = basis_vector(1, 3), basis_vector(0, 3)
    P = (e1 * e0) * 0.5 + 1.2
    half = mg.paravector_power(P, 0.5)
    assert (half * half - P).max_abs() < 1e-14
    with pytest.raises(mg.SingularityError):
        mg.paravector_power(Multivector.scalar(-1.0, 3), 0.5)
