import math

import pytest
from hypothesis import given, strategies as st

from spheroidal_ga import projection as pj
from spheroidal_ga.frames import E0, E1

nus = st.floats(0.01, 2.0)
thetas = st.floats(0.0, math.pi - 0.1)
phis = st.floats(0.0, 2 * math.pi - 1e-9)
cases = st.sampled_from([1, 3])


@given(cases, nus, thetas, phis)
def test_project_matches_half_angle_form(case, nu, th, ph):
    # surface point at angle theta projects to t = e^{+-nu} tan(theta/2)
    sign = 1 if case == 1 else -1
    pp = pj.project(pj.surface_point(case, nu, th, ph), nu, case)
    assert pp.t == pytest.approx(math.exp(sign * nu) * math.tan(th / 2), rel=1e-12, abs=1e-15)


# the x0-only closed form loses sqrt(eps) accuracy at the pole, where 1 - x0 underflows
@given(cases, nus, st.floats(1e-3, math.pi - 0.1), phis)
def test_project_matches_closed_form(case, nu, th, ph):
    x = pj.surface_point(case, nu, th, ph)
    pp = pj.project(x, nu, case)
    assert pp.t == pytest.approx(pj.project_closed_form(float(x.coeffs[1]), nu, case), rel=1e-12, abs=1e-12)
    if pp.t > 1e-9:
        assert math.cos(pp.phi - ph) == pytest.approx(1.0, abs=1e-9)


@given(cases, nus, thetas, phis)
def test_unproject_inverts_project(case, nu, th, ph):
    x = pj.surface_point(case, nu, th, ph)
    assert (pj.unproject(pj.project(x, nu, case), nu, case) - x).max_abs() < 1e-12


@given(nus, st.floats(0.05, 1.5))
def test_prolate_spheroidal_form(nu, th):
    # case 3 at surface angle theta: t = tanh(eta) tan(theta/2) with tanh eta = e^{-nu}
    from spheroidal_ga.spheroidal import bounding_parameters
    eta, _ = bounding_parameters(3, nu)
    x = pj.surface_point(3, nu, th, 0.0)
    assert pj.project(x, nu, 3).t == pytest.approx(pj.spheroidal_form(eta, th), rel=1e-12)


@given(cases, nus, st.floats(0.1, 2.5))
def test_focal_mu_squared(case, nu, th):
    from spheroidal_ga.spheroidal import bounding_parameters
    _, mu = bounding_parameters(case, nu)
    x = pj.surface_point(case, nu, th, 0.3)
    assert pj.focal_mu_squared(x, case) == pytest.approx(mu * mu, rel=1e-9)


def test_stereographic_known_values():
    assert pj.stereographic(E0).t == pytest.approx(0.0)
    assert pj.stereographic(E1).t == pytest.approx(1.0)
    x = pj.stereographic_inverse(pj.PlanePoint(2.0, 0.0))
    assert x.norm() == pytest.approx(1.0)
    assert pj.stereographic(x).t == pytest.approx(2.0)


def test_stereographic_limit_is_linear():
    e = [pj.stereographic_limit_error(nu, 1.1) for nu in (1e-3, 5e-4, 2.5e-4)]
    assert e[0] / e[1] == pytest.approx(2.0, abs=0.1)
    assert e[1] / e[2] == pytest.approx(2.0, abs=0.1)


def test_errors():
    with pytest.raises(pj.PoleError):
        pj.project(-1.0 * E0, 0.5, 3)
    with pytest.raises(pj.NotOnSurfaceError):
        pj.project(E1 * 2.0, 0.5, 3)
    with pytest.raises(ValueError):
        pj.project(E0, 0.5, 2)
