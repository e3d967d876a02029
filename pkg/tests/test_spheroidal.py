import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from spheroidal_ga.spheroidal import (DegenerateCoordinatesError, DegenerateFrameError,
                                      SpheroidalPoint, bounding_parameters, bounding_point,
                                      cartesian, frames, invert, omega, omega_cartesian,
                                      omega_radical, position, semi_axes)

pts = st.builds(SpheroidalPoint,
                mu=st.floats(0.2, 3.0), eta=st.floats(0.05, 2.5),
                theta=st.floats(0.02, math.pi - 0.02), phi=st.floats(0.0, 2 * math.pi - 1e-6),
                case=st.sampled_from(["prolate", "oblate"]))


def textbook(p):
    """Standard spheroidal coordinates, written out without the algebra."""
    if p.case == "prolate":
        axial, radial = p.mu * math.cosh(p.eta) * math.cos(p.theta), p.mu * math.sinh(p.eta) * math.sin(p.theta)
    else:
        axial, radial = p.mu * math.sinh(p.eta) * math.cos(p.theta), p.mu * math.cosh(p.eta) * math.sin(p.theta)
    return np.array([axial, radial * math.cos(p.phi), radial * math.sin(p.phi)])


@given(pts)
def test_cartesian_matches_textbook_formulas(p):
    assert np.allclose(cartesian(p), textbook(p), rtol=1e-13, atol=1e-13)
    assert np.allclose(position(p).vector_components().astype(float), textbook(p), atol=1e-13)


@given(pts)
def test_invert_round_trip(p):
    q = invert(cartesian(p), p.mu, p.case)
    assert q.eta == pytest.approx(p.eta, abs=1e-10)
    assert q.theta == pytest.approx(p.theta, abs=1e-10)
    assert math.cos(q.phi - p.phi) == pytest.approx(1.0, abs=1e-12)


@given(pts)
def test_omega_three_ways(p):
    x = cartesian(p)
    w, wb = omega(p)
    wc, wbc = omega_cartesian(x, p.mu, p.case)
    wr, wbr = omega_radical(x, p.mu, p.case)
    assert wc == pytest.approx(w, rel=1e-10)
    assert wbc == pytest.approx(wb, abs=1e-9)
    assert wr == pytest.approx(w, rel=1e-8)
    assert wbr == pytest.approx(abs(wb), abs=1e-6)


@given(pts)
def test_frame_reciprocity(p):
    assert np.abs(frames(p).gram() - np.eye(3)).max() < 1e-12


def test_focal_set_is_degenerate():
    with pytest.raises(DegenerateCoordinatesError) as exc:
        invert([0.3, 0.0, 0.0], 1.0, "prolate")
    assert exc.value.limit[1] == pytest.approx(math.acos(0.3))
    with pytest.raises(DegenerateCoordinatesError):
        invert([0.0, 0.4, 0.2], 1.0, "oblate")


def test_axis_frame_degenerates():
    with pytest.raises(DegenerateFrameError, match="x_phi"):
        frames(SpheroidalPoint(1.0, 0.5, 0.0, 0.0))
    with pytest.raises(ValueError):
        SpheroidalPoint(-1.0, 0.5, 0.3, 0.0)


@pytest.mark.parametrize("case_id", [1, 2, 3, 4])
@pytest.mark.parametrize("nu", [0.1, 0.7, 1.5])
def test_bounding_spheroids_are_unit_in_one_axis(case_id, nu):
    a, b = semi_axes(case_id, nu)
    assert min(a, b) == pytest.approx(1.0) or max(a, b) == pytest.approx(1.0)
    eta, mu = bounding_parameters(case_id, nu)
    x = bounding_point(case_id, nu, 0.8, 1.9).vector_components().astype(float)
    xp = math.hypot(x[1], x[2])
    assert (x[0] / a) ** 2 + (xp / b) ** 2 == pytest.approx(1.0)
    # the bounding surface is the eta-surface of the matching family
    geo = "prolate" if case_id in (2, 3) else "oblate"
    assert invert(x, mu, geo).eta == pytest.approx(eta, abs=1e-10)


def test_bounding_nu_zero_rejected():
    with pytest.raises(ValueError):
        bounding_parameters(3, 0.0)
