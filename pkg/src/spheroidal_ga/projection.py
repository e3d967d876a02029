"""Spheroidal-graphic projection from -e0 onto the e1e2-plane.

Case 3 is the unit prolate spheroid x0^2 + x_p^2 e^{2nu} = 1 and case 1 the
unit oblate spheroid x0^2 + x_p^2 e^{-2nu} = 1; both reduce to the unit
sphere and stereographic projection as nu -> 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .frames import E0, E1, E2
from .ga_core import Multivector, inverse
from .spheroidal import SpheroidalPoint, bounding_parameters, position

SURFACE_TOL = 1e-9


class PoleError(ValueError):
    pass


class NotOnSurfaceError(ValueError):
    pass


@dataclass(frozen=True)
class PlanePoint:
    """The plane vector t e_p with e_p = e1 cos(phi) + e2 sin(phi)."""

    t: float
    phi: float

    def vector(self) -> Multivector:
        return (E1 * math.cos(self.phi) + E2 * math.sin(self.phi)) * self.t

    @classmethod
    def from_vector(cls, v: Multivector) -> "PlanePoint":
        c = v.coeffs
        return cls(math.hypot(c[2], c[4]), math.atan2(c[4], c[2]) % (2 * math.pi))

    def as_tuple(self) -> tuple[float, float]:
        return self.t, self.phi


def _sign(case: int) -> int:
    if case == 1:
        return 1
    if case == 3:
        return -1
    raise ValueError(f"projection is defined on bounding cases 1 (oblate) and 3 (prolate), got {case}")


def _as_point(x) -> Multivector:
    if isinstance(x, SpheroidalPoint):
        return position(x)
    if isinstance(x, Multivector):
        return x
    return Multivector.vector([float(v) for v in x])


def surface_residual(x, nu: float, case: int) -> float:
    """x0^2 + x_p^2 e^{-+2nu} - 1 on the unit spheroid of ``case``."""
    x = _as_point(x)
    c = x.coeffs
    xp2 = c[2] ** 2 + c[4] ** 2
    return float(c[1] ** 2 + xp2 * math.exp(-2 * _sign(case) * nu) - 1.0)


def project(x, nu: float, case: int, check_surface: bool = True) -> PlanePoint:
    """t e_p = (x - x0 e0)/(x0 + 1) for a point of bounding spheroid ``case``."""
    _sign(case)
    x = _as_point(x)
    x0 = float(x.coeffs[1])
    if x0 + 1.0 == 0.0 or abs(x0 + 1.0) < 1e-15:
        raise PoleError("cannot project the projection pole -e0")
    if check_surface:
        r = surface_residual(x, nu, case)
        if abs(r) > SURFACE_TOL:
            raise NotOnSurfaceError(f"point is off the case-{case} spheroid (residual {r:.3g})")
    return PlanePoint.from_vector((x - E0 * x0) * (1.0 / (x0 + 1.0)))


def project_closed_form(x0: float, nu: float, case: int) -> float:
    """|t| = e^{-+nu} sqrt((1 - x0)/(1 + x0)) from the axial coordinate alone."""
    if x0 <= -1.0:
        raise PoleError("cannot project the projection pole -e0")
    return math.exp(_sign(case) * nu) * math.sqrt((1.0 - x0) / (1.0 + x0))


def projection_scale(x) -> float:
    """s = |t e_p + e0| / |x + e0| which equals 1/(x0 + 1)."""
    x = _as_point(x)
    return 1.0 / (float(x.coeffs[1]) + 1.0)


def unproject(t, nu: float, case: int) -> Multivector:
    """x = (2E t e_p + (E - t^2) e0)/(E + t^2) with E = e^{+-2nu}."""
    E = math.exp(2 * _sign(case) * nu)
    if not isinstance(t, PlanePoint):
        t = PlanePoint(float(t), 0.0)
    tt = t.t
    return (t.vector() * (2 * E) + E0 * (E - tt * tt)) * (1.0 / (E + tt * tt))


def axial_from_t(t: float, nu: float, case: int) -> float:
    E = math.exp(2 * _sign(case) * nu)
    return (E - t * t) / (E + t * t)


def focal_mu_squared(x, case: int) -> float:
    """mu^2 recovered from a surface point: (1 - x^2)/(1 - x0^2) for case 3 and
    its negative for case 1, so that e^{+-2nu} = 1 +- mu^2 = x_p^2/(1 - x0^2)."""
    x = _as_point(x)
    c = x.coeffs
    x2 = c[1] ** 2 + c[2] ** 2 + c[4] ** 2
    return float(_sign(case) * (x2 - 1.0) / (1.0 - c[1] ** 2))


def spheroidal_form(eta: float, theta: float) -> float:
    """t = tanh(eta) sqrt((1 - cos theta)/(1 + cos theta)) on case 3 (mu cosh eta = 1)."""
    return math.tanh(eta) * math.sqrt((1.0 - math.cos(theta)) / (1.0 + math.cos(theta)))


def stereographic(x) -> PlanePoint:
    """t e_p + e0 = 2/(x + e0) for a unit vector x != -e0."""
    x = _as_point(x)
    if abs(x.norm() - 1.0) > SURFACE_TOL:
        raise NotOnSurfaceError(f"stereographic projection needs |x| = 1, got {x.norm()}")
    if abs(float(x.coeffs[1]) + 1.0) < 1e-15:
        raise PoleError("cannot project the south pole -e0")
    m = inverse(x + E0) * 2.0 - E0
    return PlanePoint.from_vector(m)


def stereographic_inverse(t) -> Multivector:
    """x + e0 = 2/(t e_p + e0)."""
    if not isinstance(t, PlanePoint):
        t = PlanePoint(float(t), 0.0)
    return inverse(t.vector() + E0) * 2.0 - E0


def surface_point(case: int, nu: float, theta: float, phi: float) -> Multivector:
    """Point of the case-1/3 unit spheroid at fixed surface parameters (theta, phi)."""
    from .spheroidal import bounding_point

    _sign(case)
    return bounding_point(case, nu, theta, phi)


def stereographic_limit_error(nu: float, theta: float, phi: float = 0.0, case: int = 3) -> float:
    """|project(x_nu) - stereographic(x_0)| at fixed surface parameters."""
    tv = project(surface_point(case, nu, theta, phi), nu, case).vector()
    x_sphere = E0 * math.cos(theta) + (E1 * math.cos(phi) + E2 * math.sin(phi)) * math.sin(theta)
    return (tv - stereographic(x_sphere).vector()).norm()


def projection_grid(case: int, nu: float, n: int) -> np.ndarray:
    """Rows (theta, phi, t, phi_out) over an n x n grid of the upper surface."""
    bounding_parameters(case, nu)
    rows = []
    thetas = np.linspace(0.0, math.pi / 2, n)
    phis = np.linspace(0.0, 2 * math.pi, n, endpoint=False)
    for th in thetas:
        for ph in phis:
            pp = project(surface_point(case, nu, th, ph), nu, case)
            rows.append((th, ph, pp.t, pp.phi))
    return np.array(rows)
