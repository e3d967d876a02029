"""Prolate and oblate spheroidal coordinates in G_3.

Prolate points are x = mu z e0, oblate points y = mu z_eta e0, with foci at
+-mu e0 (prolate) or on the ring of radius mu in the e1e2-plane (oblate).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .frames import E0, E1, E2, PhaseState, zeta, zeta_partials
from .ga_core import Multivector, inverse

Case = Literal["prolate", "oblate"]
CASES = ("prolate", "oblate")


class DegenerateCoordinatesError(ValueError):
    """Raised on the focal segment/disk, where (eta, theta) have a branch point.

    ``limit`` holds the limiting (eta, theta, phi) of the approach from the
    upper side.
    """

    def __init__(self, message: str, limit: tuple[float, float, float]):
        super().__init__(message)
        self.limit = limit


class DegenerateFrameError(ValueError):
    pass


@dataclass(frozen=True)
class SpheroidalPoint:
    mu: float
    eta: float
    theta: float
    phi: float
    case: Case = "prolate"

    def __post_init__(self):
        if self.case not in CASES:
            raise ValueError(f"unknown case {self.case!r}")
        if not self.mu > 0:
            raise ValueError(f"mu must be positive, got {self.mu}")
        if self.eta < 0:
            raise ValueError(f"eta must be >= 0, got {self.eta}")
        if not 0.0 <= self.theta <= math.pi:
            raise ValueError(f"theta must lie in [0, pi], got {self.theta}")

    @property
    def chart(self) -> tuple[float, float, float]:
        return self.eta, self.theta, self.phi


def _check_case(case: str) -> None:
    if case not in CASES:
        raise ValueError(f"case must be 'prolate' or 'oblate', got {case!r}")


def cartesian(p: SpheroidalPoint) -> np.ndarray:
    """Component form of the position (x0, x1, x2)."""
    ch, sh = math.cosh(p.eta), math.sinh(p.eta)
    c, s = math.cos(p.theta), math.sin(p.theta)
    if p.case == "prolate":
        axial, radial = p.mu * ch * c, p.mu * sh * s
    else:
        axial, radial = p.mu * sh * c, p.mu * ch * s
    return np.array([axial, radial * math.cos(p.phi), radial * math.sin(p.phi)])


def position_product(p: SpheroidalPoint) -> Multivector:
    """Position as the multivector product mu z e0 (prolate) or mu z_eta e0 (oblate)."""
    z = zeta(p.eta, p.theta, p.phi)
    even = z.value if p.case == "prolate" else zeta_partials(z)["z_eta"]
    return even * E0 * p.mu


def position(p: SpheroidalPoint) -> Multivector:
    return Multivector.vector(cartesian(p))


def _components(x) -> np.ndarray:
    if isinstance(x, Multivector):
        if x.dim != 3:
            raise ValueError("expected a vector of G_3")
        return x.vector_components().astype(np.float64)
    arr = np.asarray(x, dtype=np.float64)
    if arr.shape != (3,):
        raise ValueError(f"expected 3 components, got shape {arr.shape}")
    return arr


def omega(p: SpheroidalPoint) -> tuple[float, float]:
    """(omega, omega_bar) from the coordinates: (2 mu cosh eta, 2 mu cos|sin theta)."""
    w = 2 * p.mu * math.cosh(p.eta)
    if p.case == "prolate":
        return w, 2 * p.mu * math.cos(p.theta)
    return w, 2 * p.mu * math.sin(p.theta)


def omega_cartesian(x, mu: float, case: Case) -> tuple[float, float]:
    """Sum and difference of the focal distances of a Cartesian point.

    Prolate foci are +-mu e0; oblate uses the ring points +-mu e_p in the
    meridian plane of x.
    """
    _check_case(case)
    x0, x1, x2 = _components(x)
    xp = math.hypot(x1, x2)
    if case == "prolate":
        d_plus = math.hypot(x0 + mu, xp)
        d_minus = math.hypot(x0 - mu, xp)
    else:
        d_plus = math.hypot(x0, xp + mu)
        d_minus = math.hypot(x0, xp - mu)
    return d_plus + d_minus, d_plus - d_minus


def omega_radical(x, mu: float, case: Case) -> tuple[float, float]:
    """The closed radical forms sqrt(2)((x^2+mu^2) +- sqrt((x^2+mu^2)^2 - 4 mu^2 q^2))^(1/2).

    q is x0 for prolate and x_p for oblate points.  The minus branch returns
    |omega_bar| since the radical loses the sign.
    """
    _check_case(case)
    x0, x1, x2 = _components(x)
    r2 = x0 * x0 + x1 * x1 + x2 * x2
    q2 = x0 * x0 if case == "prolate" else x1 * x1 + x2 * x2
    a = r2 + mu * mu
    disc = math.sqrt(max(a * a - 4 * mu * mu * q2, 0.0))
    return math.sqrt(2.0) * math.sqrt(a + disc), math.sqrt(2.0) * math.sqrt(max(a - disc, 0.0))


def invert(x, mu: float, case: Case = "prolate", tol: float = 1e-14) -> SpheroidalPoint:
    """Recover (eta, theta, phi) from a Cartesian point.

    Uses x0 + i x_p = mu cosh(eta + i theta) (prolate) and
    y0 + i y_p = mu sinh(eta + i theta) (oblate), which is the same inversion
    as eta = arccosh(omega / 2mu) but stays accurate near the focal set.
    """
    _check_case(case)
    if not mu > 0:
        raise ValueError(f"mu must be positive, got {mu}")
    x0, x1, x2 = _components(x)
    xp = math.hypot(x1, x2)
    phi = math.atan2(x2, x1) % (2 * math.pi)
    w = complex(x0, xp) / mu
    if case == "prolate":
        on_segment = xp <= tol * mu and abs(x0) < mu * (1 - tol)
        s = cmath.acosh(w)
        eta, theta = s.real, s.imag
        if eta < 0:
            eta, theta = -eta, -theta
        if on_segment:
            raise DegenerateCoordinatesError(
                "point lies on the prolate focal segment", (0.0, math.acos(x0 / mu), phi))
    else:
        on_disk = abs(x0) <= tol * mu and xp < mu * (1 - tol)
        if on_disk:
            raise DegenerateCoordinatesError(
                "point lies on the oblate focal disk", (0.0, math.asin(xp / mu), phi))
        s = cmath.asinh(w)
        eta, theta = s.real, s.imag
        if eta < 0 or (eta == 0 and x0 < 0):
            # sinh(i pi - s) = sinh(s): move to the eta >= 0 sheet with theta in [pi/2, pi]
            eta, theta = -eta, math.pi - theta
    theta = min(max(theta, 0.0), math.pi)
    return SpheroidalPoint(mu, max(eta, 0.0), theta, phi, case)


def chart_from_cartesian(x, mu: float, case: Case, phi_ref: float | None = None) -> np.ndarray:
    """(eta, theta, phi) as floats, with phi unwrapped near ``phi_ref``."""
    p = invert(x, mu, case)
    phi = p.phi
    if phi_ref is not None:
        phi = phi_ref + (phi - phi_ref + math.pi) % (2 * math.pi) - math.pi
    return np.array([p.eta, p.theta, phi])


@dataclass(frozen=True)
class Frames:
    tangent: dict[str, Multivector]
    reciprocal: dict[str, Multivector]

    def gram(self) -> np.ndarray:
        """Matrix of dot products reciprocal[i] . tangent[j] over (eta, theta, phi)."""
        keys = ("eta", "theta", "phi")
        g = np.empty((3, 3))
        for i, a in enumerate(keys):
            for j, b in enumerate(keys):
                g[i, j] = (self.reciprocal[a] * self.tangent[b]).coeffs[0]
        return g


def frames(p: SpheroidalPoint) -> Frames:
    """Tangent vectors d position / d(eta, theta, phi) and the reciprocal frame."""
    names = ("eta", "theta", "phi")
    if p.case == "prolate":
        vanishing = [n for n, bad in zip(names, (
            p.eta == 0 and p.theta in (0.0, math.pi),
            p.eta == 0 and p.theta in (0.0, math.pi),
            p.eta == 0 or p.theta in (0.0, math.pi))) if bad]
    else:
        vanishing = [n for n, bad in zip(names, (
            p.eta == 0 and p.theta == math.pi / 2,
            p.eta == 0 and p.theta == math.pi / 2,
            p.theta in (0.0, math.pi))) if bad]
    if p.eta <= 0 or not 0 < p.theta < math.pi:
        vanishing = vanishing or ["phi"]
        raise DegenerateFrameError(
            f"{p.case} frame degenerates at eta={p.eta}, theta={p.theta}: "
            + ", ".join(f"x_{n} = 0" for n in vanishing))
    z = zeta(p.eta, p.theta, p.phi)
    P = zeta_partials(z)
    mu = p.mu
    sh, ch, s = math.sinh(p.eta), math.cosh(p.eta), math.sin(p.theta)
    e_p_dot = z.phase.e_p_dot
    if p.case == "prolate":
        ze, zt = P["z_eta"], P["z_theta"]
        tangent = {
            "eta": ze * E0 * mu,
            "theta": zt * E0 * mu,
            "phi": e_p_dot * (mu * sh * s),
        }
        ze_n = (ze * (E0 * ze * E0)).coeffs[0]
        zt_n = (zt * (E0 * zt * E0)).coeffs[0]
        reciprocal = {
            "eta": ze * E0 * (1.0 / (mu * ze_n)),
            "theta": zt * E0 * (1.0 / (mu * zt_n)),
            "phi": inverse(P["z_phi"] * E0 * mu),
        }
    else:
        zv = z.value
        zbar_inv = inverse(E0 * zv * E0)
        tangent = {
            "eta": zv * E0 * mu,
            "theta": z.phase.I_p * zv * E0 * mu,
            "phi": e_p_dot * (mu * ch * s),
        }
        reciprocal = {
            "eta": zbar_inv * E0 * (1.0 / mu),
            "theta": z.phase.I_p * zbar_inv * E0 * (1.0 / mu),
            "phi": e_p_dot * (1.0 / (mu * ch * s)),
        }
    return Frames(tangent, reciprocal)


# -- the four unit bounding spheroids ---------------------------------------

BOUNDING_CASES = {
    # case id: (geometry, mu from nu)
    1: "oblate",
    2: "prolate",
    3: "prolate",
    4: "oblate",
}


def bounding_parameters(case_id: int, nu: float) -> tuple[float, float]:
    """(eta, mu) of unit bounding spheroid ``case_id`` at shape parameter nu.

    Cases 1, 2 satisfy e^{2nu} - mu^2 = 1 (coth eta = e^nu, mu sinh eta = 1);
    cases 3, 4 satisfy e^{-2nu} + mu^2 = 1 (tanh eta = e^-nu, mu cosh eta = 1).
    """
    if case_id not in BOUNDING_CASES:
        raise ValueError(f"case_id must be 1..4, got {case_id}")
    if nu < 0:
        raise ValueError(f"nu must be >= 0, got {nu}")
    mu2 = math.expm1(2 * nu) if case_id in (1, 2) else -math.expm1(-2 * nu)
    if not mu2 > 0:
        raise ValueError(f"case {case_id} at nu={nu} gives mu^2 = {mu2} <= 0 (sphere limit)")
    eta = math.atanh(math.exp(-nu))
    return eta, math.sqrt(mu2)


def bounding_point(case_id: int, nu: float, theta: float, phi: float) -> Multivector:
    """Point of unit bounding spheroid ``case_id`` at polar angle theta, azimuth phi."""
    eta, _ = bounding_parameters(case_id, nu)
    t, ct = math.tanh(eta), 1.0 / math.tanh(eta)
    c, s = math.cos(theta), math.sin(theta)
    axial, radial = {
        3: (c, t * s),
        2: (ct * c, s),
        4: (t * c, s),
        1: (c, ct * s),
    }[case_id]
    return E0 * axial + (E1 * math.cos(phi) + E2 * math.sin(phi)) * radial


def bounding_spheroid(case_id: int, nu: float) -> SpheroidalPoint:
    """The spheroidal point family (mu, eta) that traces bounding case ``case_id``."""
    eta, mu = bounding_parameters(case_id, nu)
    return SpheroidalPoint(mu, eta, math.pi / 2, 0.0, BOUNDING_CASES[case_id])


def semi_axes(case_id: int, nu: float) -> tuple[float, float]:
    """(axial, equatorial) semi-axes of bounding case ``case_id``."""
    a = bounding_point(case_id, nu, 0.0, 0.0).coeffs[1]
    b = bounding_point(case_id, nu, math.pi / 2, 0.0).coeffs[2]
    return float(a), float(b)


def phase(p: SpheroidalPoint) -> PhaseState:
    return PhaseState.at(p.phi)
