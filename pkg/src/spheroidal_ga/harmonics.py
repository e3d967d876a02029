"""Separated harmonic solutions in prolate and oblate spheroidal coordinates.

Conventions: associated Legendre functions carry no Condon-Shortley phase,
P_n^m(x) = (1 - x^2)^{m/2} d^m P_n/dx^m on [-1, 1] and
(x^2 - 1)^{m/2} d^m P_n/dx^m for x > 1; Q_n^m(x) = (x^2 - 1)^{m/2} d^m Q_n/dx^m
for x > 1. Odd-m values therefore differ in sign from tables that include
the (-1)^m phase.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.integrate import solve_ivp

from .diffops.fd import fd_laplacian, laplacian_scale
from .spheroidal import SpheroidalPoint, chart_from_cartesian, position

PARITIES = ("cos", "sin")
KINDS = ("interior", "exterior")


class ModeError(ValueError):
    pass


def _check_nm(n: int, m: int) -> None:
    if n < 0 or m < 0:
        raise ModeError(f"need n, m >= 0, got n={n}, m={m}")
    if m > n:
        raise ModeError(f"need m <= n, got n={n}, m={m}")


def _double_factorial(k: int) -> int:
    out = 1
    while k > 1:
        out *= k
        k -= 2
    return out


def legendre_P(n: int, m: int, x):
    """Associated Legendre function of the first kind by upward recurrence in n."""
    _check_nm(n, m)
    x = np.asarray(x, dtype=np.float64)
    if np.any(x < -1.0):
        raise ValueError("legendre_P needs x >= -1")
    w = np.where(np.abs(x) <= 1.0, 1.0 - x * x, x * x - 1.0)
    p_prev = _double_factorial(2 * m - 1) * np.power(np.maximum(w, 0.0), m / 2.0)
    if n == m:
        return p_prev[()] if p_prev.ndim == 0 else p_prev
    p = x * (2 * m + 1) * p_prev
    for k in range(m + 2, n + 1):
        p_prev, p = p, (x * (2 * k - 1) * p - (k + m - 1) * p_prev) / (k - m)
    return p[()] if p.ndim == 0 else p


def _dQ0(j: int, x: np.ndarray) -> np.ndarray:
    """d^j Q_0 / dx^j for x > 1."""
    if j == 0:
        return 0.5 * np.log((x + 1.0) / (x - 1.0))
    return 0.5 * (-1) ** (j - 1) * math.factorial(j - 1) * ((x + 1.0) ** -j - (x - 1.0) ** -j)


def _q_start(m: int, x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """(Q_0^m, Q_1^m) from Q_1 = x Q_0 - 1."""
    w = np.power(x * x - 1.0, m / 2.0)
    q0 = w * _dQ0(m, x)
    d1 = x * _dQ0(m, x) + (m * _dQ0(m - 1, x) if m >= 1 else -1.0)
    return q0, w * d1


def _q_upward(n: int, m: int, x: np.ndarray) -> np.ndarray:
    """Upward in n for m <= 1, then upward in m:
    Q^{m+2} = -2(m+1) x (x^2-1)^{-1/2} Q^{m+1} + (n-m)(n+m+1) Q^m."""
    if m >= 2:
        a, b = _q_upward(n, 0, x), _q_upward(n, 1, x)
        r = 1.0 / np.sqrt(x * x - 1.0)
        for j in range(m - 1):
            a, b = b, -2 * (j + 1) * x * r * b + (n - j) * (n + j + 1) * a
        return b
    q_prev, q = _q_start(m, x)
    if n == 0:
        return q_prev
    for k in range(1, n):
        q_prev, q = q, ((2 * k + 1) * x * q - (k + m) * q_prev) / (k - m + 1)
    return q


def _q_miller(n: int, m: int, x: float) -> float:
    """Backward recurrence from a high start, normalised by Q_0^m."""
    eta = math.acosh(x)
    top = n + 20 + int(math.ceil(40.0 / eta))
    q_next, q = 0.0, 1e-280
    vals = {}
    for k in range(top, 0, -1):
        # (k - m + 1) Q_{k+1} = (2k + 1) x Q_k - (k + m) Q_{k-1}
        q_prev = ((2 * k + 1) * x * q - (k - m + 1) * q_next) / (k + m)
        q_next, q = q, q_prev
        if k - 1 <= n:
            vals[k - 1] = q
        if abs(q) > 1e250:
            q_next, q = q_next * 1e-250, q * 1e-250
            vals = {i: v * 1e-250 for i, v in vals.items()}
    q0, _ = _q_start(m, np.asarray(x))
    return float(vals[n] * (float(q0) / vals[0]))


MILLER_MIN_ETA = 0.05


def legendre_Q(n: int, m: int, x):
    """Associated Legendre function of the second kind for x > 1.

    Upward recurrence is used close to x = 1, where it is well conditioned;
    further out the minimal solution is recovered by backward (Miller)
    recurrence normalised with the closed form of Q_0^m.
    """
    _check_nm(n, m)
    xa = np.asarray(x, dtype=np.float64)
    if np.any(xa <= 1.0):
        raise ValueError("legendre_Q needs x > 1")
    out = np.empty_like(xa)
    flat_x, flat_o = xa.ravel(), out.ravel()
    for i, xv in enumerate(flat_x):
        if n <= 1 or math.acosh(xv) < MILLER_MIN_ETA:
            flat_o[i] = float(_q_upward(n, m, np.asarray(xv)))
        else:
            flat_o[i] = _q_miller(n, m, float(xv))
    return out[()] if out.ndim == 0 else out


def cos_poly(m: int, alpha: float) -> float:
    """C_m[alpha] = m sum_k (-1)^k (m-k-1)!/(k!(m-2k)!) 2^{m-2k-1} alpha^{m-2k} = cos(m arccos alpha)."""
    if m < 0:
        raise ValueError("m must be >= 0")
    if m == 0:
        return 1.0
    total = 0.0
    for k in range(m // 2 + 1):
        c = math.factorial(m - k - 1) / (math.factorial(k) * math.factorial(m - 2 * k))
        total += (-1) ** k * c * 2.0 ** (m - 2 * k - 1) * alpha ** (m - 2 * k)
    return m * total


def separation_constant(n: int, m: int) -> int:
    """n_hat in N'' + coth N' + (-m^2 coth^2 + n_hat) N = 0 and
    Theta'' + cot Theta' - (n_hat + m^2 cot^2) Theta = 0 for degree n, order m."""
    return m * m - n * (n + 1)


@dataclass(frozen=True)
class HarmonicMode:
    n: int
    m: int
    parity: str = "cos"
    kind: str = "interior"
    case: str = "prolate"

    def __post_init__(self):
        _check_nm(self.n, self.m)
        if self.parity not in PARITIES:
            raise ModeError(f"parity must be cos or sin, got {self.parity!r}")
        if self.kind not in KINDS:
            raise ModeError(f"kind must be interior or exterior, got {self.kind!r}")
        if self.case not in ("prolate", "oblate"):
            raise ModeError(f"case must be prolate or oblate, got {self.case!r}")


# -- oblate radial factor --------------------------------------------------------------

@dataclass(frozen=True)
class OblateRadial:
    """Numerical solution of N'' + tanh(eta) N' + (-m^2 tanh^2 eta + n_hat) N = 0."""

    n: int
    m: int
    kind: str
    n_hat: float
    eta_min: float
    eta_max: float
    _sol: object

    def __call__(self, eta):
        e = np.asarray(eta, dtype=np.float64)
        if np.any(e < self.eta_min - 1e-12) or np.any(e > self.eta_max + 1e-12):
            raise ValueError(f"eta outside the integrated range [{self.eta_min}, {self.eta_max}]")
        v = self._sol.sol(e)[0]
        return float(v) if np.ndim(eta) == 0 else v

    def derivative(self, eta):
        v = self._sol.sol(np.asarray(eta, dtype=np.float64))[1]
        return float(v) if np.ndim(eta) == 0 else v

    def residual(self, eta_grid, h: float = 1e-3) -> np.ndarray:
        """Relative ODE residual with N'' and N' from fourth-order differences of N."""
        e = np.asarray(eta_grid, dtype=np.float64)
        lo, hi = self.eta_min + 2 * h, self.eta_max - 2 * h
        e = np.clip(e, lo, hi)
        f = [self(e + s * h) for s in (-2, -1, 0, 1, 2)]
        d1 = (f[0] - 8 * f[1] + 8 * f[3] - f[4]) / (12 * h)
        d2 = (-f[0] + 16 * f[1] - 30 * f[2] + 16 * f[3] - f[4]) / (12 * h * h)
        t = np.tanh(e)
        c0 = -self.m ** 2 * t * t + self.n_hat
        res = d2 + t * d1 + c0 * f[2]
        scale = np.abs(d2) + np.abs(t * d1) + np.abs(c0 * f[2])
        return np.abs(res) / np.maximum(scale, 1e-300)


EXTERIOR_START = 25.0


def oblate_radial(n: int, m: int, eta_grid=None, kind: str = "interior",
                  n_hat: float | None = None, rtol: float = 1e-13) -> OblateRadial:
    """Integrate the oblate radial equation over the span of ``eta_grid``.

    interior: the solution with parity (-1)^{n-m} in eta, N(0) = 1 (even) or
    N'(0) = 1 (odd). exterior: the solution decaying like e^{-(n+1) eta},
    started at large eta and integrated inward, normalised so that
    N e^{(n+1) eta} -> 1.
    """
    _check_nm(n, m)
    if kind not in KINDS:
        raise ModeError(f"kind must be interior or exterior, got {kind!r}")
    grid = np.asarray(eta_grid if eta_grid is not None else [0.0, 5.0], dtype=np.float64)
    if np.any(grid < 0):
        raise ValueError("eta grid must be non-negative")
    nh = float(separation_constant(n, m) if n_hat is None else n_hat)

    def rhs(eta, y):
        t = math.tanh(eta)
        return [y[1], -t * y[1] - (-m * m * t * t + nh) * y[0]]

    if kind == "interior":
        hi = float(max(grid.max(), 1e-3))
        y0 = [1.0, 0.0] if (n - m) % 2 == 0 else [0.0, 1.0]
        sol = solve_ivp(rhs, (0.0, hi), y0, method="DOP853", rtol=rtol, atol=1e-15,
                        dense_output=True)
        lo = 0.0
    else:
        start = max(EXTERIOR_START, float(grid.max()) + 5.0)
        lo, hi = float(grid.min()), start
        k = n + 1
        # e^{-k eta} scaled so that the integrated values stay O(1) at the grid
        y0 = [math.exp(-k * (start - lo)), -k * math.exp(-k * (start - lo))]
        sol = solve_ivp(rhs, (start, lo), y0, method="DOP853", rtol=rtol, atol=1e-300,
                        dense_output=True)
    if not sol.success:
        raise RuntimeError(f"oblate radial integration failed: {sol.message}")
    if kind == "exterior":
        sol = _ScaledSolution(sol, math.exp(-(n + 1) * lo))
    return OblateRadial(n, m, kind, nh, lo, hi, sol)


class _ScaledSolution:
    """Rescales a solve_ivp result by a constant factor."""

    def __init__(self, sol, factor: float):
        self._inner = sol
        self.factor = factor

    def sol(self, t):
        return self._inner.sol(t) * self.factor


@lru_cache(maxsize=256)
def _cached_oblate(n: int, m: int, kind: str) -> OblateRadial:
    grid = [0.0, 8.0] if kind == "interior" else [0.01, 8.0]
    return oblate_radial(n, m, grid, kind)


# -- separated factors and modes -------------------------------------------------------

def radial_factor(mode: HarmonicMode):
    if mode.case == "prolate":
        if mode.kind == "interior":
            return lambda eta: float(legendre_P(mode.n, mode.m, math.cosh(eta)))
        return lambda eta: float(legendre_Q(mode.n, mode.m, math.cosh(eta)))
    return _cached_oblate(mode.n, mode.m, mode.kind)


def angular_factor(mode: HarmonicMode):
    return lambda theta: float(legendre_P(mode.n, mode.m, math.cos(theta)))


def azimuthal_factor(mode: HarmonicMode):
    m = mode.m
    if mode.parity == "cos":
        return lambda phi: cos_poly(m, math.cos(phi))
    return lambda phi: math.sin(m * phi)


@dataclass(frozen=True)
class SeparatedSolution:
    radial: object
    angular: object
    azimuthal: object

    def __call__(self, eta: float, theta: float, phi: float) -> float:
        return self.radial(eta) * self.angular(theta) * self.azimuthal(phi)


def separated_solution(mode: HarmonicMode) -> SeparatedSolution:
    return SeparatedSolution(radial_factor(mode), angular_factor(mode), azimuthal_factor(mode))


def eval_mode(mode: HarmonicMode, p: SpheroidalPoint) -> float:
    if p.case != mode.case:
        raise ModeError(f"point is {p.case} but mode is {mode.case}")
    if mode.kind == "exterior" and p.case == "prolate" and p.eta <= 0:
        raise ModeError("prolate exterior modes are singular on the focal segment")
    return separated_solution(mode)(p.eta, p.theta, p.phi)


# -- residual checks -------------------------------------------------------------------------

FACTORS = ("radial", "angular", "azimuthal")


def _ode_terms(mode: HarmonicMode, factor: str, s: float, F, h: float):
    f = [F(s + k * h) for k in (-2, -1, 0, 1, 2)]
    d1 = (f[0] - 8 * f[1] + 8 * f[3] - f[4]) / (12 * h)
    d2 = (-f[0] + 16 * f[1] - 30 * f[2] + 16 * f[3] - f[4]) / (12 * h * h)
    m2 = mode.m ** 2
    if factor == "azimuthal":
        return d2, 0.0, m2, f[2]
    if factor == "angular":
        cot = 1.0 / math.tan(s)
        # Theta'' + cot Theta' - (n_hat + m^2 cot^2) Theta = 0
        return d2, cot * d1, -m2 * cot * cot, f[2]
    hyp = 1.0 / math.tanh(s) if mode.case == "prolate" else math.tanh(s)
    return d2, hyp * d1, -m2 * hyp * hyp, f[2]


def _factor_callable(mode: HarmonicMode, factor: str):
    if factor not in FACTORS:
        raise ValueError(f"factor must be one of {FACTORS}")
    return {"radial": radial_factor, "angular": angular_factor,
            "azimuthal": azimuthal_factor}[factor](mode)


def fit_separation_constant(mode: HarmonicMode, factor: str = "angular", samples=None,
                            h: float = 1e-3) -> float:
    """Least-squares n_hat making ``factor`` satisfy its ODE at the sample points."""
    if factor == "azimuthal":
        raise ValueError("the azimuthal equation carries m^2, not n_hat")
    if samples is None:
        samples = np.linspace(0.4, 2.7, 12) if factor == "angular" else np.linspace(0.4, 1.6, 12)
    F = _factor_callable(mode, factor)
    rows, rhs = [], []
    for s in samples:
        d2, d1t, c0, f0 = _ode_terms(mode, factor, float(s), F, h)
        # angular: d2 + d1t + c0 f0 - n_hat f0 = 0; radial: d2 + d1t + c0 f0 + n_hat f0 = 0
        sign = -1.0 if factor == "angular" else 1.0
        rows.append(sign * f0)
        rhs.append(-(d2 + d1t + c0 * f0))
    a, b = np.asarray(rows), np.asarray(rhs)
    return float(a @ b / (a @ a))


def ode_residual(mode: HarmonicMode, factor: str, sample: float, constant: float | None = None,
                 h: float = 1e-3) -> float:
    """Relative residual of one separated factor in its ODE (fourth-order differences).

    The separation constant defaults to the one fitted on the angular equation.
    """
    F = _factor_callable(mode, factor)
    if factor == "angular" and not 0 < sample < math.pi:
        raise ValueError("angular samples must avoid theta = 0, pi")
    if factor == "radial" and sample <= 0:
        raise ValueError("radial samples need eta > 0")
    d2, d1t, c0, f0 = _ode_terms(mode, factor, float(sample), F, h)
    if factor == "azimuthal":
        res = d2 + c0 * f0
        scale = abs(d2) + abs(c0 * f0)
    else:
        nh = fit_separation_constant(mode, "angular") if constant is None else constant
        sign = -1.0 if factor == "angular" else 1.0
        res = d2 + d1t + (c0 + sign * nh) * f0
        scale = abs(d2) + abs(d1t) + abs((c0 + sign * nh) * f0)
    return abs(res) / scale if scale > 0 else 0.0


@dataclass(frozen=True)
class LaplaceGrid:
    eta: tuple[float, float] = (0.3, 1.5)
    theta: tuple[float, float] = (0.3, 2.8)
    phi: tuple[float, ...] = (0.4, 2.1, 4.0)
    n: int = 6
    mu: float = 1.0

    def points(self, case: str):
        for eta in np.linspace(*self.eta, self.n):
            for theta in np.linspace(*self.theta, self.n):
                for phi in self.phi:
                    yield SpheroidalPoint(self.mu, float(eta), float(theta), float(phi), case)


def _metric_scale(p: SpheroidalPoint) -> float:
    if p.case == "prolate":
        return p.mu * math.sqrt(math.sinh(p.eta) ** 2 + math.sin(p.theta) ** 2)
    return p.mu * math.sqrt(math.cosh(p.eta) ** 2 - math.sin(p.theta) ** 2)


def laplace_residual(mode: HarmonicMode, grid: LaplaceGrid | None = None,
                     rel_step: float = 2e-3) -> dict:
    """Cartesian FD Laplacian of U o invert on a chart grid.

    Residuals are normalised by max over the grid of sum_k |d_kk U| + |U|/mu^2.
    """
    grid = grid or LaplaceGrid()
    sol = separated_solution(mode)
    raw, scales, worst = [], [], None
    for p in grid.points(mode.case):
        x = position(p).vector_components().astype(np.float64)

        def U(v, p=p):
            eta, theta, phi = chart_from_cartesian(v, p.mu, p.case, p.phi)
            return sol(eta, theta, phi)

        h = rel_step * _metric_scale(p)
        lap = float(fd_laplacian(U, x, h, order=4))
        raw.append(abs(lap))
        scales.append(laplacian_scale(U, x, h, order=4) + abs(U(x)) / p.mu ** 2)
        if worst is None or raw[-1] > raw[worst[0]]:
            worst = (len(raw) - 1, p.chart)
    norm = max(scales) if max(scales) > 0 else 1.0
    rel = np.asarray(raw) / norm
    return {"max": float(rel.max()), "mean": float(rel.mean()), "points": len(rel),
            "worst_point": worst[1], "normaliser": norm}
