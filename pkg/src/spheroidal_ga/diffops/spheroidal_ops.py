"""Spheroidal and quaternion forms of the gradient and Laplacian.

Chart fields are callables f(eta, theta, phi) returning a float or a
Multivector; all chart partials are central differences.
"""

from __future__ import annotations

import math

import numpy as np

from ..frames import E0, conj, zeta, zeta_partials
from ..ga_core import Multivector, inverse
from ..report import Report
from ..spheroidal import DegenerateFrameError, SpheroidalPoint, chart_from_cartesian, position
from .fd import H_FIRST, H_SECOND, fd_gradient, fd_laplacian, laplacian_scale


def _check_chart(p: SpheroidalPoint) -> None:
    if p.eta <= 0 or not 0 < p.theta < math.pi:
        raise DegenerateFrameError(
            f"chart operators need eta > 0 and 0 < theta < pi, got eta={p.eta}, theta={p.theta}")


def _mv(v) -> Multivector:
    return v if isinstance(v, Multivector) else Multivector.scalar(float(v), 3)


_D1 = {2: ((1, 0.5),), 4: ((1, 2 / 3), (2, -1 / 12))}
_D2 = {2: ((1, 1.0),), 4: ((1, 4 / 3), (2, -1 / 12))}
_D2_CENTER = {2: -2.0, 4: -5 / 2}


def _shift(eta, theta, phi, k, s):
    c = [eta, theta, phi]
    c[k] += s
    return c


def chart_partials(f, p: SpheroidalPoint, h: float = H_FIRST, order: int = 2) -> tuple:
    """Central first differences (d_eta f, d_theta f, d_phi f)."""
    if order not in _D1:
        raise ValueError("order must be 2 or 4")
    out = []
    for k in range(3):
        acc = Multivector.zero(3)
        for j, w in _D1[order]:
            acc = acc + (_mv(f(*_shift(*p.chart, k, j * h))) - _mv(f(*_shift(*p.chart, k, -j * h)))) * w
        out.append(acc * (1.0 / h))
    return tuple(out)


def _chart_second(f, p: SpheroidalPoint, h: float, order: int = 2):
    if order not in _D1:
        raise ValueError("order must be 2 or 4")
    f0 = float(f(*p.chart))
    out = []
    for k in range(3):
        d1 = d2 = 0.0
        for j, w in _D1[order]:
            fp, fm = float(f(*_shift(*p.chart, k, j * h))), float(f(*_shift(*p.chart, k, -j * h)))
            d1 += w * (fp - fm)
        for j, w in _D2[order]:
            fp, fm = float(f(*_shift(*p.chart, k, j * h))), float(f(*_shift(*p.chart, k, -j * h)))
            d2 += w * (fp + fm)
        out.append((d1 / h, (d2 + _D2_CENTER[order] * f0) / (h * h)))
    return out


def spheroidal_laplacian(f, p: SpheroidalPoint, h: float = H_SECOND, order: int = 2) -> float:
    """Separated-form Laplacian of a scalar chart field.

    prolate: (f_ee + f_tt + (cot^2 t + coth^2 e) f_pp + coth e f_e + cot t f_t) / (mu^2 z_e zbar_e)
    oblate:  (f_ee + f_tt + (cot^2 t + tanh^2 e) f_pp + tanh e f_e + cot t f_t) / (mu^2 z zbar)
    """
    _check_chart(p)
    (fe, fee), (ft, ftt), (_, fpp) = _chart_second(f, p, h, order)
    z = zeta(p.eta, p.theta, p.phi)
    cot = 1.0 / math.tan(p.theta)
    if p.case == "prolate":
        hyp = 1.0 / math.tanh(p.eta)
        ze = z.partials["z_eta"]
        metric = (ze * conj(ze)).coeffs[0]
    else:
        hyp = math.tanh(p.eta)
        metric = (z.value * z.conj).coeffs[0]
    bracket = fee + ftt + (cot * cot + hyp * hyp) * fpp + hyp * fe + cot * ft
    return bracket / (p.mu ** 2 * metric)


def cartesian_field(f, mu: float, case: str, phi_ref: float | None = None):
    """f o invert, a Cartesian field built from a chart field."""
    def g(x):
        eta, theta, phi = chart_from_cartesian(x, mu, case, phi_ref)
        return f(eta, theta, phi)
    return g


def chart_field(F, mu: float, case: str):
    """F o position, a chart field built from a Cartesian field."""
    def g(eta, theta, phi):
        return F(position(SpheroidalPoint(mu, eta, theta, phi, case)).vector_components()
                 .astype(np.float64))
    return g


def _coefficients(p: SpheroidalPoint, which: str) -> tuple:
    """(c_eta, c_theta, c_phi) with grad_w = c_eta d_eta + c_theta d_theta + c_phi d_phi."""
    _check_chart(p)
    z = zeta(p.eta, p.theta, p.phi)
    P = z.partials
    I = z.phase.I_p
    if which == "z":
        lead, phi_part = P["z_eta"], P["z_phi"]
    elif which == "z_eta":
        lead, phi_part = z.value, P["z_phieta"]
    else:
        raise ValueError(f"which must be 'z' or 'z_eta', got {which!r}")
    inv = inverse(lead)
    return inv, -(inv * I), inv * lead * inverse(phi_part)


def quaternion_gradient(f, p: SpheroidalPoint, which: str = "z", h: float = H_FIRST,
                        conjugate: bool = False, order: int = 2) -> Multivector:
    """grad_z f = z_eta^{-1}(d_eta - I_p d_theta + z_eta z_phi^{-1} d_phi) f, or the
    oblate grad_{z_eta} = z^{-1}(d_eta - I_p d_theta + z z_phieta^{-1} d_phi) f.

    ``conjugate`` gives grad_zbar = e0 grad_z (e0 .), whose coefficients are
    the e0-conjugates of those above.
    """
    coeffs = _coefficients(p, which)
    if conjugate:
        coeffs = tuple(conj(c) for c in coeffs)
    parts = chart_partials(f, p, h, order)
    out = Multivector.zero(3)
    for c, d in zip(coeffs, parts):
        out = out + c * d
    return out


def quaternion_laplacian(f, p: SpheroidalPoint, which: str = "z", h: float = 1e-3,
                         order: str = "bar-first", fd_order: int = 4) -> Multivector:
    """grad_zbar grad_z f (``order='bar-first'`` applies grad_z first) or grad_z grad_zbar f."""
    inner_conj = order != "bar-first"

    def inner(eta, theta, phi):
        q = SpheroidalPoint(p.mu, eta, theta, phi, p.case)
        return quaternion_gradient(f, q, which, h, conjugate=inner_conj, order=fd_order)

    return quaternion_gradient(inner, p, which, h, conjugate=not inner_conj, order=fd_order)


def cartesian_gradient_from_quaternion(f, p: SpheroidalPoint, h: float = H_FIRST) -> Multivector:
    """(e0/mu) grad_z f (prolate) or (e0/mu) grad_{z_eta} f (oblate)."""
    which = "z" if p.case == "prolate" else "z_eta"
    return E0 * quaternion_gradient(f, p, which, h) * (1.0 / p.mu)


# -- gradient-dependent identity table ------------------------------------------

def _rel(a, b) -> float:
    a, b = _mv(a), _mv(b)
    return (a - b).max_abs() / max(1.0, b.max_abs())


def _sample(rng, n, eta_range=(0.1, 2.0), theta_margin=0.05, mu_range=(0.5, 2.0)):
    return np.column_stack([
        rng.uniform(*mu_range, n),
        rng.uniform(*eta_range, n),
        rng.uniform(theta_margin, math.pi - theta_margin, n),
        rng.uniform(0.0, 2 * math.pi, n),
    ])


def _coord(k: int, mu: float, case: str, phi_ref: float):
    return lambda x: float(chart_from_cartesian(x, mu, case, phi_ref)[k])


def _lap(F, x, h):
    # fourth-order stencil keeps the truncation error small near the focal set
    return float(fd_laplacian(F, x, h, order=4))


def identity_suite_grad(samples: int = 1000, seed: int = 0, tol: float = 1e-5,
                        fd_step: float = H_FIRST, lap_step: float = 1e-3) -> Report:
    """Gradient-dependent table items checked by finite differences.

    Errors are relative to max(1, |expected|).
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    rng = np.random.default_rng(seed)
    pts = _sample(rng, samples)
    errs: dict[str, list[float]] = {}

    def put(name, value):
        errs.setdefault(name, []).append(value)

    for mu, eta, theta, phi in pts:
        pp = SpheroidalPoint(mu, eta, theta, phi, "prolate")
        po = SpheroidalPoint(mu, eta, theta, phi, "oblate")
        x = position(pp).vector_components().astype(np.float64)
        y = position(po).vector_components().astype(np.float64)
        z = zeta(eta, theta, phi)
        P = z.partials
        zv, zb, ze, zeb = z.value, z.conj, P["z_eta"], conj(P["z_eta"])
        zzb = (zv * zb).coeffs[0]
        zezeb = (ze * zeb).coeffs[0]
        zt = P["z_theta"]
        ztzt = (zt * conj(zt)).coeffs[0]

        def zf(e, t, f):
            return zeta(e, t, f).value

        def zbf(e, t, f):
            return zeta(e, t, f).conj

        def zeze(e, t, f):
            q = zeta_partials(zeta(e, t, f))["z_eta"]
            return q * conj(q)

        put("grad_z z = 3", _rel(quaternion_gradient(zf, pp, "z", fd_step), 3.0))
        put("grad_z zbar = -1", _rel(quaternion_gradient(zbf, pp, "z", fd_step), -1.0))
        put("grad_{z_eta} z_eta = 3",
            _rel(quaternion_gradient(lambda e, t, f: zeta_partials(zeta(e, t, f))["z_eta"],
                                     po, "z_eta", fd_step), 3.0))

        xm = Multivector.vector(list(x))
        ym = Multivector.vector(list(y))
        put("grad_x (z zbar) = 2x/mu^2", _rel(fd_gradient(
            lambda v: zzb_chart(v, mu, "prolate"), x, fd_step), xm * (2 / mu ** 2)))
        put("grad_x (z zbar) = 2x/mu^2 via (e0/mu) grad_z",
            _rel(cartesian_gradient_from_quaternion(
                lambda e, t, f: zf(e, t, f) * zbf(e, t, f), pp, fd_step), xm * (2 / mu ** 2)))
        gz = quaternion_gradient(zeze, pp, "z", fd_step)
        put("grad_z (z_eta zbar_eta) = 2 z_eta^{-1} zbar_eta z",
            _rel(gz, inverse(ze) * zeb * zv * 2.0))
        put("[printed] grad_z (z_eta zbar_eta) = 0", gz.max_abs())
        gzb = quaternion_gradient(zeze, pp, "z", fd_step, conjugate=True)
        put("grad_zbar (z_eta zbar_eta) = 2 zbar_eta^{-1} z_eta zbar",
            _rel(gzb, inverse(zeb) * ze * zb * 2.0))
        put("[printed] grad_zbar (z_eta zbar_eta) = 0", gzb.max_abs())
        put("grad_y (z_eta zbar_eta) = 2y/mu^2", _rel(fd_gradient(
            lambda v: zeze_chart(v, mu), y, fd_step), ym * (2 / mu ** 2)))

        # coordinate functions through invert(); laplacians on the O(h^4) stencil
        scale_x = mu * math.sqrt(zezeb)
        scale_y = mu * math.sqrt(zzb)
        hx, hy = lap_step * scale_x, lap_step * scale_y
        eta_x, th_x, ph_x = (_coord(k, mu, "prolate", phi) for k in range(3))
        eta_y, th_y, ph_y = (_coord(k, mu, "oblate", phi) for k in range(3))

        def rel_scaled(a, b, scale):
            return abs(a - b) / max(abs(b), scale)

        g_eta = fd_gradient(eta_x, x, fd_step * scale_x)
        g_th = fd_gradient(th_x, x, fd_step * scale_x)
        g_ph = fd_gradient(ph_x, x, fd_step * scale_x)
        inv_metric = 1.0 / (mu ** 2 * zezeb)
        put("lap_x eta = coth eta / (mu^2 z_eta zbar_eta)",
            rel_scaled(_lap(eta_x, x, hx), inv_metric / math.tanh(eta), inv_metric))
        put("lap_x theta = cot theta / (mu^2 z_theta zbar_theta)",
            rel_scaled(_lap(th_x, x, hx), 1.0 / (math.tan(theta) * mu ** 2 * ztzt), inv_metric))
        put("lap_x phi = 0", abs(_lap(ph_x, x, hx)) / inv_metric)
        put("(grad_x eta)^2 = 1/(mu^2 z_eta zbar_eta)",
            rel_scaled((g_eta * g_eta).coeffs[0], inv_metric, inv_metric))
        put("(grad_x theta)^2 = (grad_x eta)^2",
            rel_scaled((g_th * g_th).coeffs[0], (g_eta * g_eta).coeffs[0], inv_metric))

        gy_eta = fd_gradient(eta_y, y, fd_step * scale_y)
        gy_th = fd_gradient(th_y, y, fd_step * scale_y)
        gy_ph = fd_gradient(ph_y, y, fd_step * scale_y)
        inv_metric_y = 1.0 / (mu ** 2 * zzb)
        lap_eta_y = _lap(eta_y, y, hy)
        put("lap_y eta = tanh eta / (mu^2 z zbar)",
            rel_scaled(lap_eta_y, math.tanh(eta) * inv_metric_y, inv_metric_y))
        put("lap_y theta = cot theta / (mu^2 z zbar)",
            rel_scaled(_lap(th_y, y, hy), inv_metric_y / math.tan(theta), inv_metric_y))
        put("lap_y phi = 0", abs(_lap(ph_y, y, hy)) / inv_metric_y)
        put("(grad_y eta)^2 = 1/(mu^2 z zbar)",
            rel_scaled((gy_eta * gy_eta).coeffs[0], inv_metric_y, inv_metric_y))
        put("(grad_y theta)^2 = (grad_y eta)^2",
            rel_scaled((gy_th * gy_th).coeffs[0], (gy_eta * gy_eta).coeffs[0], inv_metric_y))
        put("lap_y eta / (grad_y eta)^2 = tanh eta",
            abs(lap_eta_y / (gy_eta * gy_eta).coeffs[0] - math.tanh(eta)))
        ratio = (gy_ph * gy_ph).coeffs[0] / (g_ph * g_ph).coeffs[0]
        put("|grad_y phi|^2 / |grad_x phi|^2 = tanh^2 eta", abs(ratio - math.tanh(eta) ** 2))

    report = Report("identities-grad", info={"samples": samples, "seed": seed})
    notes = {
        "[printed] grad_z (z_eta zbar_eta) = 0":
            "z_eta zbar_eta varies with eta and theta; the derived value is asserted",
        "[printed] grad_zbar (z_eta zbar_eta) = 0": "same as the grad_z entry",
    }
    for name, e in errs.items():
        printed = name.startswith("[printed]")
        report.record(name, e, tol, [tuple(p) for p in pts], asserted=not printed,
                      note=notes.get(name))
    return report


def zzb_chart(x, mu: float, case: str) -> float:
    """z zbar as a Cartesian field (through invert)."""
    eta, theta, phi = chart_from_cartesian(x, mu, case)
    z = zeta(eta, theta, phi)
    return (z.value * z.conj).coeffs[0]


def zeze_chart(y, mu: float) -> float:
    """z_eta zbar_eta as a Cartesian field of the oblate position y."""
    eta, theta, phi = chart_from_cartesian(y, mu, "oblate")
    ze = zeta_partials(zeta(eta, theta, phi))["z_eta"]
    return (ze * conj(ze)).coeffs[0]


# -- operator equivalence ---------------------------------------------------------

def random_chart_field(rng: np.random.Generator):
    """A smooth chart field: a short random sum of separable exp/trig products."""
    terms = []
    for _ in range(3):
        terms.append((rng.normal(), rng.uniform(-1.0, 1.0), rng.uniform(-2.0, 2.0),
                      rng.uniform(0, 2 * math.pi), int(rng.integers(0, 4)), rng.uniform(0, math.pi)))

    def f(eta, theta, phi):
        s = 0.0
        for c, a, b, d, m, g in terms:
            s += c * math.exp(a * eta) * math.cos(b * theta + d) * math.cos(m * phi + g)
        return s
    return f


def _metric_scale(p: SpheroidalPoint) -> float:
    """|x_eta| = |x_theta|, the local length scale of the chart."""
    z = zeta(p.eta, p.theta, p.phi)
    w = z.partials["z_eta"] if p.case == "prolate" else z.value
    return p.mu * math.sqrt((w * conj(w)).coeffs[0])


def laplacian_equivalence(fields: int = 20, points: int = 5, seed: int = 0, tol: float = 1e-5,
                          h: float = 1e-3) -> Report:
    """Chart-form Laplacians against the Cartesian FD Laplacian of f o invert.

    Both sides use fourth-order stencils; the Cartesian step is h times the
    local metric scale. Relative error is |L_chart - L_cart| / max(|L_cart|, sum_k |d_kk f|).
    """
    rng = np.random.default_rng(seed)
    report = Report("laplacian-equiv", info={"fields": fields, "points": points, "seed": seed})
    for case in ("prolate", "oblate"):
        errs, samples = [], []
        qerrs = []
        for _ in range(fields):
            f = random_chart_field(rng)
            for _ in range(points):
                mu = rng.uniform(0.5, 2.0)
                eta, theta, phi = rng.uniform(0.3, 1.5), rng.uniform(0.3, 2.8), rng.uniform(0, 2 * math.pi)
                p = SpheroidalPoint(mu, eta, theta, phi, case)
                x = position(p).vector_components().astype(np.float64)
                F = cartesian_field(f, mu, case, phi)
                hc = h * _metric_scale(p)
                lc = float(fd_laplacian(F, x, hc, order=4))
                scale = max(abs(lc), laplacian_scale(F, x, hc, order=4))
                errs.append(abs(spheroidal_laplacian(f, p, h, order=4) - lc) / scale)
                which = "z" if case == "prolate" else "z_eta"
                q = quaternion_laplacian(f, p, which, h)
                qerrs.append((q - mu ** 2 * lc).max_abs() / (mu ** 2 * scale))
                samples.append((mu, eta, theta, phi))
        label = "prolate" if case == "prolate" else "oblate"
        report.record(f"{label} chart Laplacian = Cartesian FD Laplacian", errs, tol, samples)
        wname = "z" if case == "prolate" else "z_eta"
        report.record(f"grad_{wname}bar grad_{wname} = mu^2 lap ({label})", qerrs, tol, samples)
    return report


def quaternion_gradient_suite(samples: int = 100, seed: int = 0, tol: float = 1e-5,
                              fd_step: float = H_FIRST) -> Report:
    """grad_x = (e0/mu) grad_z against fd_gradient, and both Laplacian orderings."""
    rng = np.random.default_rng(seed)
    pts = _sample(rng, samples, eta_range=(0.3, 1.5))
    errs: dict[str, list[float]] = {}
    for mu, eta, theta, phi in pts:
        f = random_chart_field(rng)
        for case in ("prolate", "oblate"):
            p = SpheroidalPoint(mu, eta, theta, phi, case)
            x = position(p).vector_components().astype(np.float64)
            F = cartesian_field(f, mu, case, phi)
            g_fd = fd_gradient(F, x, fd_step)
            g_q = cartesian_gradient_from_quaternion(f, p, fd_step)
            errs.setdefault(f"grad = (e0/mu) grad_quaternion ({case})", []).append(
                (g_q - g_fd).max_abs() / max(1.0, g_fd.max_abs()))
            which = "z" if case == "prolate" else "z_eta"
            hc = 1e-3 * _metric_scale(p)
            lc = float(fd_laplacian(F, x, hc, order=4))
            scale = mu ** 2 * max(abs(lc), laplacian_scale(F, x, hc, order=4))
            for order in ("bar-first", "bar-last"):
                q = quaternion_laplacian(f, p, which, order=order)
                errs.setdefault(f"mu^2 lap = quaternion Laplacian, {order} ({case})", []).append(
                    (q - mu ** 2 * lc).max_abs() / scale)
    report = Report("quaternion-gradient", info={"samples": samples, "seed": seed})
    for name, e in errs.items():
        report.record(name, e, tol, [tuple(p) for p in pts])
    return report
