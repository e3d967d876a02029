"""Named verification suites and the registry the CLI runs."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import harmonics as hm
from . import projection as pj
from .diffops import (bracket_suite, identity_suite_grad, jx_squared_check,
                      laplacian_equivalence, quaternion_gradient_suite)
from .diffops.fd import H_FIRST, partial
from .frames import identity_suite
from .report import Check, Report
from .spheroidal import (CASES, SpheroidalPoint, cartesian, frames, invert, position)


@dataclass(frozen=True)
class SuiteConfig:
    samples: int | None = None
    seed: int = 0
    tolerance: float | None = None
    fd_step: float | None = None
    tolerances: dict = field(default_factory=dict)

    def tol(self, suite: str, default: float) -> float:
        if suite in self.tolerances:
            return float(self.tolerances[suite])
        return default if self.tolerance is None else self.tolerance

    def n(self, default: int) -> int:
        return default if self.samples is None else self.samples


def _random_points(rng, n, case, eta=(0.1, 2.0), theta=(0.05, math.pi - 0.05), mu=(0.5, 2.0)):
    return [SpheroidalPoint(float(rng.uniform(*mu)), float(rng.uniform(*eta)),
                            float(rng.uniform(*theta)), float(rng.uniform(0, 2 * math.pi)), case)
            for _ in range(n)]


def coordinates_suite(cfg: SuiteConfig) -> Report:
    """Round trips through position/invert and frame reciprocity."""
    rng = np.random.default_rng(cfg.seed)
    report = Report("coordinates", info={"seed": cfg.seed})
    n = cfg.n(1000)
    h = cfg.fd_step or H_FIRST
    for case in CASES:
        pts = _random_points(rng, n, case)
        fwd, back, samples = [], [], []
        for p in pts:
            x = cartesian(p)
            q = invert(x, p.mu, case)
            dphi = (q.phi - p.phi + math.pi) % (2 * math.pi) - math.pi
            fwd.append(max(abs(q.eta - p.eta), abs(q.theta - p.theta), abs(dphi))
                       / max(1.0, abs(p.eta), abs(p.theta)))
            y = np.array([rng.uniform(-3, 3) for _ in range(3)])
            back.append(np.abs(cartesian(invert(y, p.mu, case)) - y).max() / np.abs(y).max())
            samples.append(p.chart)
        report.record(f"invert(position(p)) = p ({case})", fwd, cfg.tol("coordinates", 1e-10), samples)
        report.record(f"position(invert(x)) = x ({case})", back, cfg.tol("coordinates", 1e-10))

        recip, tang, samples = [], [], []
        for p in _random_points(rng, max(n // 2, 1), case, eta=(0.1, 2.0)):
            F = frames(p)
            recip.append(np.abs(F.gram() - np.eye(3)).max())
            x0 = np.array(p.chart)

            def pos(c, p=p):
                return position(SpheroidalPoint(p.mu, c[0], c[1], c[2], p.case))

            err = 0.0
            for k, name in enumerate(("eta", "theta", "phi")):
                fd = partial(pos, x0, k, h)
                err = max(err, (fd - F.tangent[name]).max_abs() / max(1.0, F.tangent[name].max_abs()))
            tang.append(err)
            samples.append(p.chart)
        report.record(f"reciprocal frame x^i . x_j = delta ({case})", recip, 1e-12, samples)
        report.record(f"FD tangents = closed-form tangents ({case})", tang, 1e-8, samples)
    return report


def projection_suite(cfg: SuiteConfig) -> Report:
    rng = np.random.default_rng(cfg.seed)
    report = Report("projection", info={"seed": cfg.seed})
    n = cfg.n(500)
    tol = cfg.tol("projection", 1e-12)
    for case in (1, 3):
        agree, rt, samples = [], [], []
        for _ in range(n):
            nu = float(rng.uniform(0.05, 1.5))
            th = float(rng.uniform(0.0, math.pi - 0.2))
            ph = float(rng.uniform(0, 2 * math.pi))
            x = pj.surface_point(case, nu, th, ph)
            pp = pj.project(x, nu, case)
            agree.append(abs(pp.t - pj.project_closed_form(float(x.coeffs[1]), nu, case))
                         / max(1.0, pp.t))
            rt.append((pj.unproject(pp, nu, case) - x).max_abs())
            samples.append((nu, th, ph))
        report.record(f"projection vector form = closed form (case {case})", agree, tol, samples)
        report.record(f"unproject(project(x)) = x (case {case})", rt, tol, samples)
    nus = (1e-3, 5e-4, 2.5e-4)
    th = 1.1
    errs = [pj.stereographic_limit_error(nu, th) for nu in nus]
    ratios = [errs[0] / errs[1], errs[1] / errs[2]]
    report.add(Check("stereographic limit error linear in nu (ratio 2 +- 0.1)",
                     max(abs(r - 2.0) for r in ratios), 0.1,
                     worst_sample={"nu": nus, "errors": errs, "ratios": ratios}))
    return report


def harmonics_suite(cfg: SuiteConfig) -> Report:
    report = Report("harmonics")
    tol = cfg.tol("harmonics", 1e-5)
    grid = hm.LaplaceGrid(n=5)
    ext_grid = hm.LaplaceGrid(eta=(0.5, 2.0), n=5)

    def sweep(name, modes, g):
        vals = [hm.laplace_residual(m, g) for m in modes]
        report.record(name, [v["max"] for v in vals], tol,
                      [(m.n, m.m, m.parity, v["worst_point"]) for m, v in zip(modes, vals)])

    sweep("prolate interior modes n <= 6 harmonic",
          [hm.HarmonicMode(n, m) for n in range(7) for m in range(n + 1)], grid)
    sweep("prolate exterior modes n <= 4 harmonic on eta in [0.5, 2]",
          [hm.HarmonicMode(n, m, kind="exterior") for n in range(5) for m in range(n + 1)], ext_grid)
    sweep("sin-parity modes harmonic",
          [hm.HarmonicMode(n, m, "sin", k, c) for n, m in ((2, 1), (3, 3))
           for k in hm.KINDS for c in ("prolate", "oblate")], ext_grid)
    for kind in hm.KINDS:
        sweep(f"oblate {kind} modes n <= 4 harmonic",
              [hm.HarmonicMode(n, m, kind=kind, case="oblate") for n in range(5) for m in range(n + 1)],
              ext_grid if kind == "exterior" else grid)

    errs, samples = [], []
    for m in range(13):
        for a in np.linspace(-1, 1, 41):
            errs.append(abs(hm.cos_poly(m, float(a)) - math.cos(m * math.acos(a))))
            samples.append((m, float(a)))
    report.record("cos_poly(m, a) = cos(m arccos a), m <= 12", errs, 1e-12, samples)

    res, samples = [], []
    for kind in hm.KINDS:
        for n in range(5):
            for m in range(n + 1):
                r = hm._cached_oblate(n, m, kind)
                lo = max(r.eta_min, 0.05)
                res.append(float(r.residual(np.linspace(lo, 6.0, 60)).max()))
                samples.append((kind, n, m))
    report.record("oblate radial ODE residual", res, 1e-8, samples)

    fitted = []
    for case in ("prolate", "oblate"):
        for n, m in ((2, 1), (3, 0), (4, 3)):
            mode = hm.HarmonicMode(n, m, case=case)
            for factor in ("angular", "radial"):
                fitted.append(abs(hm.fit_separation_constant(mode, factor) - hm.separation_constant(n, m)))
    report.record("fitted separation constant = m^2 - n(n+1)", fitted, 1e-5)
    return report


def _identities(cfg: SuiteConfig) -> Report:
    return identity_suite(samples=cfg.n(1000), seed=cfg.seed, tol=cfg.tol("identities", 1e-8),
                          fd_step=cfg.fd_step or 1e-5)


def _identities_grad(cfg: SuiteConfig) -> Report:
    rep = identity_suite_grad(samples=cfg.n(1000), seed=cfg.seed,
                              tol=cfg.tol("identities-grad", 1e-5), fd_step=cfg.fd_step or 1e-5)
    extra = quaternion_gradient_suite(samples=min(cfg.n(100), 100), seed=cfg.seed,
                                      tol=cfg.tol("identities-grad", 1e-5))
    for c in extra.checks:
        rep.add(c)
    return rep


def _brackets(cfg: SuiteConfig) -> Report:
    return bracket_suite(pairs=min(cfg.n(20), 20), seed=cfg.seed)


def _jx2(cfg: SuiteConfig) -> Report:
    return jx_squared_check()


def _laplacian(cfg: SuiteConfig) -> Report:
    return laplacian_equivalence(fields=min(cfg.n(20), 20), seed=cfg.seed,
                                 tol=cfg.tol("laplacian-equiv", 1e-5))


def _monogenic(cfg: SuiteConfig) -> Report:
    from .monogenic import monogenic_suite

    return monogenic_suite(samples=min(cfg.n(100), 100), seed=cfg.seed,
                           tol=cfg.tol("monogenic", 1e-6), fd_step=cfg.fd_step or H_FIRST)


SUITES: dict[str, Callable[[SuiteConfig], Report]] = {
    "identities": _identities,
    "identities-grad": _identities_grad,
    "coordinates": coordinates_suite,
    "projection": projection_suite,
    "brackets": _brackets,
    "jx2": _jx2,
    "laplacian-equiv": _laplacian,
    "monogenic": _monogenic,
    "harmonics": harmonics_suite,
}


def run_suite(name: str, cfg: SuiteConfig | None = None) -> list[Report]:
    cfg = cfg or SuiteConfig()
    if name == "all":
        return [fn(cfg) for fn in SUITES.values()]
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join([*SUITES, 'all'])}")
    return [SUITES[name](cfg)]


__all__ = ["SuiteConfig", "SUITES", "run_suite", "coordinates_suite", "projection_suite",
           "harmonics_suite"]
