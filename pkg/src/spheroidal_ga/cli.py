"""Command-line entry point: ``spheroidal-ga {verify,transform,project,harmonic,qm,kernel}``.

Exit codes: 0 success, 1 verification failure, 2 usage or validation error.
"""

from __future__ import annotations

import argparse
import csv
import datetime as _dt
import io
import json
import math
import os
import sys
from dataclasses import asdict, dataclass, field
from fractions import Fraction

import numpy as np

SCHEMA = 1
SEED_ENV = "SPHEROIDAL_GA_SEED"
VOLATILE_KEYS = ("timestamp", "comparison")
TRANSFORM_COLUMNS = ("case", "mu", "eta", "theta", "phi", "x0", "x1", "x2")
PROJECT_COLUMNS = ("theta", "phi", "t", "phi_out")
HARMONIC_COLUMNS = ("eta", "theta", "phi", "x0", "x1", "x2", "U")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    tolerance: float | None = None
    tolerances: dict = field(default_factory=dict)
    fd_step: float | None = None
    samples: int | None = None
    seed: int = 0
    out: str | None = None

    def __post_init__(self):
        for name in ("tolerance", "fd_step"):
            v = getattr(self, name)
            if v is not None and not v > 0:
                raise UsageError(f"--{name.replace('_', '-')} must be positive")
        if self.samples is not None and self.samples < 1:
            raise UsageError("--samples must be >= 1")
        for k, v in self.tolerances.items():
            if not v > 0:
                raise UsageError(f"tolerance for {k} must be positive")


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    if isinstance(obj, (np.floating, float)):
        v = float(obj)
        return v if math.isfinite(v) else str(v)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, Fraction):
        return str(obj)
    return obj


def dumps(payload: dict) -> str:
    return json.dumps(_jsonable(payload), indent=2, sort_keys=True) + "\n"


def strip_volatile(payload: dict) -> dict:
    return {k: v for k, v in payload.items() if k not in VOLATILE_KEYS}


def same_report(a: dict, b: dict) -> bool:
    """Comparison mode: equal once the timestamp is dropped."""
    return dumps(strip_volatile(a)) == dumps(strip_volatile(b))


def _envelope(command: str, body: dict) -> dict:
    return {"schema": SCHEMA, "command": command,
            "timestamp": _dt.datetime.now(_dt.timezone.utc).isoformat(), **body}


def _emit(text: str, path: str | None) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="") as fh:
            fh.write(text)


def _csv_text(columns, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([repr(v) if isinstance(v, float) else v for v in r])
    return buf.getvalue()


def _seed(value: int | None) -> int:
    if value is not None:
        return value
    env = os.environ.get(SEED_ENV)
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError as exc:
        raise UsageError(f"{SEED_ENV} must be an integer, got {env!r}") from exc


def _parse_tolerances(items) -> dict:
    out = {}
    for item in items or []:
        if "=" not in item:
            raise UsageError(f"--suite-tolerance expects SUITE=VALUE, got {item!r}")
        k, v = item.split("=", 1)
        out[k] = float(v)
    return out


def _config(args) -> RunConfig:
    return RunConfig(tolerance=args.tolerance, tolerances=_parse_tolerances(args.suite_tolerance),
                     fd_step=args.fd_step, samples=args.samples, seed=_seed(args.seed), out=args.out)


# -- commands -----------------------------------------------------------------------------------

def cmd_verify(suite: str, config: RunConfig, compare: str | None = None) -> tuple[int, dict]:
    from .suites import SuiteConfig, run_suite

    cfg = SuiteConfig(samples=config.samples, seed=config.seed, tolerance=config.tolerance,
                      fd_step=config.fd_step, tolerances=config.tolerances)
    try:
        reports = run_suite(suite, cfg)
    except KeyError as exc:
        raise UsageError(str(exc)) from exc
    failures = [{"suite": r.suite, "identity": c.identity_name, "max_abs_error": c.max_abs_error,
                 "tolerance": c.tolerance, "worst_sample": c.worst_sample}
                for r in reports for c in r.failures()]
    payload = _envelope("verify", {
        "suite": suite,
        "config": {k: v for k, v in asdict(config).items() if k != "out"},
        "pass": not failures,
        "failures": failures,
        "reports": [r.to_json() for r in reports],
    })
    code = 0 if not failures else 1
    if compare is not None:
        with open(compare) as fh:
            previous = json.load(fh)
        identical = same_report(json.loads(dumps(payload)), previous)
        payload["comparison"] = {"against": os.path.basename(compare), "identical": identical}
        if not identical:
            code = 1
    return code, payload


def transform_rows(rows, case: str | None, mu: float | None, inverse: bool) -> list[tuple]:
    from .spheroidal import SpheroidalPoint, cartesian, invert

    out = []
    for i, row in enumerate(rows, start=1):
        c = row.get("case") or case
        m = row.get("mu") or mu
        if c is None or m is None:
            raise UsageError(f"row {i}: case and mu must come from the file or the options")
        try:
            m = float(m)
            if inverse:
                x = [float(row[k]) for k in ("x0", "x1", "x2")]
                p = invert(x, m, c)
            else:
                p = SpheroidalPoint(m, float(row["eta"]), float(row["theta"]), float(row["phi"]), c)
                x = list(cartesian(p))
        except KeyError as exc:
            raise UsageError(f"row {i}: missing column {exc.args[0]}") from exc
        except ValueError as exc:
            raise UsageError(f"row {i}: {exc}") from exc
        out.append((c, m, p.eta, p.theta, p.phi, float(x[0]), float(x[1]), float(x[2])))
    return out


def cmd_transform(args) -> int:
    if args.mu is not None and not args.mu > 0:
        raise UsageError("--mu must be positive")
    if args.input in (None, "-"):
        text = sys.stdin.read()
    else:
        try:
            with open(args.input, newline="") as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {args.input}: {exc.strerror}") from exc
    rows = list(csv.DictReader(io.StringIO(text)))
    _emit(_csv_text(TRANSFORM_COLUMNS, transform_rows(rows, args.case, args.mu, args.inverse)), args.out)
    return 0


def cmd_project(args) -> int:
    from .projection import projection_grid

    if args.grid < 2:
        raise UsageError("--grid must be >= 2")
    try:
        grid = projection_grid(args.case, args.nu, args.grid)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    _emit(_csv_text(PROJECT_COLUMNS, [tuple(map(float, r)) for r in grid]), args.out)
    return 0


def cmd_harmonic(args) -> int:
    from . import harmonics as hm
    from .spheroidal import SpheroidalPoint, cartesian

    try:
        mode = hm.HarmonicMode(args.n, args.m, args.parity, args.kind, args.case)
    except (hm.ModeError, ValueError) as exc:
        raise UsageError(str(exc)) from exc
    if args.grid < 2:
        raise UsageError("--grid must be >= 2")
    sol = hm.separated_solution(mode)
    eta_lo = 0.5 if mode.kind == "exterior" else 0.3
    rows = []
    for eta in np.linspace(eta_lo, 2.0, args.grid):
        for theta in np.linspace(0.1, math.pi - 0.1, args.grid):
            for phi in np.linspace(0.0, 2 * math.pi, args.grid, endpoint=False):
                p = SpheroidalPoint(args.mu, float(eta), float(theta), float(phi), mode.case)
                x = cartesian(p)
                rows.append((float(eta), float(theta), float(phi), *map(float, x),
                             float(sol(p.eta, p.theta, p.phi))))
    _emit(_csv_text(HARMONIC_COLUMNS, rows), args.out)
    grid = hm.LaplaceGrid(eta=(eta_lo, 2.0), mu=args.mu)
    res = hm.laplace_residual(mode, grid)
    summary = _envelope("harmonic", {"mode": asdict(mode), "mu": args.mu,
                                     "separation_constant": hm.separation_constant(mode.n, mode.m),
                                     "laplace_residual": res, "pass": res["max"] < args.tolerance})
    text = dumps(summary)
    if args.summary:
        _emit(text, args.summary)
    elif args.out not in (None, "-"):
        sys.stdout.write(text)
    else:
        sys.stderr.write(text)
    return 0 if summary["pass"] else 1


def qm_payload(k: int, max_degree: int | None) -> dict:
    from .monogenic import qm_correction_search, qm_curl, qm_gradient

    if k < 0:
        raise UsageError("--k must be >= 0")
    if max_degree is not None and max_degree < k:
        raise UsageError("--scan-max-degree must be >= k")
    res = qm_correction_search(k, max_degree)
    names = ["x0", "xp"]
    return {"k": k, "curl_free": qm_curl(k).is_zero(),
            "gradient_poly": qm_gradient(k).to_string(names),
            "correction_found": res.found,
            "correction": res.correction.to_string(names) if res.correction is not None else None,
            "scan_max_degree": res.max_degree,
            "homogeneous_dimension": res.homogeneous_dimension}


def cmd_qm(args) -> int:
    _emit(dumps(_envelope("qm", qm_payload(args.k, args.scan_max_degree))), args.out)
    return 0


def kernel_rows(n: int, y, grid: int, h: float, extent: float = 2.0, exclusion: float = 0.2):
    """FD monogenic residual of the Cauchy kernel on the (x0, x1) slice."""
    from .monogenic import cauchy_kernel, monogenic_residual

    y = np.asarray(y, dtype=np.float64)
    rows = []
    for a in np.linspace(-extent, extent, grid):
        for b in np.linspace(-extent, extent, grid):
            x = np.zeros(n + 1)
            x[0], x[1] = a, b
            r = float(np.linalg.norm(x - y))
            if r < exclusion:
                continue
            g = cauchy_kernel(x, y, n)
            full, div, curl = monogenic_residual(lambda v: cauchy_kernel(v, y, n), x, h)
            scale = g.max_abs() / r
            rows.append((float(a), float(b), r, full / scale, div / scale, curl / scale))
    return rows


def cmd_kernel(args) -> int:
    from .diffops.fd import H_FIRST

    if args.n < 1:
        raise UsageError("--n must be >= 1")
    y = [float(v) for v in args.y.split(",")] if args.y else [0.0] * (args.n + 1)
    if len(y) != args.n + 1:
        raise UsageError(f"--y needs {args.n + 1} comma-separated components")
    if args.grid < 2:
        raise UsageError("--grid must be >= 2")
    rows = kernel_rows(args.n, y, args.grid, args.fd_step or H_FIRST)
    _emit(_csv_text(("x0", "x1", "dist", "residual", "div", "curl"), rows), args.out)
    return 0


# -- parser ------------------------------------------------------------------------------------

SUITE_CHOICES = ("identities", "identities-grad", "coordinates", "projection", "brackets", "jx2",
                 "laplacian-equiv", "monogenic", "harmonics", "all")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tolerance", type=float, help="override every suite tolerance")
    common.add_argument("--suite-tolerance", action="append", metavar="SUITE=VALUE",
                        help="per-suite tolerance override (repeatable)")
    common.add_argument("--fd-step", type=float, help="finite-difference step")
    common.add_argument("--samples", type=int, help="random sample count")
    common.add_argument("--seed", type=int, help=f"RNG seed (falls back to ${SEED_ENV}, then 0)")
    common.add_argument("--out", help="output path (default stdout)")

    p = argparse.ArgumentParser(prog="spheroidal-ga", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", parents=[common], help="run verification suites, JSON report")
    v.add_argument("--suite", required=True, choices=SUITE_CHOICES)
    v.add_argument("--compare", metavar="REPORT",
                   help="exit 1 unless the new report matches REPORT (timestamp ignored)")

    t = sub.add_parser("transform", parents=[common], help="spheroidal <-> Cartesian CSV")
    t.add_argument("--case", choices=("prolate", "oblate"))
    t.add_argument("--mu", type=float)
    t.add_argument("--inverse", action="store_true", help="read x0,x1,x2 and recover eta,theta,phi")
    t.add_argument("--in", dest="input", help="input CSV (default stdin)")

    pr = sub.add_parser("project", parents=[common], help="spheroidal-graphic projection grid")
    pr.add_argument("--case", type=int, choices=(1, 3), required=True)
    pr.add_argument("--nu", type=float, required=True)
    pr.add_argument("--grid", type=int, default=32)

    h = sub.add_parser("harmonic", parents=[common], help="tabulate a separated harmonic")
    h.add_argument("--case", choices=("prolate", "oblate"), default="prolate")
    h.add_argument("--kind", choices=("interior", "exterior"), default="interior")
    h.add_argument("--n", type=int, required=True)
    h.add_argument("--m", type=int, default=0)
    h.add_argument("--parity", choices=("cos", "sin"), default="cos")
    h.add_argument("--grid", type=int, default=8)
    h.add_argument("--mu", type=float, default=1.0)
    h.add_argument("--summary", help="path for the residual JSON (default stderr, or stdout with --out)")

    q = sub.add_parser("qm", parents=[common], help="QM[k] curl, divergence and correction search")
    q.add_argument("--k", type=int, required=True)
    q.add_argument("--scan-max-degree", type=int)

    k = sub.add_parser("kernel", parents=[common], help="Cauchy-kernel FD residual scan")
    k.add_argument("--n", type=int, default=2)
    k.add_argument("--y", help="pole as comma-separated components")
    k.add_argument("--grid", type=int, default=21)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = _config(args)
        if args.command == "verify":
            code, payload = cmd_verify(args.suite, config, args.compare)
            _emit(dumps(payload), config.out)
            if code:
                for f in payload["failures"]:
                    print(f"FAIL {f['suite']}: {f['identity']} (error {f['max_abs_error']:.3g} > "
                          f"{f['tolerance']:.3g}) at {f['worst_sample']}", file=sys.stderr)
            return code
        if args.command == "harmonic":
            args.tolerance = config.tolerance or 1e-5
        return {"transform": cmd_transform, "project": cmd_project, "harmonic": cmd_harmonic,
                "qm": cmd_qm, "kernel": cmd_kernel}[args.command](args)
    except UsageError as exc:
        print(f"spheroidal-ga: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"spheroidal-ga: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
