"""Grid of div QM[11] over (x0, x_p) for a Figure-3-style surface plot (CSV to stdout)."""

import argparse
import csv
import sys
from dataclasses import dataclass

import numpy as np

from spheroidal_ga.monogenic import qm_gradient


@dataclass
class GridConfig:
    k: int = 11
    n: int = 41
    extent: float = 1.0


def main(cfg: GridConfig) -> None:
    poly = qm_gradient(cfg.k)
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["x0", "xp", "residual"])
    for a in np.linspace(-cfg.extent, cfg.extent, cfg.n):
        for b in np.linspace(0.0, cfg.extent, cfg.n):
            w.writerow([repr(float(a)), repr(float(b)),
                        repr(float(poly.evaluate((a, b)).coeffs[0]))])


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--k", type=int, default=GridConfig.k)
    ap.add_argument("--n", type=int, default=GridConfig.n)
    ap.add_argument("--extent", type=float, default=GridConfig.extent)
    a = ap.parse_args()
    main(GridConfig(a.k, a.n, a.extent))
