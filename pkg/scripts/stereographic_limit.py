"""Distance between spheroidal-graphic and stereographic images as nu -> 0."""

import argparse
from dataclasses import dataclass, field

from spheroidal_ga.projection import stereographic_limit_error


@dataclass
class LimitConfig:
    case: int = 3
    theta: float = 1.1
    nus: list = field(default_factory=lambda: [1e-2, 5e-3, 2.5e-3, 1e-3, 5e-4, 2.5e-4])


def run(cfg: LimitConfig) -> None:
    prev = None
    print(f"{'nu':>10} {'error':>12} {'ratio':>8}")
    for nu in cfg.nus:
        e = stereographic_limit_error(nu, cfg.theta, case=cfg.case)
        ratio = f"{prev / e:8.4f}" if prev else ""
        print(f"{nu:10.2e} {e:12.4e} {ratio}")
        prev = e


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--case", type=int, choices=(1, 3), default=3)
    ap.add_argument("--theta", type=float, default=1.1)
    a = ap.parse_args()
    run(LimitConfig(case=a.case, theta=a.theta))
