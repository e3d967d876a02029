"""Scan QM[k]: curl, divergence polynomial and the monogenic correction search."""

import argparse
import json
from dataclasses import dataclass

from spheroidal_ga.monogenic import qm_correction_search, qm_curl, qm_gradient


@dataclass
class ScanConfig:
    k_max: int = 8
    extra_degree: int = 0


def scan(cfg: ScanConfig) -> list[dict]:
    rows = []
    for k in range(1, cfg.k_max + 1):
        res = qm_correction_search(k, k + cfg.extra_degree)
        rows.append({"k": k, "curl_free": qm_curl(k).is_zero(),
                     "divergence": qm_gradient(k).to_string(["x0", "xp"]), **res.to_json()})
    return rows


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--k-max", type=int, default=ScanConfig.k_max)
    ap.add_argument("--extra-degree", type=int, default=ScanConfig.extra_degree)
    a = ap.parse_args()
    print(json.dumps(scan(ScanConfig(a.k_max, a.extra_degree)), indent=2))
