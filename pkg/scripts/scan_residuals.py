"""Residual scan of psi(x, q, a) - x/phi(q) over a log grid, one table per class.

    python scripts/scan_residuals.py --q 3 4 --lo 1e4 --hi 1e8 --per-decade 8
"""

import argparse

import numpy as np

from pntlab.analysis import ScanConfig, log_grid, median_relative_residual, residual_scan
from pntlab.arith import ProgressionClass
from pntlab.cli import parse_int


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--q", type=int, nargs="+", default=[3, 4])
    ap.add_argument("--lo", type=parse_int, default=10**4)
    ap.add_argument("--hi", type=parse_int, default=10**8)
    ap.add_argument("--per-decade", type=int, default=8)
    ap.add_argument("--B", type=float, default=3.0)
    args = ap.parse_args()

    grid = log_grid(args.lo, args.hi, args.per_decade)
    for q in args.q:
        for a in range(q):
            cls = ProgressionClass(q, a, require_coprime=False)
            if not cls.coprime:
                continue
            tab = residual_scan(ScanConfig(cls, grid, B=args.B))
            sw = tab.decade_medians(tab.column("sw_norm"))
            rel = median_relative_residual(tab)
            print(f"q={q} a={a}  max rh_norm {np.max(tab.column('rh_norm')):.4f}  "
                  f"sw_norm medians {sw[0]:.3f} -> {sw[1]:.3f}  "
                  f"|r|phi/x medians {rel[0]:.2e} -> {rel[1]:.2e}")
            for r in tab.rows:
                print(f"  {r.x:>11d} {r.residual:+14.3f} {r.sw_norm:9.4f} {r.rh_norm:9.5f} {r.mont_norm:9.4f}")


if __name__ == "__main__":
    main()
