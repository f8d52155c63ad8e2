"""Partial sums of mu(n)/n and mu(n) log(n)/n at decade checkpoints, with the
log-power fit of their distance to the limits 0 and -1.
"""

import argparse

from pntlab.cli import parse_int
from pntlab.mertens import fit_log_exponent, mertens_series


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max", type=parse_int, default=10**7)
    args = ap.parse_args()

    ys = [10**k for k in range(2, 20) if 10**k <= args.max]
    s = mertens_series(ys)
    print(f"{'y':>12} {'S_mu':>14} {'S_mulog':>14} {'M(y)':>8}")
    for y, a, b, m in zip(s.checkpoints, s.s_mu, s.s_mulog, s.mertens):
        print(f"{y:>12d} {a:+14.6e} {b:+14.9f} {m:>8d}")
    for name, vals, limit in (("S_mu", s.s_mu, 0.0), ("S_mulog", s.s_mulog, -1.0)):
        fit = fit_log_exponent(list(zip(s.checkpoints, vals)), limit=limit)
        print(f"{name} fit, limit {limit:+.0f}: |s - L| ~ C (log y)^-B with B={fit.B:.3f}, "
              f"log C={fit.log_c:.3f}, saturated={fit.saturated}")


if __name__ == "__main__":
    main()
