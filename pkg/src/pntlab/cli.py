"""Command-line front end.

Subcommands and their CSV columns (JSON rows use the same keys):

    sieve        kind, lo, hi, file, nonzero
    psi          x, q, a, phi_q, psi, theta, pi_count, main, residual
    pi           x, q, a, pi_count, theta_route, psi_route, route_gap, quad_error, nodes, converged
    decompose    x, q, a, phi_q, psi_exact, s1_total, s2_total, m_paper, e_paper,
                 identity_gap, grouping_gap, main_asymptotic
    mertens      y, s_mu, gap_mu | y, s_mulog, gap_mulog | y, s_mu, s_mulog, mertens
    mobius-scan  x, q, a, mobius_sum, log_norm, rh_norm, q_admissible
    scan         x, q, a, psi, main, residual, sw_norm, rh_norm, mont_norm, q_admissible
    fit          series, limit, B, log_c, saturated, n_points, gap_first, gap_last
    identities   max_n, checked, max_gap_inversion, max_gap_split, tolerance, passed

Exit status: 0 success, 1 computation error, 2 usage error.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
import warnings
from dataclasses import dataclass, field
from decimal import Decimal, InvalidOperation

from . import __version__
from .analysis import ScanConfig, log_grid, mobius_residual_scan, pi_from_psi, residual_scan
from .arith import DEFAULT_SEGMENT, ProgressionClass, RangeLimitError, iter_mangoldt, iter_mobius
from .cache import SegmentCache, default_cache_dir
from .decomposition import decompose_psi
from .identities import verify_identities
from .mertens import fit_log_exponent, mertens_series
from .progression import chebyshev_samples
from .report import render, row_of, write_text

# flags that change where output goes or how fast it is produced, not what it is
_NON_SEMANTIC = {"output", "format", "threads", "cache", "func", "command", "classes"}


class UsageError(ValueError):
    pass


@dataclass(frozen=True)
class ExperimentConfig:
    command: str
    params: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"command": self.command, **self.params}

    @classmethod
    def from_dict(cls, d: dict) -> "ExperimentConfig":
        d = dict(d)
        return cls(d.pop("command"), d)

    @classmethod
    def from_namespace(cls, ns: argparse.Namespace) -> "ExperimentConfig":
        params = {k: v for k, v in sorted(vars(ns).items()) if k not in _NON_SEMANTIC}
        return cls(ns.command, params)


# ---------------------------------------------------------------------------
# argument types


def parse_int(text: str) -> int:
    """Integer that may be written in scientific notation, e.g. ``1e6``."""
    try:
        d = Decimal(text.strip())
    except InvalidOperation:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not d.is_finite() or d != d.to_integral_value():
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    return int(d)


def parse_int_list(text: str) -> list[int]:
    return [parse_int(t) for t in text.split(",") if t.strip()]


def parse_grid(text: str) -> list[int]:
    """``1e4,1e5,1e6`` or ``lo:hi:per_decade`` (log-spaced, inclusive)."""
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise argparse.ArgumentTypeError("grid range must be lo:hi:per_decade")
        lo, hi, per = (parse_int(p) for p in parts)
        if lo < 1 or hi <= lo or per < 1:
            raise argparse.ArgumentTypeError(f"bad grid range {text!r}")
        return list(log_grid(lo, hi, per))
    return parse_int_list(text)


def _classes(q: int, a: str) -> list[ProgressionClass]:
    if a == "all":
        return [ProgressionClass(q, r) for r in range(q) if math.gcd(r, q) == 1]
    try:
        ai = parse_int(a)
    except argparse.ArgumentTypeError as exc:
        raise UsageError(str(exc)) from None
    try:
        return [ProgressionClass(q, ai)]
    except ValueError as exc:
        raise UsageError(str(exc)) from None


# ---------------------------------------------------------------------------
# commands; each returns (rows, columns)


def _kw(ns) -> dict:
    kw = {"threads": ns.threads, "segment": ns.segment}
    if ns.cache:
        kw["cache"] = SegmentCache(ns.cache)
    return kw


def cmd_sieve(ns):
    cache = SegmentCache(ns.cache or default_cache_dir())
    kinds = ["mobius", "mangoldt"] if ns.kind == "both" else [ns.kind]
    rows = []
    for kind in kinds:
        it = iter_mobius if kind == "mobius" else iter_mangoldt
        for tab in it(ns.lo, ns.hi + 1, segment=ns.segment, threads=ns.threads):
            path = cache.save(tab)
            nz = int((tab.values != 0).sum()) if kind == "mobius" else int((tab.p != 0).sum())
            rows.append({"kind": kind, "lo": tab.lo, "hi": tab.hi, "file": path.name, "nonzero": nz})
    return rows, ["kind", "lo", "hi", "file", "nonzero"]


def cmd_psi(ns):
    rows = []
    for cls in ns.classes:
        for r in chebyshev_samples(ns.x, cls, **_kw(ns)):
            rows.append(row_of(r, main=r.main, residual=r.residual))
    return rows, ["x", "q", "a", "phi_q", "psi", "theta", "pi_count", "main", "residual"]


def cmd_pi(ns):
    rows = []
    for cls in ns.classes:
        counts = chebyshev_samples(ns.x, cls, **_kw(ns))
        for x, c in zip(ns.x, counts):
            ps = pi_from_psi(x, cls, ns.grid_points, **_kw(ns))
            rows.append(row_of(ps, pi_count=c.pi_count, route_gap=ps.gap))
    cols = ["x", "q", "a", "pi_count", "theta_route", "psi_route", "route_gap", "quad_error", "nodes", "converged"]
    return rows, cols


def cmd_decompose(ns):
    rows = []
    for cls in ns.classes:
        for x in ns.x:
            r = decompose_psi(x, cls, method=ns.method, **_kw(ns))
            rows.append(row_of(r, identity_gap=r.identity_gap, grouping_gap=r.grouping_gap,
                               main_asymptotic=r.main_asymptotic))
    cols = ["x", "q", "a", "phi_q", "psi_exact", "s1_total", "s2_total", "m_paper", "e_paper",
            "identity_gap", "grouping_gap", "main_asymptotic"]
    return rows, cols


def cmd_mertens(ns):
    s = mertens_series(ns.checkpoints, **_kw(ns))
    rows = []
    for r in s.rows():
        r["gap_mu"] = abs(r["s_mu"])
        r["gap_mulog"] = abs(r["s_mulog"] + 1.0)
        rows.append(r)
    cols = {
        "mu": ["y", "s_mu", "gap_mu"],
        "mulog": ["y", "s_mulog", "gap_mulog"],
        "both": ["y", "s_mu", "s_mulog", "mertens"],
    }[ns.series]
    return rows, cols


def _scan_config(ns, cls, min_x=100) -> ScanConfig:
    try:
        return ScanConfig(cls, tuple(ns.grid), B=ns.B, C=ns.C, D=ns.D, epsilon=ns.epsilon, min_x=min_x)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_scan(ns):
    rows = []
    for cls in ns.classes:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore" if ns.quiet else "default")
            tab = residual_scan(_scan_config(ns, cls), **_kw(ns))
        rows.extend(dict(q=cls.q, a=cls.a, **r.__dict__) for r in tab.rows)
    cols = ["x", "q", "a", "psi", "main", "residual", "sw_norm", "rh_norm", "mont_norm", "q_admissible"]
    return rows, cols


def cmd_mobius_scan(ns):
    rows = []
    for cls in ns.classes:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore" if ns.quiet else "default")
            tab = mobius_residual_scan(_scan_config(ns, cls, min_x=1), **_kw(ns))
        rows.extend(dict(q=cls.q, a=cls.a, **r.__dict__) for r in tab.rows)
    return rows, ["x", "q", "a", "mobius_sum", "log_norm", "rh_norm", "q_admissible"]


def cmd_fit(ns):
    s = mertens_series(ns.checkpoints, **_kw(ns))
    series, limit = (s.s_mulog, -1.0) if ns.series == "mulog" else (s.s_mu, 0.0)
    try:
        fit = fit_log_exponent(list(zip(s.checkpoints, series)), limit)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    row = {
        "series": ns.series,
        "limit": limit,
        "B": fit.B,
        "log_c": fit.log_c,
        "saturated": fit.saturated,
        "n_points": len(fit.ys),
        "gap_first": fit.gaps[0],
        "gap_last": fit.gaps[-1],
    }
    return [row], list(row)


def cmd_identities(ns):
    rep = verify_identities(ns.max_n)
    row = {
        "max_n": rep.max_n,
        "checked": rep.checked,
        "max_gap_inversion": rep.max_gap_inversion,
        "max_gap_split": rep.max_gap_split,
        "tolerance": ns.tol,
        "passed": rep.passed(ns.tol),
    }
    op = "<" if row["passed"] else ">="
    table_on_stdout = ns.table and ns.output in (None, "-")
    tol = f"{ns.tol:g}".replace("e-0", "e-")
    print(f"checked {rep.checked}, max |gap| {op} {tol}", file=sys.stderr if table_on_stdout else sys.stdout)
    return [row], list(row)


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["csv", "json"], default="csv")
    common.add_argument("--output", "-o", default=None, help="output file (default stdout)")
    common.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    common.add_argument("--segment", type=parse_int, default=DEFAULT_SEGMENT, help="sieve segment length")
    common.add_argument("--cache", default=None,
                        help="segment cache directory (overrides $PNTLAB_CACHE)")

    cls_args = argparse.ArgumentParser(add_help=False)
    cls_args.add_argument("--q", type=parse_int, default=1)
    cls_args.add_argument("--a", default="0", help="residue, or 'all' for every coprime residue")

    scan_args = argparse.ArgumentParser(add_help=False)
    scan_args.add_argument("--grid", type=parse_grid, default=parse_grid("1e4:1e8:4"),
                           help="comma list or lo:hi:per_decade")
    scan_args.add_argument("--B", type=float, default=3.0)
    scan_args.add_argument("--C", type=float, default=1.5)
    scan_args.add_argument("--D", type=float, default=1.5)
    scan_args.add_argument("--epsilon", type=float, default=0.0)
    scan_args.add_argument("--quiet", action="store_true", help="suppress admissibility warnings")

    p = argparse.ArgumentParser(prog="pntlab", description=__doc__.split("\n")[0])
    p.add_argument("--version", action="version", version=f"pntlab {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("sieve", parents=[common], help="populate the segment cache")
    s.add_argument("--lo", type=parse_int, default=1)
    s.add_argument("--hi", type=parse_int, required=True, help="last n sieved (inclusive)")
    s.add_argument("--kind", choices=["mobius", "mangoldt", "both"], default="both")
    s.set_defaults(func=cmd_sieve)

    s = sub.add_parser("psi", parents=[common, cls_args], help="psi, theta, pi over a class")
    s.add_argument("--x", type=parse_int_list, required=True)
    s.set_defaults(func=cmd_psi)

    s = sub.add_parser("pi", parents=[common, cls_args], help="prime counts, direct and by partial summation")
    s.add_argument("--x", type=parse_int_list, required=True)
    s.add_argument("--grid-points", type=int, default=64)
    s.set_defaults(func=cmd_pi)

    s = sub.add_parser("decompose", parents=[common, cls_args], help="main/error-term split of psi")
    s.add_argument("--x", type=parse_int_list, required=True)
    s.add_argument("--method", choices=["auto", "per_n", "grouped"], default="auto")
    s.set_defaults(func=cmd_decompose)

    s = sub.add_parser("mertens", parents=[common], help="partial sums of mu(n)/n and mu(n)log(n)/n")
    s.add_argument("--checkpoints", type=parse_int_list, default=[10**k for k in range(2, 9)])
    s.add_argument("--series", choices=["mu", "mulog", "both"], default="both")
    s.set_defaults(func=cmd_mertens)

    s = sub.add_parser("mobius-scan", parents=[common, cls_args, scan_args], help="Moebius sums over a class")
    s.set_defaults(func=cmd_mobius_scan)

    s = sub.add_parser("scan", parents=[common, cls_args, scan_args], help="normalized psi residuals")
    s.set_defaults(func=cmd_scan)

    s = sub.add_parser("fit", parents=[common], help="fit the log-power convergence exponent")
    s.add_argument("--checkpoints", type=parse_int_list, default=[10**k for k in range(3, 8)])
    s.add_argument("--series", choices=["mu", "mulog"], default="mulog")
    s.set_defaults(func=cmd_fit)

    s = sub.add_parser("identities", parents=[common], help="verify the divisor identities for Lambda")
    s.add_argument("--max-n", type=parse_int, default=10**5)
    s.add_argument("--tol", type=float, default=1e-9)
    s.add_argument("--table", action="store_true", help="also write the summary table")
    s.set_defaults(func=cmd_identities)
    return p


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if ns.cache is None and ns.command != "sieve" and os.environ.get("PNTLAB_CACHE"):
        ns.cache = os.environ["PNTLAB_CACHE"]
    config = ExperimentConfig.from_namespace(ns).to_dict()
    try:
        if hasattr(ns, "q"):
            ns.classes = _classes(ns.q, ns.a)
        rows, cols = ns.func(ns)
        if ns.command != "identities" or ns.table or ns.output:
            write_text(render(rows, cols, ns.format, config), ns.output)
    except UsageError as exc:
        print(f"pntlab {ns.command}: error: {exc}", file=sys.stderr)
        return 2
    except (RangeLimitError, ValueError, OSError, ArithmeticError) as exc:
        print(f"pntlab {ns.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    if ns.command == "identities" and not rows[0]["passed"]:
        return 1
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
