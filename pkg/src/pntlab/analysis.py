"""Residual scans against the Siegel-Walfisz, RH and Montgomery error shapes,
and the partial-summation route from theta/psi to prime counts.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .arith import ProgressionClass
from .mertens import mobius_progression_samples
from .progression import as_threshold, chebyshev_samples
from .summation import fsum_array


class AdmissibilityWarning(UserWarning):
    """q exceeds (log x)^C for some scan row."""


@dataclass(frozen=True)
class ScanConfig:
    cls: ProgressionClass
    x_grid: tuple[int, ...]
    B: float = 3.0
    C: float = 1.5
    D: float = 1.5
    epsilon: float = 0.0
    min_x: int = 100

    def __post_init__(self):
        grid = tuple(as_threshold(x) for x in self.x_grid)
        object.__setattr__(self, "x_grid", grid)
        if not grid:
            raise ValueError("x_grid is empty")
        if any(b <= a for a, b in zip(grid, grid[1:])):
            raise ValueError("x_grid must be strictly increasing")
        if grid[0] < self.min_x:
            raise ValueError(f"x_grid starts at {grid[0]} < {self.min_x}")
        if not self.B > self.C + 1:
            raise ValueError(f"need B > C + 1, got B={self.B}, C={self.C}")
        if self.C < 0:
            raise ValueError("C must be >= 0")


def log_grid(lo: float, hi: float, per_decade: int) -> tuple[int, ...]:
    """Integer thresholds spaced evenly in log10 from lo to hi, inclusive."""
    n = int(round(math.log10(hi / lo) * per_decade)) + 1
    vals = np.unique(np.floor(np.geomspace(lo, hi, n) + 0.5).astype(np.int64))
    return tuple(int(v) for v in vals)


@dataclass(frozen=True)
class ScanRow:
    x: int
    psi: float
    main: float
    residual: float
    sw_norm: float
    rh_norm: float
    mont_norm: float
    q_admissible: bool


def _admissible(q: int, x: int, C: float) -> bool:
    return x > 1 and q <= math.log(x) ** C


def make_scan_row(x: int, psi: float, cls: ProgressionClass, cfg: ScanConfig) -> ScanRow:
    main = x / cls.phi_q
    r = psi - main
    lx = math.log(x)
    return ScanRow(
        x=x,
        psi=psi,
        main=main,
        residual=r,
        sw_norm=abs(r) * cls.phi_q * lx**cfg.B / x,
        rh_norm=abs(r) / (math.sqrt(x) * lx**2),
        mont_norm=abs(r) * math.sqrt(cls.q) / x ** (0.5 + cfg.epsilon),
        q_admissible=_admissible(cls.q, x, cfg.C),
    )


@dataclass
class ScanTable:
    config: ScanConfig
    rows: list = field(default_factory=list)

    def column(self, name: str) -> np.ndarray:
        return np.array([getattr(r, name) for r in self.rows], dtype=np.float64)

    def decade_medians(self, values: np.ndarray) -> tuple[float, float]:
        """Median of ``values`` over the bottom and top decades of the grid."""
        xs = np.array([r.x for r in self.rows], dtype=np.float64)
        bottom = values[xs <= xs[0] * 10]
        top = values[xs >= xs[-1] / 10]
        return float(np.median(bottom)), float(np.median(top))


def _check_scan_class(cfg: ScanConfig) -> None:
    if not cfg.cls.coprime:
        raise ValueError(f"scan needs gcd(a, q) = 1, got a={cfg.cls.a}, q={cfg.cls.q}")


def _warn_inadmissible(rows, cfg: ScanConfig) -> None:
    bad = [r.x for r in rows if not r.q_admissible]
    if bad:
        warnings.warn(
            f"q={cfg.cls.q} exceeds (log x)^{cfg.C} at {len(bad)} grid point(s), first x={bad[0]}",
            AdmissibilityWarning,
            stacklevel=3,
        )


def residual_scan(cfg: ScanConfig, **kw) -> ScanTable:
    _check_scan_class(cfg)
    res = chebyshev_samples(cfg.x_grid, cfg.cls, **kw)
    rows = [make_scan_row(r.x, r.psi, cfg.cls, cfg) for r in res]
    _warn_inadmissible(rows, cfg)
    return ScanTable(cfg, rows)


@dataclass(frozen=True)
class MobiusScanRow:
    x: int
    mobius_sum: int
    log_norm: float  # |M(x,q,a)| (log x)^D / x
    rh_norm: float   # |M(x,q,a)| / x^(1/2 + eps)
    q_admissible: bool


def mobius_residual_scan(cfg: ScanConfig, **kw) -> ScanTable:
    _check_scan_class(cfg)
    sums = mobius_progression_samples(cfg.x_grid, cfg.cls, **kw)
    rows = []
    for x, r in zip(cfg.x_grid, sums):
        lx = math.log(x)
        rows.append(MobiusScanRow(
            x=x,
            mobius_sum=r,
            log_norm=abs(r) * lx**cfg.D / x,
            rh_norm=abs(r) / x ** (0.5 + cfg.epsilon),
            q_admissible=_admissible(cfg.cls.q, x, cfg.C),
        ))
    _warn_inadmissible(rows, cfg)
    return ScanTable(cfg, rows)


# ---------------------------------------------------------------------------
# partial summation


@dataclass(frozen=True)
class PartialSummationResult:
    x: int
    cls: ProgressionClass
    theta_route: float
    psi_route: float
    quad_error: float  # rigorous bound on |theta_route - pi(x, q, a)|
    nodes: int
    converged: bool

    @property
    def gap(self) -> float:
        return self.psi_route - self.theta_route


def _abel_estimate(t: np.ndarray, f: np.ndarray, x: int) -> tuple[float, float]:
    """f(x)/log x + int_2^x f(t) dt/(t log^2 t) for a nondecreasing step f.

    Trapezoid in f against the exact weight 1/log t_i - 1/log t_{i+1}; since f
    is monotone between nodes, half the spread of the two endpoint rules
    bounds the quadrature error.
    """
    inv_log = 1.0 / np.log(t)
    w = inv_log[:-1] - inv_log[1:]
    trap = fsum_array(0.5 * (f[:-1] + f[1:]) * w)
    spread = fsum_array(0.5 * (f[1:] - f[:-1]) * w)
    return float(f[-1]) / math.log(x) + trap, spread


def pi_from_psi(x, cls: ProgressionClass, grid_points: int = 64, *, tol: float = 0.5,
                max_nodes: int = 1 << 18, **kw) -> PartialSummationResult:
    """Prime count in ``cls`` up to x by partial summation over theta (and psi)."""
    x = as_threshold(x)
    if x < 3:
        raise ValueError("partial summation needs x >= 3")
    if grid_points < 16:
        raise ValueError("grid_points must be >= 16")
    n = grid_points
    while True:
        t = np.geomspace(2.0, float(x), n)
        t[0], t[-1] = 2.0, float(x)
        samples = chebyshev_samples(np.floor(t).astype(np.int64).tolist(), cls, **kw)
        theta = np.array([s.theta for s in samples])
        psi = np.array([s.psi for s in samples])
        est_theta, err = _abel_estimate(t, theta, x)
        if err <= tol or n >= max_nodes:
            est_psi, _ = _abel_estimate(t, psi, x)
            return PartialSummationResult(x, cls, est_theta, est_psi, err, n, err <= tol)
        # the bound shrinks roughly like 1/n
        n = min(max_nodes, max(2 * n, int(math.ceil(1.25 * n * err / tol))))


def median_relative_residual(table: ScanTable) -> tuple[float, float]:
    """Bottom/top-decade medians of |r| phi(q) / x."""
    phi = table.config.cls.phi_q
    rel = np.array([abs(r.residual) * phi / r.x for r in table.rows])
    return table.decade_medians(rel)

