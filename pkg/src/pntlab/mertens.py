"""Partial sums of mu(n)/n and mu(n)log(n)/n, Moebius sums over a residue
class, the fractional-part sum from the main-term estimate, and a log-power
fit for convergence rates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .arith import DEFAULT_SEGMENT, ProgressionClass, iter_mobius, sieve_mobius
from .progression import as_threshold
from .summation import PrefixSampler

DEFAULT_CHECKPOINTS = tuple(10**k for k in range(2, 9))
SATURATION = 1e-12


@dataclass(frozen=True)
class MertensSeries:
    checkpoints: tuple[int, ...]
    s_mu: tuple[float, ...]      # sum_{n<=y} mu(n)/n
    s_mulog: tuple[float, ...]   # sum_{n<=y} mu(n) log(n)/n
    mertens: tuple[int, ...]     # sum_{n<=y} mu(n)

    def rows(self) -> list[dict]:
        return [
            {"y": y, "s_mu": a, "s_mulog": b, "mertens": m}
            for y, a, b, m in zip(self.checkpoints, self.s_mu, self.s_mulog, self.mertens)
        ]


def mertens_series(checkpoints: Iterable = DEFAULT_CHECKPOINTS, *, segment: int = DEFAULT_SEGMENT,
                   threads: int = 1, cache=None) -> MertensSeries:
    """All three partial sums at every checkpoint from a single sieve pass."""
    ys = sorted(set(as_threshold(y) for y in checkpoints))
    if not ys or ys[0] < 1:
        raise ValueError("checkpoints must be >= 1")
    mu_s = PrefixSampler(ys)
    log_s = PrefixSampler(ys)
    for tab in iter_mobius(1, ys[-1] + 1, segment=segment, threads=threads, cache=cache):
        nz = np.flatnonzero(tab.values)
        ns = nz.astype(np.int64) + tab.lo
        mu = tab.values[nz].astype(np.float64)
        nf = ns.astype(np.float64)
        mu_s.feed(ns, mu / nf, weights=tab.values[nz])
        log_s.feed(ns, mu * np.log(nf) / nf)
    s_mu, mert = mu_s.result()
    s_log, _ = log_s.result()
    return MertensSeries(
        checkpoints=tuple(ys),
        s_mu=tuple(float(v) for v in s_mu),
        s_mulog=tuple(float(v) + 0.0 for v in s_log),
        mertens=tuple(int(v) for v in mert),
    )


def mu_over_n_partial(y, **kw) -> float:
    return mertens_series([y], **kw).s_mu[0]


def mu_logn_over_n_partial(y, **kw) -> float:
    return mertens_series([y], **kw).s_mulog[0]


def mobius_progression_samples(xs: Sequence, cls: ProgressionClass, *, segment: int = DEFAULT_SEGMENT,
                               threads: int = 1, cache=None) -> list[int]:
    """sum_{n<=x, n = a mod q} mu(n) for each x in ``xs``, in input order."""
    xs = [as_threshold(x) for x in xs]
    pts = sorted(set(x for x in xs if x >= 1))
    sampler = PrefixSampler(pts)
    if pts:
        for tab in iter_mobius(1, pts[-1] + 1, segment=segment, threads=threads, cache=cache):
            start = cls.first_at_or_after(tab.lo) - tab.lo
            vals = tab.values[start::cls.q]
            nz = np.flatnonzero(vals)
            ns = tab.lo + start + nz.astype(np.int64) * cls.q
            sampler.feed(ns, weights=vals[nz])
    _, sums = sampler.result()
    lookup = dict(zip(pts, (int(v) for v in sums)))
    return [lookup.get(x, 0) for x in xs]


def mobius_progression_sum(x, cls: ProgressionClass, **kw) -> int:
    return mobius_progression_samples([x], cls, **kw)[0]


def fractional_sum(x) -> float:
    """sum_{d < sqrt x} mu(d) log(d) {x/d}."""
    x = as_threshold(x)
    if x < 1:
        raise ValueError("x must be >= 1")
    dmax = math.isqrt(x - 1)
    if dmax < 2:
        return 0.0
    mu = sieve_mobius(1, dmax + 1).values
    terms = [int(mu[d - 1]) * math.log(d) * (x % d) / d for d in range(2, dmax + 1) if mu[d - 1]]
    return math.fsum(terms) + 0.0


@dataclass(frozen=True)
class ExponentFit:
    """Least-squares fit of log|s(y) - limit| = log C - B log log y."""

    limit: float
    B: float
    log_c: float
    ys: tuple[int, ...]
    gaps: tuple[float, ...]
    saturated: bool


def fit_log_exponent(checkpoints: Sequence[tuple[float, float]], limit: float = -1.0) -> ExponentFit:
    pts = [(float(y), float(s)) for y, s in checkpoints]
    if len(pts) < 3:
        raise ValueError("need at least 3 checkpoints")
    ys = [y for y, _ in pts]
    if any(b <= a for a, b in zip(ys, ys[1:])) or ys[0] < 3:
        raise ValueError("checkpoints must be ascending with y >= 3")
    gaps = [abs(s - limit) for _, s in pts]
    ys_int = tuple(int(y) for y in ys)
    usable = [(y, g) for y, g in zip(ys, gaps) if g >= SATURATION]
    if len(usable) < 2:
        return ExponentFit(limit, math.nan, math.nan, ys_int, tuple(gaps), True)
    X = np.log(np.log([y for y, _ in usable]))
    Y = np.log([g for _, g in usable])
    slope, intercept = np.polyfit(X, Y, 1)
    return ExponentFit(limit, float(-slope), float(intercept), ys_int, tuple(gaps), False)
