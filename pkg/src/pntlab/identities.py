"""Per-integer identities expressing Lambda(n) through Moebius sums over divisors.

All square-root comparisons are done on integers (``d*d < n``) so perfect
squares land on the right side of the split.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

from .arith import factorize, sieve_mangoldt


def divisors_with_mobius(n: int) -> list[tuple[int, int]]:
    """All divisors d of n paired with mu(d), ascending in d."""
    pairs = [(1, 1)]
    for p, e in factorize(n):
        nxt = []
        for d, mu in pairs:
            nxt.append((d, mu))
            nxt.append((d * p, -mu))
            pk = d * p
            for _ in range(e - 1):
                pk *= p
                nxt.append((pk, 0))
        pairs = nxt
    pairs.sort()
    return pairs


def mangoldt_from_mobius(n: int) -> float:
    """-sum_{d | n} mu(d) log d."""
    return 0.0 - math.fsum(mu * math.log(d) for d, mu in divisors_with_mobius(n) if mu)


@dataclass(frozen=True)
class SplitPair:
    s1: float  # -sum_{d|n, d < sqrt n} mu(d) log d
    s2: float  # -sum_{d|n, d <= sqrt n} mu(n/d) log(n/d)

    @property
    def total(self) -> float:
        return self.s1 + self.s2


def split_mangoldt(n: int) -> SplitPair:
    pairs = divisors_with_mobius(n)
    mu_of = dict(pairs)
    small = []
    large = []
    for d, mu in pairs:
        if d * d > n:
            break
        if d * d < n and mu:
            small.append(mu * math.log(d))
        c = n // d
        mu_c = mu_of[c]
        if mu_c:
            large.append(mu_c * math.log(c))
    return SplitPair(0.0 - math.fsum(small), 0.0 - math.fsum(large))


def divisor_partition(n: int) -> tuple[list[int], list[int]]:
    """Split the divisors of n into d < sqrt(n) and d >= sqrt(n)."""
    small, large = [], []
    for d, _ in divisors_with_mobius(n):
        (small if d * d < n else large).append(d)
    return small, large


@dataclass(frozen=True)
class IdentityReport:
    max_n: int
    checked: int
    max_gap_inversion: float
    max_gap_split: float
    worst_n_inversion: int
    worst_n_split: int
    seconds: float

    def passed(self, tol: float = 1e-9) -> bool:
        return self.max_gap_inversion < tol and self.max_gap_split < tol


def verify_identities(max_n: int) -> IdentityReport:
    """Check both identities for every 1 <= n <= max_n against the sieve."""
    if max_n < 1:
        raise ValueError("max_n must be >= 1")
    t0 = time.perf_counter()
    lam = sieve_mangoldt(1, max_n + 1).values()
    worst_inv = worst_split = (0.0, 1)
    for n in range(1, max_n + 1):
        target = float(lam[n - 1])
        g1 = abs(mangoldt_from_mobius(n) - target)
        g2 = abs(split_mangoldt(n).total - target)
        if g1 > worst_inv[0]:
            worst_inv = (g1, n)
        if g2 > worst_split[0]:
            worst_split = (g2, n)
    return IdentityReport(
        max_n=max_n,
        checked=max_n,
        max_gap_inversion=worst_inv[0],
        max_gap_split=worst_split[0],
        worst_n_inversion=worst_inv[1],
        worst_n_split=worst_split[1],
        seconds=time.perf_counter() - t0,
    )
