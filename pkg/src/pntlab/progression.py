"""Exact sums over an arithmetic progression: CRT residues, counts of
multiples, and Chebyshev psi / theta / prime counts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .arith import (
    DEFAULT_SEGMENT,
    ProgressionClass,
    iter_mangoldt,
    small_primes,
)
from .summation import PrefixSampler


def as_threshold(x) -> int:
    """Sums run over integers n <= x, so a real threshold is floored."""
    if isinstance(x, (int, np.integer)):
        xi = int(x)
    else:
        xf = float(x)
        if not math.isfinite(xf):
            raise ValueError(f"threshold must be finite, got {x!r}")
        xi = math.floor(xf)
    if xi < 0:
        raise ValueError(f"threshold must be >= 0, got {x!r}")
    return xi


@dataclass(frozen=True)
class CrtSolution:
    exists: bool
    b: int | None
    modulus: int


def crt_residue(d: int, cls: ProgressionClass) -> CrtSolution:
    """Residue b in (0, modulus] with b = 0 mod d and b = a mod q."""
    if d < 1:
        raise ValueError(f"d must be >= 1, got {d}")
    q, a = cls.q, cls.a
    g = math.gcd(d, q)
    modulus = d * q // g
    if a % g:
        return CrtSolution(False, None, modulus)
    # d*k = a (mod q)  <=>  (d/g) k = a/g (mod q/g)
    qg = q // g
    k = (a // g) * pow(d // g, -1, qg) % qg if qg > 1 else 0
    b = d * k
    if b == 0:
        b = modulus
    return CrtSolution(True, b, modulus)


def count_progression_multiples(x, d: int, cls: ProgressionClass) -> int:
    """#{1 <= n <= x : d | n, n = a mod q}."""
    x = as_threshold(x)
    sol = crt_residue(d, cls)
    if not sol.exists or sol.b > x:
        return 0
    return (x - sol.b) // sol.modulus + 1


@dataclass(frozen=True)
class ChebyshevResult:
    x: int
    cls: ProgressionClass
    psi: float
    theta: float
    pi_count: int

    @property
    def main(self) -> float:
        return self.x / self.cls.phi_q

    @property
    def residual(self) -> float:
        return self.psi - self.main


def chebyshev_samples(xs: Iterable, cls: ProgressionClass, *, segment: int = DEFAULT_SEGMENT,
                      threads: int = 1, cache=None) -> list[ChebyshevResult]:
    """psi, theta and pi over ``cls`` at every threshold in ``xs``, in one sieve pass.

    Results come back in the order of ``xs`` (duplicates allowed).
    """
    xs = [as_threshold(x) for x in xs]
    points = sorted(set(x for x in xs if x >= 2))
    psi_s = PrefixSampler(points)
    theta_s = PrefixSampler(points)
    top = points[-1] if points else 1
    if top >= 2:
        q, a = cls.q, cls.a
        for tab in iter_mangoldt(1, top + 1, segment=segment, threads=threads, cache=cache):
            start = cls.first_at_or_after(tab.lo) - tab.lo
            p = tab.p[start::q]
            hit = np.flatnonzero(p)
            if hit.size == 0:
                continue
            ns = tab.lo + start + hit.astype(np.int64) * q
            ps = p[hit].astype(np.float64)
            logs = np.log(ps)
            psi_s.feed(ns, logs)
            prime = tab.m[start::q][hit] == 1
            theta_s.feed(ns[prime], logs[prime])
    psi_v, _ = psi_s.result()
    theta_v, pi_v = theta_s.result()
    lookup = {pt: (float(psi_v[i]), float(theta_v[i]), int(pi_v[i])) for i, pt in enumerate(points)}
    out = []
    for x in xs:
        psi, theta, pi = lookup.get(x, (0.0, 0.0, 0))
        out.append(ChebyshevResult(x, cls, psi, theta, pi))
    return out


def psi_direct(x, cls: ProgressionClass, **kw) -> ChebyshevResult:
    return chebyshev_samples([x], cls, **kw)[0]


def pi_direct(x, cls: ProgressionClass, **kw) -> int:
    return psi_direct(x, cls, **kw).pi_count


def psi_all(x, **kw) -> float:
    return psi_direct(x, ProgressionClass.everything(), **kw).psi


def prime_power_excess(x) -> float:
    """sum_{k >= 2} theta(x^(1/k)), computed from integer roots."""
    x = as_threshold(x)
    total = []
    k = 2
    while 2**k <= x:
        root = _iroot(x, k)
        total.append(math.fsum(math.log(p) for p in small_primes(root).tolist()))
        k += 1
    return math.fsum(total)


def _iroot(x: int, k: int) -> int:
    r = int(round(x ** (1.0 / k)))
    while r**k > x:
        r -= 1
    while (r + 1) ** k <= x:
        r += 1
    return r


def psi_by_residue(x, q: int, **kw) -> list[float]:
    """psi(x, q, a) for every 0 <= a < q, coprime or not."""
    return [psi_direct(x, ProgressionClass(q, a, require_coprime=False), **kw).psi for a in range(q)]

