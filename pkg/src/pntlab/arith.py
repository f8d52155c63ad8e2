"""Segmented sieves for the Moebius and von Mangoldt functions, plus the
small multiplicative helpers (factorization, divisors, totient) used by every
other module.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import InitVar, dataclass, field
from functools import lru_cache
from typing import Callable, Iterator, TypeVar

import numpy as np

RANGE_LIMIT = 2**40
DEFAULT_SEGMENT = 1 << 22

T = TypeVar("T")


class RangeLimitError(ValueError):
    """Raised when a requested range exceeds the configured sieve cap."""


def check_range(lo: int, hi: int, limit: int | None = None) -> None:
    limit = RANGE_LIMIT if limit is None else limit
    if lo < 1 or hi <= lo:
        raise ValueError(f"need 1 <= lo < hi, got lo={lo}, hi={hi}")
    if hi > limit:
        raise RangeLimitError(f"hi={hi} exceeds range limit {limit}")


# ---------------------------------------------------------------------------
# prime base


@lru_cache(maxsize=8)
def _eratosthenes(limit: int) -> np.ndarray:
    if limit < 2:
        return np.zeros(0, dtype=np.int64)
    is_prime = np.ones(limit + 1, dtype=bool)
    is_prime[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if is_prime[p]:
            is_prime[p * p :: p] = False
    return np.flatnonzero(is_prime).astype(np.int64)


def small_primes(limit: int) -> np.ndarray:
    """All primes <= limit (cached by rounding the bound up to a power of two)."""
    if limit < 2:
        return np.zeros(0, dtype=np.int64)
    cap = 1 << max(8, (int(limit) - 1).bit_length())
    primes = _eratosthenes(cap)
    return primes[: np.searchsorted(primes, limit, side="right")]


_TRIAL = small_primes(1 << 16).tolist()


def factorize(n: int) -> list[tuple[int, int]]:
    """Prime factorization of ``n`` as ascending (p, e) pairs."""
    n = int(n)
    if n < 1:
        raise ValueError(f"factorize needs n >= 1, got {n}")
    out: list[tuple[int, int]] = []
    for p in _TRIAL:
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
    if n > 1:
        if n < (1 << 32):
            out.append((n, 1))
        else:
            # cofactor has no prime factor below 2^16
            from sympy import factorint

            out.extend(sorted(factorint(n).items()))
    return out


def divisors(n: int) -> list[int]:
    """Ascending list of the divisors of ``n``."""
    divs = [1]
    for p, e in factorize(n):
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def euler_phi(q: int) -> int:
    if q < 1:
        raise ValueError(f"euler_phi needs q >= 1, got {q}")
    if q > RANGE_LIMIT:
        raise RangeLimitError(f"q={q} exceeds range limit {RANGE_LIMIT}")
    phi = q
    for p, _ in factorize(q):
        phi -= phi // p
    return phi


def mobius(n: int) -> int:
    """mu(n) by factorization; the per-integer reference for the sieve."""
    fac = factorize(n)
    if any(e > 1 for _, e in fac):
        return 0
    return -1 if len(fac) % 2 else 1


# ---------------------------------------------------------------------------
# tables


@dataclass(frozen=True)
class MobiusTable:
    lo: int
    hi: int
    values: np.ndarray  # int8, values[n - lo] = mu(n)

    def __post_init__(self):
        if self.values.shape != (self.hi - self.lo,):
            raise ValueError("values length must equal hi - lo")

    def __getitem__(self, n: int) -> int:
        if not self.lo <= n < self.hi:
            raise IndexError(n)
        return int(self.values[n - self.lo])

    def ns(self) -> np.ndarray:
        return np.arange(self.lo, self.hi, dtype=np.int64)


@dataclass(frozen=True)
class MangoldtTable:
    """Prime-power structure per n: ``p[i] == 0`` means n is not a prime power."""

    lo: int
    hi: int
    p: np.ndarray  # uint64
    m: np.ndarray  # uint8

    def __post_init__(self):
        size = self.hi - self.lo
        if self.p.shape != (size,) or self.m.shape != (size,):
            raise ValueError("entry arrays must have length hi - lo")

    def entry(self, n: int) -> tuple[int, int] | None:
        if not self.lo <= n < self.hi:
            raise IndexError(n)
        p = int(self.p[n - self.lo])
        return None if p == 0 else (p, int(self.m[n - self.lo]))

    def __getitem__(self, n: int) -> float:
        e = self.entry(n)
        return 0.0 if e is None else math.log(e[0])

    def values(self) -> np.ndarray:
        """Lambda(n) as floats over the whole segment."""
        out = np.zeros(self.hi - self.lo, dtype=np.float64)
        nz = self.p != 0
        out[nz] = np.log(self.p[nz].astype(np.float64))
        return out


# ---------------------------------------------------------------------------
# segment sieves


def _first_multiple(p: int, lo: int) -> int:
    return -(-lo // p) * p


def sieve_mobius(lo: int, hi: int, limit: int | None = None) -> MobiusTable:
    """mu(n) for lo <= n < hi."""
    check_range(lo, hi, limit)
    size = hi - lo
    vals = np.ones(size, dtype=np.int8)
    prod = np.ones(size, dtype=np.int64)
    for p in small_primes(math.isqrt(hi - 1)).tolist():
        s = _first_multiple(p, lo) - lo
        if s < size:
            v = vals[s::p]
            np.negative(v, out=v)
            prod[s::p] *= p
        p2 = p * p
        s2 = _first_multiple(p2, lo) - lo
        if s2 < size:
            vals[s2::p2] = 0
    # at most one prime factor above sqrt(hi) remains unaccounted for
    ns = np.arange(lo, hi, dtype=np.int64)
    big = prod != ns
    vals[big] = -vals[big]
    return MobiusTable(lo, hi, vals)


def _prime_mask(lo: int, hi: int) -> np.ndarray:
    size = hi - lo
    mask = np.ones(size, dtype=bool)
    if lo <= 1:
        mask[: 2 - lo] = False
    for p in small_primes(math.isqrt(hi - 1)).tolist():
        s = max(p * p, _first_multiple(p, lo)) - lo
        if s < size:
            mask[s::p] = False
    return mask


def sieve_mangoldt(lo: int, hi: int, limit: int | None = None) -> MangoldtTable:
    """Prime-power records (p, m) for lo <= n < hi."""
    check_range(lo, hi, limit)
    size = hi - lo
    mask = _prime_mask(lo, hi)
    p_arr = np.zeros(size, dtype=np.uint64)
    m_arr = np.zeros(size, dtype=np.uint8)
    idx = np.flatnonzero(mask)
    p_arr[idx] = (idx + lo).astype(np.uint64)
    m_arr[idx] = 1
    for p in small_primes(math.isqrt(hi - 1)).tolist():
        pk, k = p * p, 2
        while pk < hi:
            if pk >= lo:
                p_arr[pk - lo] = p
                m_arr[pk - lo] = k
            pk *= p
            k += 1
    return MangoldtTable(lo, hi, p_arr, m_arr)


def segment_bounds(lo: int, hi: int, segment: int = DEFAULT_SEGMENT) -> list[tuple[int, int]]:
    if segment < 1:
        raise ValueError("segment size must be positive")
    return [(s, min(s + segment, hi)) for s in range(lo, hi, segment)]


def map_ordered(fn: Callable[..., T], items: list, threads: int = 1) -> Iterator[T]:
    """Apply ``fn`` to each item, yielding results in input order."""
    if threads <= 1 or len(items) <= 1:
        for it in items:
            yield fn(*it)
        return
    with ThreadPoolExecutor(max_workers=threads) as pool:
        # bounded look-ahead keeps at most `threads` segments in memory
        pending = []
        for it in items:
            pending.append(pool.submit(fn, *it))
            if len(pending) >= threads:
                yield pending.pop(0).result()
        for fut in pending:
            yield fut.result()


def iter_mobius(lo: int, hi: int, segment: int = DEFAULT_SEGMENT, threads: int = 1,
                cache=None, limit: int | None = None) -> Iterator[MobiusTable]:
    check_range(lo, hi, limit)

    def build(a, b):
        if cache is not None:
            hit = cache.load("mobius", a, b)
            if hit is not None:
                return hit
        return sieve_mobius(a, b, limit)

    yield from map_ordered(build, segment_bounds(lo, hi, segment), threads)


def iter_mangoldt(lo: int, hi: int, segment: int = DEFAULT_SEGMENT, threads: int = 1,
                  cache=None, limit: int | None = None) -> Iterator[MangoldtTable]:
    check_range(lo, hi, limit)

    def build(a, b):
        if cache is not None:
            hit = cache.load("mangoldt", a, b)
            if hit is not None:
                return hit
        return sieve_mangoldt(a, b, limit)

    yield from map_ordered(build, segment_bounds(lo, hi, segment), threads)


# ---------------------------------------------------------------------------
# residue classes


@dataclass(frozen=True)
class ProgressionClass:
    """Residue class a mod q. ``ProgressionClass(1, 0)`` means all integers.

    Non-coprime classes are only constructible with ``require_coprime=False``
    and carry ``coprime=False`` so downstream normalizations can refuse them.
    """

    q: int
    a: int
    require_coprime: InitVar[bool] = True
    phi_q: int = field(init=False)
    coprime: bool = field(init=False)

    def __post_init__(self, require_coprime: bool):
        if self.q < 1:
            raise ValueError(f"modulus must be >= 1, got q={self.q}")
        if not 0 <= self.a < self.q:
            raise ValueError(f"residue must satisfy 0 <= a < q, got a={self.a}, q={self.q}")
        g = math.gcd(self.a, self.q)
        if require_coprime and g != 1:
            raise ValueError(f"gcd(a, q) = {g} for a={self.a}, q={self.q}; need gcd 1")
        object.__setattr__(self, "phi_q", euler_phi(self.q))
        object.__setattr__(self, "coprime", g == 1)

    @classmethod
    def everything(cls) -> "ProgressionClass":
        return cls(1, 0)

    def first_at_or_after(self, lo: int) -> int:
        return lo + (self.a - lo) % self.q
