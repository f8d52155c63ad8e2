"""Main/error-term decomposition of psi(x, q, a).

Two versions of the split are computed side by side:

* the exact per-n split, dividing the divisors of every n at sqrt(n)
  (``exact_split_sums``), whose two totals add up to psi exactly;
* the grouped sums with a single global cut at sqrt(x) (``main_term`` with
  d < sqrt(x), ``error_term`` with d <= sqrt(x) and all m <= x/d).

Their difference from psi is reported as ``grouping_gap``; it is measured,
never assumed to vanish.

The complementary sums are evaluated by swapping the order of summation:
for each m the number of admissible d is counted in closed form, so a single
Moebius sieve pass over m <= x suffices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .arith import DEFAULT_SEGMENT, ProgressionClass, iter_mobius, sieve_mobius
from .identities import split_mangoldt
from .progression import as_threshold, count_progression_multiples, psi_direct
from .summation import NeumaierSum, fsum_array

PER_N_MAX = 10**5


def _require_coprime(cls: ProgressionClass) -> None:
    if not cls.coprime:
        raise ValueError(f"decomposition needs gcd(a, q) = 1, got a={cls.a}, q={cls.q}")


def _inverse_table(q: int) -> np.ndarray:
    inv = np.full(q, -1, dtype=np.int64)
    for r in range(q):
        if math.gcd(r, q) == 1:
            inv[r] = pow(r, -1, q) if q > 1 else 0
    return inv


def _count_in_class(L: np.ndarray, t: np.ndarray, q: int) -> np.ndarray:
    """#{1 <= d <= L : d = t (mod q)}, elementwise; t < 0 means no solution."""
    first = np.where(t == 0, q, t)
    n = (L - first) // q + 1
    return np.where((t >= 0) & (L >= first), n, 0)


def _mobius_log_weighted(x: int, cls: ProgressionClass, caps: dict[str, int | None], *,
                         segment: int = DEFAULT_SEGMENT, threads: int = 1,
                         cache=None) -> dict[str, float]:
    """For each cap, -sum_m mu(m) log(m) * #{d <= L(m) : d*m = a mod q}.

    L(m) = min(m, x // m) when the cap is None (the per-n split: d <= m), or
    min(cap, x // m) for a fixed global cap on d.
    """
    accs = {k: NeumaierSum() for k in caps}
    if x < 2:
        return {k: 0.0 for k in caps}
    q, a = cls.q, cls.a
    inv = _inverse_table(q)
    for tab in iter_mobius(1, x + 1, segment=segment, threads=threads, cache=cache):
        nz = np.flatnonzero(tab.values)
        m = nz.astype(np.int64) + tab.lo
        keep = m >= 2
        m, mu = m[keep], tab.values[nz[keep]].astype(np.float64)
        if m.size == 0:
            continue
        iv = inv[m % q]
        t = np.where(iv >= 0, (a * iv) % q, -1)
        base = mu * np.log(m.astype(np.float64))
        xm = x // m
        for key, cap in caps.items():
            L = np.minimum(m, xm) if cap is None else np.minimum(cap, xm)
            cnt = _count_in_class(L, t, q)
            sel = cnt > 0
            if sel.any():
                accs[key].add(fsum_array(base[sel] * cnt[sel]))
    return {k: 0.0 - acc.value for k, acc in accs.items()}


def _small_mobius(bound: int) -> np.ndarray:
    """mu(0..bound) with a dummy 0 at index 0."""
    out = np.zeros(bound + 1, dtype=np.int8)
    if bound >= 1:
        out[1:] = sieve_mobius(1, bound + 1).values
    return out


def _split_s1_grouped(x: int, cls: ProgressionClass) -> float:
    # pairs (d, n) with d | n, d*d < n <= x, n = a (mod q)
    dmax = math.isqrt(x - 1) if x >= 1 else 0
    mu = _small_mobius(dmax)
    terms = []
    for d in range(2, dmax + 1):
        if mu[d]:
            c = count_progression_multiples(x, d, cls) - count_progression_multiples(d * d, d, cls)
            if c:
                terms.append(int(mu[d]) * math.log(d) * c)
    return 0.0 - math.fsum(terms)


def _split_per_n(x: int, cls: ProgressionClass) -> tuple[float, float]:
    s1, s2 = [], []
    for n in range(cls.first_at_or_after(1), x + 1, cls.q):
        pair = split_mangoldt(n)
        s1.append(pair.s1)
        s2.append(pair.s2)
    return math.fsum(s1), math.fsum(s2)


def exact_split_sums(x, cls: ProgressionClass, method: str = "auto", **kw) -> tuple[float, float]:
    """(s1_total, s2_total): the per-n split of psi(x, q, a) summed over n.

    ``method`` is ``"per_n"`` (loop over n, enumerate divisors),
    ``"grouped"`` (swap summation order) or ``"auto"`` (per-n up to 1e5).
    """
    _require_coprime(cls)
    x = as_threshold(x)
    if method == "auto":
        method = "per_n" if x <= PER_N_MAX else "grouped"
    if method == "per_n":
        return _split_per_n(x, cls)
    if method != "grouped":
        raise ValueError(f"unknown method {method!r}")
    s2 = _mobius_log_weighted(x, cls, {"s2": None}, **kw)["s2"]
    return _split_s1_grouped(x, cls), s2


def main_term(x, cls: ProgressionClass) -> float:
    """-sum_{d < sqrt x} mu(d) log(d) #{n <= x : d | n, n = a mod q}."""
    _require_coprime(cls)
    x = as_threshold(x)
    if x < 1:
        return 0.0
    dmax = math.isqrt(x - 1)
    mu = _small_mobius(dmax)
    terms = []
    for d in range(2, dmax + 1):
        if mu[d]:
            c = count_progression_multiples(x, d, cls)
            if c:
                terms.append(int(mu[d]) * math.log(d) * c)
    return 0.0 - math.fsum(terms)


def error_term(x, cls: ProgressionClass, **kw) -> float:
    """-sum_{d <= sqrt x} sum_{m <= x/d, m = c_d mod q} mu(m) log(m), with c_d = a/d mod q."""
    _require_coprime(cls)
    x = as_threshold(x)
    return _mobius_log_weighted(x, cls, {"e": math.isqrt(x)}, **kw)["e"]


@dataclass(frozen=True)
class DecompositionResult:
    x: int
    cls: ProgressionClass
    psi_exact: float
    s1_total: float
    s2_total: float
    m_paper: float
    e_paper: float

    @property
    def identity_gap(self) -> float:
        return (self.s1_total + self.s2_total) - self.psi_exact

    @property
    def grouping_gap(self) -> float:
        return (self.m_paper + self.e_paper) - self.psi_exact

    @property
    def main_asymptotic(self) -> float:
        return self.x / self.cls.phi_q

    def identity_ok(self, rel: float = 1e-9) -> bool:
        return abs(self.identity_gap) <= rel * max(1.0, abs(self.psi_exact))


def decompose_psi(x, cls: ProgressionClass, method: str = "auto", **kw) -> DecompositionResult:
    _require_coprime(cls)
    x = as_threshold(x)
    psi = psi_direct(x, cls, **kw).psi
    if method == "auto":
        method = "per_n" if x <= PER_N_MAX else "grouped"
    if method == "per_n":
        s1, s2 = _split_per_n(x, cls)
        e = error_term(x, cls, **kw)
    elif method == "grouped":
        sums = _mobius_log_weighted(x, cls, {"s2": None, "e": math.isqrt(x)}, **kw)
        s1, s2, e = _split_s1_grouped(x, cls), sums["s2"], sums["e"]
    else:
        raise ValueError(f"unknown method {method!r}")
    return DecompositionResult(x, cls, psi, s1, s2, main_term(x, cls), e)


@dataclass(frozen=True)
class MainTermModels:
    """The grouped main term next to its smoothed approximations.

    Each count #{n <= x : d | n, n = a mod q} is within 1 of floor(x/d)/q, so
    ``|main_literal - model_q| < count_error_bound`` holds exactly. The
    phi(q)-normalized variants show how far the alternative count model
    floor(x/d)/phi(q) sits from the literal count.
    """

    x: int
    cls: ProgressionClass
    main_literal: float
    smooth_sum: float        # sum_{d<sqrt x, (d,q)=1} mu(d) log(d) / d
    floor_sum: float         # sum_{d<sqrt x, (d,q)=1} mu(d) log(d) floor(x/d)
    frac_sum: float          # sum_{d<sqrt x, (d,q)=1} mu(d) log(d) {x/d}
    floor_sum_all_d: float   # floor_sum without the gcd(d, q) = 1 restriction
    count_error_bound: float  # sum_{d<sqrt x, (d,q)=1, mu(d)!=0} log d

    @property
    def model_q(self) -> float:
        return -self.floor_sum / self.cls.q

    @property
    def model_phi(self) -> float:
        return -self.floor_sum / self.cls.phi_q

    @property
    def model_phi_all_d(self) -> float:
        return -self.floor_sum_all_d / self.cls.phi_q

    @property
    def smooth_q(self) -> float:
        return -self.x * self.smooth_sum / self.cls.q

    @property
    def smooth_phi(self) -> float:
        return -self.x * self.smooth_sum / self.cls.phi_q

    @property
    def discrepancy_q(self) -> float:
        return self.main_literal - self.model_q

    @property
    def discrepancy_phi(self) -> float:
        return self.main_literal - self.model_phi


def main_term_models(x, cls: ProgressionClass) -> MainTermModels:
    _require_coprime(cls)
    x = as_threshold(x)
    dmax = math.isqrt(x - 1) if x >= 1 else 0
    mu = _small_mobius(dmax)
    smooth, floor_t, frac, floor_all, bound = [], [], [], [], []
    for d in range(2, dmax + 1):
        if not mu[d]:
            continue
        w = int(mu[d]) * math.log(d)
        floor_all.append(w * (x // d))
        if math.gcd(d, cls.q) != 1:
            continue
        smooth.append(w / d)
        floor_t.append(w * (x // d))
        frac.append(w * (x % d) / d)
        bound.append(math.log(d))
    return MainTermModels(
        x=x,
        cls=cls,
        main_literal=main_term(x, cls),
        smooth_sum=math.fsum(smooth),
        floor_sum=math.fsum(floor_t),
        frac_sum=math.fsum(frac),
        floor_sum_all_d=math.fsum(floor_all),
        count_error_bound=math.fsum(bound),
    )
