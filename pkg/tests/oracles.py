"""Slow, independent reference implementations used only by the tests.

Nothing here imports from pntlab.
"""

import math


def trial_factor(n):
    out = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def mu_trial(n):
    f = trial_factor(n)
    if any(e > 1 for e in f.values()):
        return 0
    return (-1) ** len(f)


def mangoldt_trial(n):
    f = trial_factor(n)
    if len(f) == 1:
        return math.log(next(iter(f)))
    return 0.0


def is_squarefree_trial(n):
    p = 2
    while p * p <= n:
        if n % (p * p) == 0:
            return False
        p += 1
    return True


def prime_flags(limit):
    """bytearray Eratosthenes: flags[n] == 1 iff n prime, for n <= limit."""
    flags = bytearray([1]) * (limit + 1)
    flags[0:2] = b"\x00\x00"
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = bytearray(len(range(p * p, limit + 1, p)))
    return flags


def primes_upto(limit):
    return [n for n, f in enumerate(prime_flags(limit)) if f]


def psi_oracle(x, q=1, a=0):
    """psi(x, q, a) by listing prime powers from an independent prime list."""
    terms = []
    for p in primes_upto(x):
        lp = math.log(p)
        pk = p
        while pk <= x:
            if pk % q == a % q:
                terms.append(lp)
            pk *= p
    return math.fsum(terms)


def pi_oracle(x, q=1, a=0):
    return sum(1 for p in primes_upto(x) if p % q == a % q)


def mobius_list(limit):
    """mu(0..limit) via a linear sieve over smallest prime factors."""
    mu = [0] * (limit + 1)
    if limit >= 1:
        mu[1] = 1
    primes = []
    comp = bytearray(limit + 1)
    for i in range(2, limit + 1):
        if not comp[i]:
            primes.append(i)
            mu[i] = -1
        for p in primes:
            if i * p > limit:
                break
            comp[i * p] = 1
            if i % p == 0:
                mu[i * p] = 0
                break
            mu[i * p] = -mu[i]
    return mu


def count_multiples_brute(x, d, q, a):
    return sum(1 for n in range(1, x + 1) if n % d == 0 and n % q == a)


def split_sums_brute(x, q, a, mu):
    """(s1, s2) by enumerating every divisor of every n <= x in the class."""
    s1, s2 = [], []
    for n in range(1, x + 1):
        if n % q != a:
            continue
        for d in range(1, math.isqrt(n) + 1):
            if n % d:
                continue
            if d * d < n and mu[d]:
                s1.append(-mu[d] * math.log(d))
            m = n // d
            if mu[m]:
                s2.append(-mu[m] * math.log(m))
    return math.fsum(s1), math.fsum(s2)


def main_term_brute(x, q, a, mu):
    terms = []
    for d in range(2, x + 1):
        if d * d >= x:
            break
        if mu[d]:
            c = sum(1 for n in range(d, x + 1, d) if n % q == a)
            terms.append(-mu[d] * math.log(d) * c)
    return math.fsum(terms)


def error_term_brute(x, q, a, mu):
    terms = []
    d = 1
    while d * d <= x:
        for m in range(2, x // d + 1):
            if (d * m) % q == a and mu[m]:
                terms.append(-mu[m] * math.log(m))
        d += 1
    return math.fsum(terms)
