"""pntlab: exact sieves and sums for primes in arithmetic progressions."""

__version__ = "0.1.0"

from .arith import (  # noqa: E402
    MangoldtTable,
    MobiusTable,
    ProgressionClass,
    RangeLimitError,
    divisors,
    euler_phi,
    sieve_mangoldt,
    sieve_mobius,
)
from .progression import pi_direct, psi_all, psi_direct  # noqa: E402

__all__ = [
    "MangoldtTable",
    "MobiusTable",
    "ProgressionClass",
    "RangeLimitError",
    "divisors",
    "euler_phi",
    "pi_direct",
    "psi_all",
    "psi_direct",
    "sieve_mangoldt",
    "sieve_mobius",
]
