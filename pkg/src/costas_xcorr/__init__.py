"""Aperiodic cross-correlation of Welch Costas arrays and power permutations.

Exhaustive family scans, the closed-form bounds they are checked against,
and a small CLI (``costas-xcorr``) for tables, verdicts and single grids.
"""

__version__ = "0.1.0"

from .numthy import DomainError, PrimeContext, build_prime_context, primes_between
from .arrays import FamilyId, Label, Permutation, enumerate_family, parse_permutation
from .xcorr import ShiftFilter, correlation_grid, cross_correlation_at, family_max, scan_family
from .bounds import TheoremId, verify_prime, verify_theorem

__all__ = [
    "DomainError",
    "FamilyId",
    "Label",
    "Permutation",
    "PrimeContext",
    "ShiftFilter",
    "TheoremId",
    "build_prime_context",
    "correlation_grid",
    "cross_correlation_at",
    "enumerate_family",
    "family_max",
    "parse_permutation",
    "primes_between",
    "scan_family",
    "verify_prime",
    "verify_theorem",
]
