"""Integer number theory over word-sized primes.

Everything here is deterministic and exact; residues are kept as least
nonnegative representatives.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import isqrt

__all__ = [
    "DomainError",
    "PrimeContext",
    "build_prime_context",
    "dlog_table",
    "factorize",
    "is_prime",
    "is_primitive_root",
    "pow_mod",
    "primes_between",
    "totient",
]

_WORD = 1 << 64
# Above this, trial division gets slow enough to switch to Miller-Rabin.
_TRIAL_LIMIT = 1 << 40
# Deterministic witness set for every n < 3.3e24, which covers 64-bit words.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


def _check_word(m: int) -> None:
    if m < 2:
        raise DomainError(f"expected an integer >= 2, got {m}")
    if m >= _WORD:
        raise DomainError(f"{m} does not fit in a 64-bit word")


def _strong_probable_prime(m: int, a: int) -> bool:
    d, s = m - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    x = pow(a, d, m)
    if x in (1, m - 1):
        return True
    for _ in range(s - 1):
        x = x * x % m
        if x == m - 1:
            return True
    return False


def is_prime(m: int) -> bool:
    """Deterministic primality test for ``2 <= m < 2**64``.

    Trial division by 2, 3 and numbers 6k +/- 1 up to sqrt(m); for
    m >= 2**40 a strong-pseudoprime test with the first twelve prime bases,
    which has no false positives below 3.3e24.
    """
    _check_word(m)
    if m < 4:
        return True
    if m % 2 == 0 or m % 3 == 0:
        return False
    if m >= _TRIAL_LIMIT:
        return all(_strong_probable_prime(m, a) for a in _MR_BASES if a % m)
    r = isqrt(m)
    k = 5
    while k <= r:
        if m % k == 0 or m % (k + 2) == 0:
            return False
        k += 6
    return True


def factorize(m: int) -> list[tuple[int, int]]:
    """Prime factorization of ``m`` as ascending ``(prime, multiplicity)`` pairs."""
    _check_word(m)
    factors = []
    k = 2
    while k * k <= m:
        if m % k == 0:
            e = 0
            while m % k == 0:
                m //= k
                e += 1
            factors.append((k, e))
        k += 1 if k == 2 else 2
    if m > 1:
        factors.append((m, 1))
    return factors


def totient(m: int) -> int:
    if m == 1:
        return 1
    result = m
    for q, _ in factorize(m):
        result -= result // q
    return result


def pow_mod(base: int, exponent: int, modulus: int) -> int:
    if modulus < 2:
        raise DomainError(f"modulus must be >= 2, got {modulus}")
    if exponent < 0:
        raise DomainError(f"exponent must be >= 0, got {exponent}")
    return pow(base, exponent, modulus)


def is_primitive_root(g: int, p: int, prime_divisors: tuple[int, ...] | None = None) -> bool:
    """True iff ``g`` has multiplicative order exactly ``p - 1`` modulo prime ``p``."""
    g %= p
    if g == 0:
        return False
    n = p - 1
    if prime_divisors is None:
        prime_divisors = tuple(q for q, _ in factorize(n)) if n > 1 else ()
    return all(pow(g, n // q, p) != 1 for q in prime_divisors)


@dataclass(frozen=True)
class PrimeContext:
    """Number-theoretic facts about one prime ``p``, with array order ``n = p - 1``.

    ``t`` is the smallest prime divisor of ``(p - 1) / 2``.
    """

    p: int
    n: int
    factorization: tuple[tuple[int, int], ...]
    totient_n: int
    primitive_roots: tuple[int, ...]
    is_safe_prime: bool
    t: int

    @property
    def least_primitive_root(self) -> int:
        return self.primitive_roots[0]

    @property
    def largest_primitive_root(self) -> int:
        return self.primitive_roots[-1]

    @property
    def n_over_t(self) -> int:
        return self.n // self.t


@lru_cache(maxsize=None)
def build_prime_context(p: int) -> PrimeContext:
    if p < 5 or not is_prime(p):
        raise DomainError(f"expected a prime p >= 5, got {p}")
    n = p - 1
    fac = tuple(factorize(n))
    divisors = tuple(q for q, _ in fac)
    roots = tuple(g for g in range(2, p) if is_primitive_root(g, p, divisors))
    half = n // 2
    t = factorize(half)[0][0]
    return PrimeContext(
        p=p,
        n=n,
        factorization=fac,
        totient_n=totient(n),
        primitive_roots=roots,
        is_safe_prime=is_prime(half),
        t=t,
    )


def dlog_table(p: int, alpha: int) -> dict[int, int]:
    """Map each ``x`` in ``1..p-1`` to its discrete log base ``alpha``.

    Built from one sweep of successive powers; raises if ``alpha`` does not
    generate the whole multiplicative group.
    """
    table: dict[int, int] = {}
    x = 1
    for e in range(p - 1):
        if x in table:
            break
        table[x] = e
        x = x * alpha % p
    if len(table) != p - 1 or x != 1:
        raise DomainError(f"{alpha} is not a primitive root of {p}")
    return table


def primes_between(lo: int, hi: int) -> list[int]:
    """All primes in the inclusive range ``[lo, hi]``."""
    return [m for m in range(max(lo, 2), hi + 1) if is_prime(m)]

