"""Permutation constructions over F_p and Costas / Golomb checks.

Permutations are one-indexed: ``f(1), ..., f(n)`` with values in ``1..n``.
A dot of the permutation matrix sits at coordinates ``(f(i), i)``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import combinations
from math import gcd
from typing import Iterator, Sequence

import numpy as np

from .numthy import DomainError, PrimeContext, dlog_table

__all__ = [
    "FamilyId",
    "FamilyMember",
    "Label",
    "Permutation",
    "enumerate_family",
    "fixed_points",
    "inverse",
    "is_costas_difference_triangle",
    "is_costas_grid",
    "is_golomb_ruler",
    "parse_permutation",
    "power_perm",
    "welch_exp",
    "welch_log",
]


@dataclass(frozen=True)
class Permutation:
    """A bijection on ``[n]`` stored as the value tuple ``(f(1), ..., f(n))``."""

    values: tuple[int, ...]

    def __post_init__(self):
        values = tuple(int(x) for x in self.values)
        object.__setattr__(self, "values", values)
        n = len(values)
        if n == 0:
            raise DomainError("a permutation needs at least one entry")
        if sorted(values) != list(range(1, n + 1)):
            raise DomainError(f"not a bijection on [1..{n}]: {list(values)}")

    @property
    def order(self) -> int:
        return len(self.values)

    def __call__(self, i: int) -> int:
        if not 1 <= i <= len(self.values):
            raise IndexError(i)
        return self.values[i - 1]

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self) -> Iterator[int]:
        return iter(self.values)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.values, dtype=np.int32)

    def __str__(self) -> str:
        return ",".join(map(str, self.values))


def parse_permutation(text: str) -> Permutation:
    """Parse the comma-separated literal form, e.g. ``"3,2,6,4,5,1"``."""
    parts = [s.strip() for s in text.split(",")]
    try:
        values = [int(s) for s in parts]
    except ValueError:
        raise DomainError(f"not a comma-separated list of integers: {text!r}") from None
    return Permutation(tuple(values))


@dataclass(frozen=True, order=True)
class Label:
    """Construction tag of a family member, e.g. ``welch-exp:3`` or ``power:5``."""

    kind: str
    param: int

    KINDS = ("welch-exp", "welch-log", "power")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise DomainError(f"unknown construction kind {self.kind!r}")

    def __str__(self) -> str:
        return f"{self.kind}:{self.param}"

    @classmethod
    def parse(cls, text: str) -> "Label":
        kind, sep, param = text.partition(":")
        if not sep:
            raise DomainError(f"expected KIND:PARAM, got {text!r}")
        try:
            return cls(kind.strip(), int(param))
        except ValueError:
            raise DomainError(f"bad parameter in {text!r}") from None

    def build(self, ctx: PrimeContext) -> Permutation:
        if self.kind == "welch-exp":
            return welch_exp(ctx, self.param)
        if self.kind == "welch-log":
            return welch_log(ctx, self.param)
        return power_perm(ctx, self.param)


@dataclass(frozen=True)
class FamilyMember:
    label: Label
    permutation: Permutation


class FamilyId(enum.Enum):
    Wp = "Wp"
    Wpl = "Wpl"
    Wpel = "Wpel"
    Pp = "Pp"
    PWp = "PWp"
    PWpl = "PWpl"

    def expected_size(self, ctx: PrimeContext) -> int:
        phi = ctx.totient_n
        return {
            FamilyId.Wp: phi,
            FamilyId.Wpl: phi,
            FamilyId.Wpel: 2 * phi,
            FamilyId.Pp: phi - 1,
            FamilyId.PWp: 2 * phi - 1,
            FamilyId.PWpl: 2 * phi - 1,
        }[self]

    @property
    def include_auto_default(self) -> bool:
        # Welch-family maxima are taken over f != g; families containing power
        # permutations also admit f == g away from the origin.
        return self in (FamilyId.Pp, FamilyId.PWp, FamilyId.PWpl)

    def applicable(self, p: int) -> bool:
        return p > 5 if self is FamilyId.Wpel else p >= 5

    @classmethod
    def parse(cls, name: str) -> "FamilyId":
        for fam in cls:
            if fam.value.lower() == name.strip().lower():
                return fam
        raise DomainError(f"unknown family {name!r}; choose from {[f.value for f in cls]}")


def _check_primitive(ctx: PrimeContext, alpha: int) -> None:
    if alpha not in ctx.primitive_roots:
        raise DomainError(f"{alpha} is not a primitive root of {ctx.p}")


def _check_shift(ctx: PrimeContext, c: int) -> None:
    if not 0 <= c <= ctx.p - 2:
        raise DomainError(f"shift c must lie in [0, {ctx.p - 2}], got {c}")


def welch_exp(ctx: PrimeContext, alpha: int, c: int = 0) -> Permutation:
    """Exponential Welch array ``f(j) = alpha**(j - 1 + c) mod p``."""
    _check_primitive(ctx, alpha)
    _check_shift(ctx, c)
    p = ctx.p
    x = pow(alpha, c, p)
    values = []
    for _ in range(ctx.n):
        values.append(x)
        x = x * alpha % p
    return Permutation(tuple(values))


def welch_log(ctx: PrimeContext, alpha: int, c: int = 0) -> Permutation:
    """Logarithmic Welch array ``g(j) = 1 + c + log_alpha(j) (mod p - 1)``.

    The residue 0 is represented by ``p - 1`` so values stay in ``[p - 1]``.
    """
    _check_primitive(ctx, alpha)
    _check_shift(ctx, c)
    n = ctx.n
    logs = dlog_table(ctx.p, alpha)
    return Permutation(tuple((1 + c + logs[j]) % n or n for j in range(1, n + 1)))


def power_perm(ctx: PrimeContext, d: int) -> Permutation:
    """Power permutation ``f(i) = i**d mod p`` for ``gcd(d, p - 1) = 1``, ``1 < d <= p - 2``."""
    if not 1 < d <= ctx.p - 2 or gcd(d, ctx.n) != 1:
        raise DomainError(f"exponent {d} does not give a non-identity power permutation mod {ctx.p}")
    p = ctx.p
    return Permutation(tuple(pow(i, d, p) for i in range(1, p)))


def inverse(f: Permutation) -> Permutation:
    g = [0] * f.order
    for i, v in enumerate(f.values, start=1):
        g[v - 1] = i
    return Permutation(tuple(g))


def is_costas_grid(f: Permutation) -> bool:
    """Costas test through the full auto-correlation grid."""
    from .xcorr import correlation_grid

    counts = correlation_grid(f, f).counts.copy()
    n = f.order
    counts[n - 1, n - 1] = 0
    return int(counts.max()) <= 1


def is_costas_difference_triangle(f: Permutation) -> bool:
    """Costas test through the difference triangle: each row of signed
    differences ``f(i + k) - f(i)`` must be free of repeats."""
    v = f.values
    n = len(v)
    for k in range(1, n):
        row = [v[i + k] - v[i] for i in range(n - k)]
        if len(set(row)) != len(row):
            return False
    return True


def fixed_points(f: Permutation) -> list[int]:
    return [i for i, v in enumerate(f.values, start=1) if v == i]


def is_golomb_ruler(marks) -> bool:
    """True iff all pairwise differences of ``marks`` are distinct."""
    marks = sorted(set(marks))
    seen = set()
    for a, b in combinations(marks, 2):
        d = b - a
        if d in seen:
            return False
        seen.add(d)
    return True


def _welch_labels(ctx: PrimeContext, kinds: Sequence[str]) -> list[Label]:
    return [Label(kind, alpha) for alpha in ctx.primitive_roots for kind in kinds]


def _power_labels(ctx: PrimeContext) -> list[Label]:
    return [Label("power", d) for d in range(2, ctx.p - 1) if gcd(d, ctx.n) == 1]


_FAMILY_KINDS = {
    FamilyId.Wp: (("welch-exp",), False),
    FamilyId.Wpl: (("welch-log",), False),
    FamilyId.Wpel: (("welch-exp", "welch-log"), False),
    FamilyId.Pp: ((), True),
    FamilyId.PWp: (("welch-exp",), True),
    FamilyId.PWpl: (("welch-log",), True),
}


def family_labels(ctx: PrimeContext, fam: FamilyId) -> list[Label]:
    if not fam.applicable(ctx.p):
        raise DomainError(f"family {fam.value} is only defined for p > 5")
    kinds, with_power = _FAMILY_KINDS[fam]
    labels = _welch_labels(ctx, kinds)
    if with_power:
        labels += _power_labels(ctx)
    return labels


def enumerate_family(ctx: PrimeContext, fam: FamilyId) -> list[FamilyMember]:
    """Members of ``fam`` in canonical order.

    Welch members come first by ascending primitive root (exponential before
    logarithmic for the same root), then power members by ascending exponent.
    All Welch members use ``c = 0``.
    """
    return [FamilyMember(lab, lab.build(ctx)) for lab in family_labels(ctx, fam)]
