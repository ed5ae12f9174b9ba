"""Closed-form correlation bounds and verdicts against exhaustive maxima.

Floors, ceilings and comparisons against square roots or real logarithms
are settled in integer arithmetic where the bound allows it; the remaining
comparisons use an absolute tolerance of ``TOL``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from math import gcd, isqrt, log, sqrt

from .arrays import FamilyId
from .numthy import DomainError, PrimeContext, is_prime
from .xcorr import ShiftFilter, Witness, scan_family

__all__ = [
    "BoundVerdict",
    "TheoremId",
    "bound_ard_pp",
    "bound_dg_wp_v0",
    "bound_gw_wp_vnz",
    "bound_thm1_wpel",
    "bound_thm2_pp_u0_vnz",
    "bound_thm4_pwp_v0",
    "floor_4p_log",
    "sidon_bound",
    "table4_row",
    "trinomial_root_bound",
    "trinomial_root_count",
    "verify_prime",
    "verify_theorem",
]

TOL = 1e-9


class ArdCase(enum.Enum):
    BOTH_ZERO = "BOTH_ZERO"
    U_NONZERO_V_ZERO = "U_NONZERO_V_ZERO"


class TheoremId(enum.Enum):
    """One checkable claim: a family, the shifts it covers, and its bound.

    The two ``OPEN_*`` entries have no claimed bound and only report the
    empirical maximum.
    """

    DG_Wp_V0 = ("DG_Wp_V0", FamilyId.Wp, ShiftFilter.V_ZERO, False, "=")
    GW_Wp_VNZ = ("GW_Wp_VNZ", FamilyId.Wp, ShiftFilter.V_NONZERO, False, "<=")
    THM1_Wpel = ("THM1_Wpel", FamilyId.Wpel, ShiftFilter.ALL, False, "<=")
    ARD_Pp_00 = ("ARD_Pp_00", FamilyId.Pp, ShiftFilter.ORIGIN_ONLY, True, "=")
    ARD_Pp_UNZ_V0 = ("ARD_Pp_UNZ_V0", FamilyId.Pp, ShiftFilter.U_NONZERO_V_ZERO, True, "<=")
    THM2_Pp_U0_VNZ = ("THM2_Pp_U0_VNZ", FamilyId.Pp, ShiftFilter.U_ZERO_V_NONZERO, True, "<=")
    THM4_PWp_V0 = ("THM4_PWp_V0", FamilyId.PWp, ShiftFilter.V_ZERO, True, None)
    THM5_PWpl_U0 = ("THM5_PWpl_U0", FamilyId.PWpl, ShiftFilter.U_ZERO, True, None)
    OPEN_Pp_UV_NZ = ("OPEN_Pp_UV_NZ", FamilyId.Pp, ShiftFilter.UV_NONZERO, True, "none")
    OPEN_PWp_VNZ = ("OPEN_PWp_VNZ", FamilyId.PWp, ShiftFilter.V_NONZERO, True, "none")

    def __init__(self, key, family, filt, include_auto, relation):
        self.key = key
        self.family = family
        self.filter = filt
        self.include_auto = include_auto
        self._relation = relation

    def relation(self, ctx: PrimeContext) -> str:
        if self._relation is None:
            return "<=" if ctx.is_safe_prime else "="
        return self._relation

    @property
    def is_open(self) -> bool:
        return self._relation == "none"

    def applicable(self, ctx: PrimeContext) -> bool:
        if self is TheoremId.THM1_Wpel:
            return ctx.p >= 7
        if self is TheoremId.ARD_Pp_00:
            # needs two distinct power permutations; (0, 0) is barred for f = g
            return ctx.totient_n - 1 >= 2
        return True

    @classmethod
    def claimed(cls) -> list["TheoremId"]:
        return [t for t in cls if not t.is_open]

    @classmethod
    def parse(cls, name: str) -> "TheoremId":
        for t in cls:
            if t.key.lower() == name.strip().lower():
                return t
        raise DomainError(f"unknown theorem {name!r}; choose from {[t.key for t in cls]}")


# -- closed forms ----------------------------------------------------------


def bound_dg_wp_v0(ctx: PrimeContext) -> int:
    return ctx.n // ctx.t


def bound_gw_wp_vnz(ctx: PrimeContext) -> int:
    """``1 + floor((1 - 2/(p-1)) * sqrt(p))``, floored exactly.

    ``floor(sqrt(x)) == isqrt(floor(x))`` for real ``x >= 0``, and here
    ``x = p (p-3)^2 / (p-1)^2``.
    """
    p = ctx.p
    return 1 + isqrt(p * (p - 3) ** 2 // (p - 1) ** 2)


def _wpel_second_term(ctx: PrimeContext) -> int:
    return bound_gw_wp_vnz(ctx) if ctx.is_safe_prime else bound_dg_wp_v0(ctx)


def floor_4p_log(p: int, alpha: int) -> int:
    """``floor(4p * ln(alpha) / ln(p))``: the largest k with ``p**k <= alpha**(4p)``."""
    target = alpha ** (4 * p)
    k = int(4 * p * log(alpha) / log(p))
    while p ** (k + 1) <= target:
        k += 1
    while p ** k > target:
        k -= 1
    return k


def bound_thm1_wpel(ctx: PrimeContext, alpha: int | None = None) -> float:
    """``max{4p log_p(alpha) + 1, X}`` with X the GW bound for safe p, else (p-1)/t.

    ``alpha`` defaults to the least primitive root.
    """
    alpha = ctx.least_primitive_root if alpha is None else alpha
    if alpha not in ctx.primitive_roots:
        raise DomainError(f"{alpha} is not a primitive root of {ctx.p}")
    return max(4 * ctx.p * log(alpha) / log(ctx.p) + 1, _wpel_second_term(ctx))


def table4_row(ctx: PrimeContext, alpha: int | None = None) -> tuple[int, int, bool]:
    """``(alpha, value, nontrivial)`` in the floored tabulation convention.

    ``value = max{floor(4p log_p alpha), X}``; a row is nontrivial when the
    floored log term is below the array order ``p - 1``.
    """
    alpha = ctx.least_primitive_root if alpha is None else alpha
    head = floor_4p_log(ctx.p, alpha)
    return alpha, max(head, _wpel_second_term(ctx)), head < ctx.p - 1


def _ceil_ard(p: int) -> int:
    # smallest k with k(p-1) >= (p-2)(1 + sqrt(p))
    k = max(0, int((p - 2) * (1 + sqrt(p)) / (p - 1)) - 2)
    while True:
        lhs = k * (p - 1) - (p - 2)
        if lhs >= 0 and lhs * lhs >= (p - 2) ** 2 * p:
            return k
        k += 1


def bound_ard_pp(ctx: PrimeContext, case: ArdCase | str = ArdCase.BOTH_ZERO) -> int:
    case = ArdCase(case)
    if case is ArdCase.BOTH_ZERO:
        return ctx.n // ctx.t
    return _ceil_ard(ctx.p)


def bound_thm2_pp_u0_vnz(ctx: PrimeContext) -> float:
    return 0.5 + sqrt(ctx.p - 1)


def sidon_bound(n: int) -> float:
    """Strict ceiling on the size of a Sidon set inside ``[n]``."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    return n ** 0.5 + n ** 0.25 + 0.5


def bound_thm4_pwp_v0(ctx: PrimeContext) -> tuple[float, str]:
    """Bound and claimed relation: Sidon ceiling (<=) for safe p, else (p-1)/t (=)."""
    if ctx.is_safe_prime:
        return sidon_bound(ctx.n), "<="
    return ctx.n // ctx.t, "="


def trinomial_root_count(p: int, n: int, s: int, a: int, b: int) -> int:
    """Number of x in F_p with ``x**n + a*x**s + b == 0``, by trying every x."""
    if a % p == 0 or b % p == 0:
        raise DomainError("trinomial coefficients a and b must be nonzero mod p")
    if not n > s >= 1:
        raise DomainError(f"need n > s >= 1, got n={n}, s={s}")
    return sum(1 for x in range(p) if (pow(x, n, p) + a * pow(x, s, p) + b) % p == 0)


def trinomial_root_bound(p: int, n: int, s: int) -> int:
    """``delta * floor(1/2 + sqrt((p-1)/delta))`` with ``delta = gcd(n, s, p-1)``."""
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    if not n > s >= 1:
        raise DomainError(f"need n > s >= 1, got n={n}, s={s}")
    delta = gcd(gcd(n, s), p - 1)
    # floor(1/2 + sqrt(x)) == (1 + isqrt(4x)) // 2
    return delta * ((1 + isqrt(4 * ((p - 1) // delta))) // 2)


# -- verdicts --------------------------------------------------------------


@dataclass(frozen=True)
class BoundVerdict:
    theorem_id: TheoremId
    p: int
    bound_value: float | None
    empirical_value: int
    relation_claimed: str
    holds: bool
    witness: Witness | None

    @property
    def status(self) -> str:
        if self.relation_claimed == "none":
            return "EMPIRICAL"
        if not self.holds:
            return "FAIL"
        return "OK"


def _bound_and_check(tid: TheoremId, ctx: PrimeContext, e: int, alpha: int | None):
    """Bound value plus an exact (or tolerance-based) test of ``e <= bound``."""
    p = ctx.p
    if tid is TheoremId.DG_Wp_V0:
        b = bound_dg_wp_v0(ctx)
        return b, e <= b
    if tid is TheoremId.GW_Wp_VNZ:
        b = bound_gw_wp_vnz(ctx)
        return b, e <= b
    if tid is TheoremId.THM1_Wpel:
        alpha = ctx.least_primitive_root if alpha is None else alpha
        b = bound_thm1_wpel(ctx, alpha)
        # e <= 4p log_p(alpha) + 1  <=>  p**(e-1) <= alpha**(4p)
        head = e <= 1 or p ** (e - 1) <= alpha ** (4 * p)
        return b, head or e <= _wpel_second_term(ctx)
    if tid is TheoremId.ARD_Pp_00:
        b = bound_ard_pp(ctx, ArdCase.BOTH_ZERO)
        return b, e <= b
    if tid is TheoremId.ARD_Pp_UNZ_V0:
        b = bound_ard_pp(ctx, ArdCase.U_NONZERO_V_ZERO)
        return b, e <= b
    if tid is TheoremId.THM2_Pp_U0_VNZ:
        # e <= 1/2 + sqrt(p-1)  <=>  2e - 1 <= sqrt(4(p-1))
        lhs = 2 * e - 1
        return bound_thm2_pp_u0_vnz(ctx), lhs <= 0 or lhs * lhs <= 4 * (p - 1)
    if tid in (TheoremId.THM4_PWp_V0, TheoremId.THM5_PWpl_U0):
        b, _ = bound_thm4_pwp_v0(ctx)
        return b, e <= b + TOL
    return None, True


def _verdict(tid: TheoremId, ctx: PrimeContext, report, alpha: int | None) -> BoundVerdict:
    e = report.value
    relation = tid.relation(ctx)
    bound, within = _bound_and_check(tid, ctx, e, alpha)
    if relation == "=":
        holds = e == bound
    else:
        holds = within
    return BoundVerdict(tid, ctx.p, bound, e, relation, holds, report.witness)


def verify_theorem(ctx: PrimeContext, theorem_id: TheoremId, workers: int = 1,
                   alpha: int | None = None) -> BoundVerdict:
    """Compare one claim against the exhaustive restricted maximum at ``ctx.p``.

    ``alpha`` only matters for THM1_Wpel, where it picks the primitive root
    the bound is evaluated at (least root by default).
    """
    if not theorem_id.applicable(ctx):
        raise DomainError(f"{theorem_id.key} does not apply at p={ctx.p}")
    report = scan_family(ctx, theorem_id.family, [theorem_id.filter],
                         theorem_id.include_auto, workers)[theorem_id.filter]
    return _verdict(theorem_id, ctx, report, alpha)


def verify_prime(ctx: PrimeContext, theorem_ids=None, workers: int = 1,
                 alpha: int | None = None) -> list[BoundVerdict]:
    """Verdicts for every applicable claim at ``ctx.p``, sharing family scans."""
    ids = TheoremId.claimed() if theorem_ids is None else list(theorem_ids)
    ids = [t for t in ids if t.applicable(ctx)]
    groups: dict[tuple[FamilyId, bool], list[TheoremId]] = {}
    for t in ids:
        groups.setdefault((t.family, t.include_auto), []).append(t)
    reports = {}
    for (family, include_auto), members in groups.items():
        filters = list(dict.fromkeys(t.filter for t in members))
        got = scan_family(ctx, family, filters, include_auto, workers)
        for t in members:
            reports[t] = got[t.filter]
    return [_verdict(t, ctx, reports[t], alpha) for t in ids]
