"""Aperiodic cross-correlation: the definition, dense grids, and exhaustive
family scans.

``Psi_{f,g}(u, v)`` counts the indices ``i`` with ``1 <= i + u <= n`` and
``g(i + u) = f(i) + v``.
"""

from __future__ import annotations

import enum
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from ._kernel import AXIS_FILTERS, FILTER_CODES, N_FILTERS, scan_pairs, scan_pairs_axes
from .arrays import FamilyId, Label, Permutation, family_labels, inverse
from .numthy import DomainError, PrimeContext

__all__ = [
    "CorrelationGrid",
    "FamilyMaxReport",
    "ShiftFilter",
    "Witness",
    "correlation_grid",
    "cross_correlation_at",
    "family_max",
    "max_over",
    "restricted_family_max",
    "scan_family",
]

log = logging.getLogger(__name__)


class ShiftFilter(enum.Enum):
    """Predicates selecting which shifts ``(u, v)`` take part in a maximum."""

    ALL = "ALL"
    V_ZERO = "V_ZERO"
    U_ZERO = "U_ZERO"
    V_NONZERO = "V_NONZERO"
    U_NONZERO_V_ZERO = "U_NONZERO_V_ZERO"
    ORIGIN_ONLY = "ORIGIN_ONLY"
    EXCLUDE_ORIGIN = "EXCLUDE_ORIGIN"
    U_ZERO_V_NONZERO = "U_ZERO_V_NONZERO"
    UV_NONZERO = "UV_NONZERO"

    def admits(self, u: int, v: int) -> bool:
        return _PREDICATES[self](u, v)

    @property
    def code(self) -> int:
        return FILTER_CODES.index(self.value)

    @classmethod
    def parse(cls, name: str) -> "ShiftFilter":
        try:
            return cls[name.strip().upper()]
        except KeyError:
            raise DomainError(f"unknown filter {name!r}; choose from {[f.name for f in cls]}") from None


_PREDICATES = {
    ShiftFilter.ALL: lambda u, v: True,
    ShiftFilter.V_ZERO: lambda u, v: v == 0,
    ShiftFilter.U_ZERO: lambda u, v: u == 0,
    ShiftFilter.V_NONZERO: lambda u, v: v != 0,
    ShiftFilter.U_NONZERO_V_ZERO: lambda u, v: u != 0 and v == 0,
    ShiftFilter.ORIGIN_ONLY: lambda u, v: u == 0 and v == 0,
    ShiftFilter.EXCLUDE_ORIGIN: lambda u, v: (u, v) != (0, 0),
    ShiftFilter.U_ZERO_V_NONZERO: lambda u, v: u == 0 and v != 0,
    ShiftFilter.UV_NONZERO: lambda u, v: u != 0 and v != 0,
}


def _check_orders(f: Permutation, g: Permutation) -> int:
    if f.order != g.order:
        raise DomainError(f"order mismatch: {f.order} vs {g.order}")
    return f.order


def cross_correlation_at(f: Permutation, g: Permutation, shift: tuple[int, int]) -> int:
    """Number of coinciding dots of ``f`` shifted by ``(u, v)`` and ``g``.

    Straight from the definition, O(n); the reference every faster path is
    checked against.
    """
    n = _check_orders(f, g)
    u, v = shift
    fv, gv = f.values, g.values
    return sum(1 for i in range(1, n + 1) if 1 <= i + u <= n and gv[i + u - 1] == fv[i - 1] + v)


@dataclass(frozen=True)
class CorrelationGrid:
    """Dense table of ``Psi(u, v)`` for ``u, v`` in ``[-(n-1), n-1]``.

    ``counts[u + n - 1, v + n - 1]`` holds ``Psi(u, v)``.
    """

    order: int
    counts: np.ndarray = field(repr=False)

    def at(self, u: int, v: int) -> int:
        n = self.order
        if abs(u) > n - 1 or abs(v) > n - 1:
            return 0
        return int(self.counts[u + n - 1, v + n - 1])

    @property
    def shifts(self) -> range:
        return range(-(self.order - 1), self.order)

    def total(self) -> int:
        return int(self.counts.sum())


def correlation_grid(f: Permutation, g: Permutation) -> CorrelationGrid:
    """Every ``Psi_{f,g}(u, v)`` in one O(n^2) histogram pass.

    Each index pair ``(i, j)`` lands in cell ``(j - i, g(j) - f(i))``.
    """
    n = _check_orders(f, g)
    fa = f.as_array()
    ga = g.as_array()
    i = np.arange(n)
    u = i[None, :] - i[:, None]
    v = ga[None, :] - fa[:, None]
    side = 2 * n - 1
    flat = (u + n - 1) * side + (v + n - 1)
    counts = np.bincount(flat.ravel(), minlength=side * side).astype(np.uint16)
    return CorrelationGrid(n, counts.reshape(side, side))


def max_over(grid: CorrelationGrid, filt: ShiftFilter = ShiftFilter.ALL,
             exclude_origin: bool = False) -> tuple[int, tuple[int, int]]:
    """Largest grid entry over admitted shifts; ties go to smallest ``u``, then ``v``."""
    best = -1
    where = None
    for u in grid.shifts:
        for v in grid.shifts:
            if not filt.admits(u, v) or (exclude_origin and u == 0 and v == 0):
                continue
            c = grid.at(u, v)
            if c > best:
                best, where = c, (u, v)
    if where is None:
        raise DomainError(f"filter {filt.name} admits no shift")
    return best, where


@dataclass(frozen=True)
class Witness:
    a: Label
    b: Label
    u: int
    v: int

    def __str__(self) -> str:
        return f"{self.a} x {self.b} @ (u={self.u}, v={self.v})"


@dataclass(frozen=True)
class FamilyMaxReport:
    family: FamilyId
    p: int
    filter: ShiftFilter
    include_auto: bool
    value: int
    witnesses: tuple[Witness, ...]
    pairs_scanned: int

    @property
    def witness(self) -> Witness:
        return self.witnesses[0]


def run_scan(members: np.ndarray, a_idx: np.ndarray, b_idx: np.ndarray, workers: int = 1,
             inverses: np.ndarray | None = None) -> np.ndarray:
    """Per-pair, per-filter ``(value, u, v)`` maxima for the listed pairs.

    Passing ``inverses`` switches to the O(n) kernel that only fills the
    axis filters.  The pair list is cut into contiguous chunks, one per
    worker; the kernels release the GIL so chunks run concurrently on
    threads.  Output rows follow pair order, so the result does not depend
    on ``workers``.
    """
    out = np.empty((len(a_idx), N_FILTERS, 3), dtype=np.int32)
    if len(a_idx) == 0:
        return out
    workers = max(1, min(workers, len(a_idx)))
    cuts = np.linspace(0, len(a_idx), workers + 1).astype(int)
    chunks = [(lo, hi) for lo, hi in zip(cuts[:-1], cuts[1:]) if hi > lo]

    def work(span):
        lo, hi = span
        if inverses is None:
            scan_pairs(members, a_idx[lo:hi], b_idx[lo:hi], out[lo:hi])
        else:
            scan_pairs_axes(members, inverses, a_idx[lo:hi], b_idx[lo:hi], out[lo:hi])

    if len(chunks) == 1:
        work(chunks[0])
    else:
        with ThreadPoolExecutor(max_workers=len(chunks)) as pool:
            list(pool.map(work, chunks))
    return out


class _PrimeScan:
    """Lazily filled pair table over every member any family at ``p`` can hold.

    Members are ordered so each family's canonical order is a subsequence:
    exponential then logarithmic Welch per ascending root, then powers.
    Pair ``(a, b)``, ``a <= b``, sits at its row-major upper-triangle slot.
    A slot is either fully scanned or, when only axis filters were ever
    asked for, axis-scanned.
    """

    def __init__(self, ctx: PrimeContext):
        self.ctx = ctx
        self.labels = tuple(
            [Label(kind, g) for g in ctx.primitive_roots for kind in ("welch-exp", "welch-log")]
            + family_labels(ctx, FamilyId.Pp)
        )
        self.index = {lab: k for k, lab in enumerate(self.labels)}
        perms = [lab.build(ctx) for lab in self.labels]
        self.members = np.array([f.values for f in perms], dtype=np.int32)
        self.inverses = np.array([inverse(f).values for f in perms], dtype=np.int32)
        m = len(self.labels)
        slots = m * (m + 1) // 2
        self.best = np.full((slots, N_FILTERS, 3), -1, dtype=np.int32)
        self.full = np.zeros(slots, dtype=bool)
        self.axes = np.zeros(slots, dtype=bool)

    def fill(self, family: FamilyId, include_auto: bool, filters, workers: int):
        m = len(self.labels)
        idx = np.array([self.index[lab] for lab in family_labels(self.ctx, family)], dtype=np.int64)
        x, y = np.triu_indices(len(idx), k=0 if include_auto else 1)
        a, b = idx[x], idx[y]
        slots = a * m - a * (a - 1) // 2 + (b - a)
        axis_only = all(f.value in AXIS_FILTERS for f in filters)
        todo = ~(self.full[slots] | self.axes[slots]) if axis_only else ~self.full[slots]
        if todo.any():
            log.info("p=%d %s: %s scan of %d/%d pairs", self.ctx.p, family.value,
                     "axis" if axis_only else "full", int(todo.sum()), len(slots))
            fresh = slots[todo]
            self.best[fresh] = run_scan(self.members, a[todo], b[todo], workers,
                                        self.inverses if axis_only else None)
            (self.axes if axis_only else self.full)[fresh] = True
        return a, b, self.best[slots]


_SCANS: dict[int, _PrimeScan] = {}
# enough for every prime in the default 5..277 span (about 57 tables, well under 100 MB)
_SCANS_KEPT = 64


def _prime_scan(ctx: PrimeContext) -> _PrimeScan:
    scan = _SCANS.get(ctx.p)
    if scan is None:
        while len(_SCANS) >= _SCANS_KEPT:
            _SCANS.pop(next(iter(_SCANS)))
        scan = _SCANS[ctx.p] = _PrimeScan(ctx)
    return scan


def clear_scan_cache() -> None:
    _SCANS.clear()


def scan_family(ctx: PrimeContext, family: FamilyId, filters, include_auto: bool | None = None,
                workers: int = 1) -> dict[ShiftFilter, FamilyMaxReport]:
    """Exhaustive scan of ``family``, reporting its maximum under each filter.

    Filters confined to the u = 0 / v = 0 axes are answered in O(n) per pair;
    the rest need the full O(n^2) grid walk.

    Pair results are cached per prime, so asking for another filter or an
    overlapping family does not rescan shared pairs.
    """
    if include_auto is None:
        include_auto = family.include_auto_default
    include_auto = bool(include_auto)
    scan = _prime_scan(ctx)
    a, b, best = scan.fill(family, include_auto, filters, workers)
    reports = {}
    for filt in filters:
        col = best[:, filt.code, :]
        values = col[:, 0]
        if len(values) == 0 or values.max() < 0:
            raise DomainError(
                f"{family.value} at p={ctx.p} has no admissible pair under {filt.name}"
                f" (include_auto={include_auto})"
            )
        top = int(values.max())
        witnesses = tuple(
            Witness(scan.labels[a[k]], scan.labels[b[k]], int(col[k, 1]), int(col[k, 2]))
            for k in np.flatnonzero(values == top)
        )
        reports[filt] = FamilyMaxReport(family, ctx.p, filt, include_auto, top, witnesses, len(values))
    return reports


def family_max(ctx: PrimeContext, family: FamilyId, filt: ShiftFilter = ShiftFilter.ALL,
               include_auto: bool | None = None, workers: int = 1) -> FamilyMaxReport:
    """Maximal correlation over all admissible pairs of ``family`` and shifts under ``filt``.

    With ``include_auto`` false only pairs f != g are scanned; with it true
    each member is also paired with itself, away from the origin.
    ``include_auto=None`` picks the family's conventional default.
    """
    return scan_family(ctx, family, [filt], include_auto, workers)[filt]


def restricted_family_max(ctx: PrimeContext, family: FamilyId, filt: ShiftFilter,
                          include_auto: bool | None = None, workers: int = 1) -> FamilyMaxReport:
    if filt is ShiftFilter.ALL:
        raise DomainError("restricted_family_max needs a filter other than ALL")
    return family_max(ctx, family, filt, include_auto, workers)
