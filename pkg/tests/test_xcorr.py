import numpy as np
import pytest
from hypothesis import given, strategies as st

from costas_xcorr._kernel import AXIS_FILTERS
from costas_xcorr.arrays import FamilyId, Permutation, enumerate_family, inverse
from costas_xcorr.numthy import DomainError, build_prime_context
from costas_xcorr.xcorr import (
    ShiftFilter,
    clear_scan_cache,
    correlation_grid,
    cross_correlation_at,
    family_max,
    max_over,
    restricted_family_max,
    run_scan,
    scan_family,
)
from reference_data import EXAMPLE_ARRAY


def perm_pairs(max_n=12):
    return st.integers(1, max_n).flatmap(
        lambda n: st.tuples(st.permutations(range(1, n + 1)), st.permutations(range(1, n + 1)))
    )


def brute_family_max(ctx, family, filt, include_auto):
    members = [m.permutation for m in enumerate_family(ctx, family)]
    best = -1
    for i, f in enumerate(members):
        for j in range(i if include_auto else i + 1, len(members)):
            g = members[j]
            grid = correlation_grid(f, g)
            try:
                best = max(best, max_over(grid, filt, exclude_origin=i == j)[0])
            except DomainError:
                pass
    return best


@given(perm_pairs())
def test_grid_matches_definition(pair):
    f, g = (Permutation(tuple(x)) for x in pair)
    grid = correlation_grid(f, g)
    n = f.order
    for u in grid.shifts:
        for v in grid.shifts:
            assert grid.at(u, v) == cross_correlation_at(f, g, (u, v))
    # out of range shifts never coincide
    assert grid.at(n, 0) == 0 == cross_correlation_at(f, g, (n, 0))


@given(perm_pairs(20))
def test_grid_mass_symmetry_transpose(pair):
    f, g = (Permutation(tuple(x)) for x in pair)
    n = f.order
    fg = correlation_grid(f, g)
    gf = correlation_grid(g, f)
    tt = correlation_grid(inverse(f), inverse(g))
    assert fg.total() == n * n
    assert np.array_equal(fg.counts, gf.counts[::-1, ::-1])
    assert np.array_equal(fg.counts, tt.counts.T)


def test_example_autocorrelation():
    f = Permutation(EXAMPLE_ARRAY)
    grid = correlation_grid(f, f)
    assert grid.at(0, 0) == 6
    values, counts = np.unique(grid.counts, return_counts=True)
    assert dict(zip(values.tolist(), counts.tolist())) == {0: 90, 1: 30, 6: 1}


def test_max_over_filters_and_ties():
    f = Permutation(EXAMPLE_ARRAY)
    grid = correlation_grid(f, f)
    assert max_over(grid) == (6, (0, 0))
    assert max_over(grid, exclude_origin=True) == (1, (-5, 2))
    assert max_over(grid, ShiftFilter.ORIGIN_ONLY) == (6, (0, 0))
    with pytest.raises(DomainError):
        max_over(grid, ShiftFilter.ORIGIN_ONLY, exclude_origin=True)
    for filt in ShiftFilter:
        value, (u, v) = max_over(grid, filt, exclude_origin=True) if filt is not ShiftFilter.ORIGIN_ONLY \
            else max_over(grid, filt)
        assert filt.admits(u, v) and grid.at(u, v) == value


def test_filter_parse():
    assert ShiftFilter.parse("v_zero") is ShiftFilter.V_ZERO
    with pytest.raises(DomainError):
        ShiftFilter.parse("diagonal")


@given(st.integers(1, 10).flatmap(
    lambda n: st.lists(st.permutations(range(1, n + 1)), min_size=1, max_size=4)))
def test_kernels_match_grid(perms):
    members = np.array(perms, dtype=np.int32)
    inverses = np.array([inverse(Permutation(tuple(p))).values for p in perms], dtype=np.int32)
    m = len(perms)
    a, b = (x.astype(np.int64) for x in np.triu_indices(m))
    full = run_scan(members, a, b)
    axes = run_scan(members, a, b, inverses=inverses)
    for k in range(len(a)):
        grid = correlation_grid(Permutation(tuple(perms[a[k]])), Permutation(tuple(perms[b[k]])))
        for filt in ShiftFilter:
            try:
                value, where = max_over(grid, filt, exclude_origin=a[k] == b[k])
            except DomainError:
                value, where = -1, None
            assert full[k, filt.code, 0] == value, filt
            if where is not None:
                assert tuple(full[k, filt.code, 1:]) == where, filt
            if filt.value in AXIS_FILTERS:
                assert tuple(axes[k, filt.code]) == tuple(full[k, filt.code]), filt


def test_run_scan_worker_independent():
    rng = np.random.default_rng(7)
    members = np.array([rng.permutation(30) + 1 for _ in range(9)], dtype=np.int32)
    a, b = (x.astype(np.int64) for x in np.triu_indices(9))
    one = run_scan(members, a, b, workers=1)
    for w in (2, 3, 8, 100):
        assert np.array_equal(one, run_scan(members, a, b, workers=w))


@pytest.mark.parametrize("p", [5, 7, 11, 13])
def test_family_max_matches_brute_force(p):
    ctx = build_prime_context(p)
    clear_scan_cache()
    for family in FamilyId:
        if not family.applicable(p):
            continue
        for include_auto in (False, True):
            for filt in ShiftFilter:
                want = brute_family_max(ctx, family, filt, include_auto)
                if want < 0:
                    # no admissible pair at all, e.g. a one-member family without auto pairs
                    with pytest.raises(DomainError):
                        scan_family(ctx, family, [filt], include_auto)
                    continue
                rep = scan_family(ctx, family, [filt], include_auto)[filt]
                assert rep.value == want, (family, filt)
                for w in rep.witnesses:
                    f, g = w.a.build(ctx), w.b.build(ctx)
                    assert filt.admits(w.u, w.v)
                    assert not (f == g and (w.u, w.v) == (0, 0))
                    assert cross_correlation_at(f, g, (w.u, w.v)) == rep.value


def test_family_max_axis_then_full_agree():
    ctx = build_prime_context(23)
    clear_scan_cache()
    axis_first = family_max(ctx, FamilyId.PWp, ShiftFilter.V_ZERO)
    full = scan_family(ctx, FamilyId.PWp, [ShiftFilter.ALL, ShiftFilter.V_ZERO])[ShiftFilter.V_ZERO]
    clear_scan_cache()
    fresh = scan_family(ctx, FamilyId.PWp, [ShiftFilter.V_ZERO, ShiftFilter.ALL])[ShiftFilter.V_ZERO]
    assert axis_first == full == fresh


def test_family_max_known_values():
    ctx = build_prime_context(7)
    assert family_max(ctx, FamilyId.Wp).value == 2
    assert family_max(ctx, FamilyId.Wpel).value == 3
    rep = family_max(ctx, FamilyId.PWp)
    assert rep.value == 3 and rep.include_auto and rep.pairs_scanned == 6
    assert family_max(ctx, FamilyId.Wp, include_auto=False).pairs_scanned == 1


def test_family_max_workers_deterministic():
    ctx = build_prime_context(47)
    clear_scan_cache()
    one = scan_family(ctx, FamilyId.PWp, list(ShiftFilter), workers=1)
    clear_scan_cache()
    many = scan_family(ctx, FamilyId.PWp, list(ShiftFilter), workers=4)
    assert one == many


def test_restricted_needs_filter():
    ctx = build_prime_context(7)
    with pytest.raises(DomainError):
        restricted_family_max(ctx, FamilyId.Pp, ShiftFilter.ALL)
    # P_7 has one member, so only auto pairs exist and the origin is barred
    with pytest.raises(DomainError):
        restricted_family_max(ctx, FamilyId.Pp, ShiftFilter.ORIGIN_ONLY)
    assert restricted_family_max(ctx, FamilyId.Pp, ShiftFilter.V_ZERO).value >= 0


def test_wpel_undefined_at_5():
    with pytest.raises(DomainError):
        family_max(build_prime_context(5), FamilyId.Wpel)
