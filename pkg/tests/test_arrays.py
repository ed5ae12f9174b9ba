from itertools import combinations, permutations

import pytest
from hypothesis import given, strategies as st

from costas_xcorr.arrays import (
    FamilyId,
    Label,
    Permutation,
    enumerate_family,
    fixed_points,
    inverse,
    is_costas_difference_triangle,
    is_costas_grid,
    is_golomb_ruler,
    parse_permutation,
    power_perm,
    welch_exp,
    welch_log,
)
from costas_xcorr.numthy import DomainError, build_prime_context, primes_between
from reference_data import EXAMPLE_ARRAY


def costas_by_vectors(values):
    """Definition: all displacement vectors between dots are distinct."""
    dots = list(enumerate(values, start=1))
    vecs = [(j - i, b - a) for (i, a), (j, b) in combinations(dots, 2)]
    return len(vecs) == len(set(vecs))


perm_strategy = st.integers(1, 9).flatmap(lambda n: st.permutations(range(1, n + 1)))


def test_permutation_validation():
    f = Permutation((3, 1, 2))
    assert f.order == 3 and f(1) == 3 and f(3) == 2
    assert str(f) == "3,1,2"
    assert list(f.as_array()) == [3, 1, 2]
    for bad in [(1, 1, 2), (0, 1, 2), (1, 2, 4), ()]:
        with pytest.raises(DomainError):
            Permutation(bad)
    with pytest.raises(IndexError):
        f(0)
    with pytest.raises(IndexError):
        f(4)


def test_parse_permutation():
    assert parse_permutation(" 3, 2,6,4,5,1 ").values == EXAMPLE_ARRAY
    for bad in ["1,1,2", "1,x,2", "", "2,3"]:
        with pytest.raises(DomainError):
            parse_permutation(bad)


def test_labels():
    assert Label.parse("welch-exp:3") == Label("welch-exp", 3)
    assert str(Label.parse("power:5")) == "power:5"
    for bad in ["welch:3", "power", "power:x"]:
        with pytest.raises(DomainError):
            Label.parse(bad)


def test_welch_exp_example():
    ctx = build_prime_context(7)
    assert welch_exp(ctx, 3).values == (1, 3, 2, 6, 4, 5)
    assert welch_exp(ctx, 3, 1).values == (3, 2, 6, 4, 5, 1)
    assert welch_exp(ctx, 3, 1).values == EXAMPLE_ARRAY


@pytest.mark.parametrize("p", [5, 7, 11, 13, 31, 61])
def test_welch_log_is_inverse_of_exp(p):
    ctx = build_prime_context(p)
    for alpha in ctx.primitive_roots:
        # log table by brute force, independent of dlog_table
        logs = {}
        for e in range(ctx.n):
            logs.setdefault(pow(alpha, e, p), e)
        want = tuple((1 + logs[j]) % ctx.n or ctx.n for j in range(1, p))
        assert welch_log(ctx, alpha).values == want
        # with c = 0, exp is f(j) = alpha^(j-1) and log undoes it
        assert inverse(welch_exp(ctx, alpha)).values == welch_log(ctx, alpha).values


def test_construction_domain():
    ctx = build_prime_context(7)
    with pytest.raises(DomainError):
        welch_exp(ctx, 2)
    with pytest.raises(DomainError):
        welch_log(ctx, 3, 6)
    with pytest.raises(DomainError):
        power_perm(ctx, 3)  # gcd(3, 6) != 1
    with pytest.raises(DomainError):
        power_perm(ctx, 1)
    assert power_perm(ctx, 5).values == tuple(pow(i, 5, 7) for i in range(1, 7))


@given(perm_strategy)
def test_costas_checkers_match_definition(values):
    f = Permutation(tuple(values))
    want = costas_by_vectors(values)
    assert is_costas_grid(f) == want
    assert is_costas_difference_triangle(f) == want


@pytest.mark.parametrize("n", range(1, 7))
def test_costas_counts_small_orders(n):
    # number of Costas permutations of order n
    known = {1: 1, 2: 2, 3: 4, 4: 12, 5: 40, 6: 116}
    count = sum(is_costas_difference_triangle(Permutation(v)) for v in permutations(range(1, n + 1)))
    assert count == known[n]


@given(perm_strategy)
def test_inverse_roundtrip(values):
    f = Permutation(tuple(values))
    g = inverse(f)
    assert all(g(f(i)) == i for i in range(1, f.order + 1))
    assert inverse(g) == f


def test_fixed_points_and_golomb():
    f = Permutation(EXAMPLE_ARRAY)
    assert fixed_points(f) == [2, 4, 5]
    assert is_golomb_ruler([2, 4, 5])
    assert not is_golomb_ruler([1, 2, 3])
    assert is_golomb_ruler([0, 1, 4, 9, 11])
    assert is_golomb_ruler([]) and is_golomb_ruler([7])


@given(st.sets(st.integers(0, 60), max_size=8))
def test_golomb_matches_definition(marks):
    diffs = [b - a for a, b in combinations(sorted(marks), 2)]
    assert is_golomb_ruler(marks) == (len(diffs) == len(set(diffs)))


@pytest.mark.parametrize("p", primes_between(5, 61))
def test_family_sizes_and_members(p):
    ctx = build_prime_context(p)
    for fam in FamilyId:
        if not fam.applicable(p):
            with pytest.raises(DomainError):
                enumerate_family(ctx, fam)
            continue
        members = enumerate_family(ctx, fam)
        assert len(members) == fam.expected_size(ctx)
        assert len({m.permutation for m in members}) == len(members)
    welch = {m.permutation for m in enumerate_family(ctx, FamilyId.Wp)}
    power = {m.permutation for m in enumerate_family(ctx, FamilyId.Pp)}
    assert not welch & power


def test_family_order():
    ctx = build_prime_context(7)
    labels = [str(m.label) for m in enumerate_family(ctx, FamilyId.Wpel)]
    assert labels == ["welch-exp:3", "welch-log:3", "welch-exp:5", "welch-log:5"]
    labels = [str(m.label) for m in enumerate_family(ctx, FamilyId.PWp)]
    assert labels == ["welch-exp:3", "welch-exp:5", "power:5"]


def test_family_parse_and_defaults():
    assert FamilyId.parse("pwp") is FamilyId.PWp
    with pytest.raises(DomainError):
        FamilyId.parse("Qp")
    assert not FamilyId.Wp.include_auto_default
    assert FamilyId.PWpl.include_auto_default
    assert not FamilyId.Wpel.applicable(5)
