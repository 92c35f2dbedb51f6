from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from sumprodlab import setops
from sumprodlab.errors import BadSpec, MixedKinds, RestrictNotSubset, ZeroCoefficient
from sumprodlab.setops import GSet, combine, gset_modp, gset_rational

small_int_sets = st.lists(st.integers(min_value=-50, max_value=50).filter(lambda x: x != 0),
                          min_size=1, max_size=8, unique=True)


def test_gset_sorts_and_dedupes():
    A = gset_rational([3, 1, 2, 2, 1])
    assert A.values() == (Fraction(1), Fraction(2), Fraction(3))
    assert A.size == 3


def test_gset_rejects_zero_inputs():
    with pytest.raises(BadSpec):
        gset_rational([1, 0, 2])
    with pytest.raises(BadSpec):
        gset_modp([1, 7], 7)  # 7 is 0 mod 7


def test_gset_allow_zero_for_derived_sets():
    D = gset_rational([0, 1, -1], allow_zero=True)
    assert D.size == 3


def test_modp_and_rational_do_not_mix():
    with pytest.raises(MixedKinds):
        combine(gset_rational([1, 2]), gset_modp([1, 2], 5), "+")


@given(small_int_sets)
@settings(max_examples=60, deadline=None)
def test_combine_difference_matches_oracle(vals):
    A = gset_rational(vals)
    table = combine(A, A, "-")
    want = oracles.diff_counts([Fraction(v) for v in vals])
    assert {k: v for k, v in table.entries.items()} == want
    assert table.total == A.size**2
    assert table.get(Fraction(0)) == A.size


@given(small_int_sets, small_int_sets)
@settings(max_examples=40, deadline=None)
def test_combine_all_ops_totals(avals, bvals):
    A, B = gset_rational(avals), gset_rational(bvals)
    for op in "+-*":
        table = combine(A, B, op)
        assert table.total == A.size * B.size
        assert sum(table.entries.values()) == table.total
    quot = combine(A, B, "/")
    assert quot.total == A.size * B.size


def test_combine_division_modp_uses_inverses():
    A = gset_modp([1, 2, 4], 7)
    table = combine(A, A, "/")
    want = {}
    for a in (1, 2, 4):
        for b in (1, 2, 4):
            d = a * pow(b, -1, 7) % 7
            want[d] = want.get(d, 0) + 1
    assert {k.value: v for k, v in table.entries.items()} == want


def test_support_size_agrees_with_combined_set():
    A = gset_rational([1, 2, 3, 5])
    for op in "+-*/":
        assert setops.support_size(A, A, op) == setops.combined_set(A, A, op).size


def test_doubling_stats_worked_example():
    # powers of two: |A+A| = 2n - 1 additive, |AA| = 2n - 1 multiplicative
    A = gset_rational([1, 2, 4, 8, 16, 32, 64, 128])
    mult, div, add = setops.doubling_stats(A)
    assert mult == Fraction(15, 8)
    assert div == Fraction(15, 8)
    # sums 2^i + 2^j are pairwise distinct for i <= j
    assert add == Fraction(36, 8)


def test_iterated_sum_counts_matches_brute():
    A = gset_rational([1, 2, 3, 10])
    table = setops.iterated_sum_counts(A, 3)
    want = {}
    for a in A.values():
        for b in A.values():
            for c in A.values():
                s = a + b + c
                want[s] = want.get(s, 0) + 1
    assert dict(table.entries) == want


def test_translate_intersect_sizes_are_multiplicities():
    A = gset_rational([1, 2, 3, 5, 8])
    table = combine(A, A, "-")
    for d, r in table.entries.items():
        assert setops.translate_intersect(A, d).size == r


def test_ap_doubling_worked_example():
    A = gset_rational(range(1, 11))
    assert setops.support_size(A, A, "+") == 19


@given(small_int_sets)
@settings(max_examples=30, deadline=None)
def test_write_read_round_trip(tmp_path_factory, vals):
    A = gset_rational(vals)
    path = tmp_path_factory.mktemp("sets") / "a.txt"
    setops.write_gset(A, path)
    assert setops.read_gset(path) == A


def test_write_read_modp(tmp_path):
    A = gset_modp([1, 2, 4], 7)
    path = tmp_path / "g.txt"
    setops.write_gset(A, path)
    B = setops.read_gset(path)
    assert B.kind == setops.MODP and B.p == 7 and B.values() == (1, 2, 4)


def test_invariant_union_collects_cosets():
    from sumprodlab.subgroups import subgroup_context

    ctx = subgroup_context(7, 3)
    Q = setops.invariant_union(ctx, [0])
    assert set(Q.values()) == {1, 2, 4}
    Q2 = setops.invariant_union(ctx, [0, 1])
    assert Q2.size == 6
    # invariance: multiplying by a subgroup element permutes Q
    members = set(Q2.values())
    assert {x * 2 % 7 for x in members} == members
