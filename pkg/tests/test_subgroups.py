import math

import numpy as np
import pytest

import oracles
from sumprodlab import energy, subgroups
from sumprodlab.errors import (BadSpec, NotPrime, OrderDoesNotDivide, TooLarge)
from sumprodlab.subgroups import (char_moment_report, gap_H, gamma_energy,
                                  interval_count, ks_criterion, lifted_context,
                                  mod_p2_subgroup, scan_gaps, subgroup_context,
                                  tk_cyclic, window_counts)


def test_is_prime_small_table():
    primes = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}
    for n in range(2, 40):
        assert subgroups.is_prime(n) == (n in primes)
    assert subgroups.is_prime(1_000_003)
    assert not subgroups.is_prime(1_000_001)  # 101 * 9901


def test_divisors_and_factorize():
    assert subgroups.divisors(12) == [1, 2, 3, 4, 6, 12]
    assert subgroups.factorize(360) == {2: 3, 3: 2, 5: 1}


def test_primitive_root_has_full_order():
    for p in (7, 11, 13, 101):
        g = subgroups.primitive_root(p)
        seen = {pow(g, k, p) for k in range(p - 1)}
        assert len(seen) == p - 1


def test_subgroup_context_worked_example():
    ctx = subgroup_context(7, 3)
    assert ctx.gamma == (1, 2, 4)
    assert ctx.cosets == 2
    assert gamma_energy(ctx) == 15
    assert oracles.energy([1, 2, 4], p=7) == 15


def test_subgroup_context_rejects_bad_input():
    with pytest.raises(NotPrime):
        subgroup_context(9, 2)
    with pytest.raises(NotPrime):
        subgroup_context(2, 1)
    with pytest.raises(OrderDoesNotDivide):
        subgroup_context(7, 4)


def test_gap_worked_example():
    ctx = subgroup_context(7, 3)
    rep = gap_H(ctx)
    assert rep.gap == 3
    assert oracles.coset_gap(7, ctx.gamma) == 3


def test_gap_matches_oracle_across_small_primes():
    for p in (5, 7, 11, 13, 17, 19):
        for t in subgroups.divisors(p - 1):
            if t < 2 or t == p - 1:
                continue
            ctx = subgroup_context(p, t)
            assert gap_H(ctx).gap == oracles.coset_gap(p, ctx.gamma), (p, t)


def test_gap_full_group_is_one():
    # t = p - 1: the only missing residue is 0, runs have length 1
    ctx = subgroup_context(11, 10)
    assert gap_H(ctx).gap == 1


def test_gap_linear_variant():
    for p, t in ((7, 3), (13, 4), (17, 4)):
        ctx = subgroup_context(p, t)
        lin = gap_H(ctx, circular=False)
        assert lin.gap == oracles.coset_gap(p, ctx.gamma, circular=False)
        assert lin.gap <= gap_H(ctx).gap


def test_scan_gaps_agrees_with_gap_H():
    rows = list(scan_gaps([7, 11, 13, 101]))
    assert rows  # every divisor of p - 1 shows up
    for p, t, gap in rows:
        assert gap == gap_H(subgroup_context(p, t)).gap, (p, t)


def test_window_counts_worked_example():
    ctx = subgroup_context(7, 3)
    total, counts = window_counts(ctx, 2)
    assert total == oracles.window_total(7, ctx.gamma, 2)
    assert sum(counts) == 4  # 2h window elements, one coset each
    assert total <= 4 * 2 * 2


def test_window_counts_frozen_example():
    # N(Gamma, h) = 8 for the order-3 subgroup of F_7 at h = 2
    ctx = subgroup_context(7, 3)
    total, counts = window_counts(ctx, 2)
    assert total == 8
    assert sorted(counts) == [2, 2]


def test_window_radius_guard():
    ctx = subgroup_context(7, 3)
    with pytest.raises(BadSpec):
        window_counts(ctx, 4)
    with pytest.raises(BadSpec):
        window_counts(ctx, 0)


def test_interval_count():
    ctx = subgroup_context(7, 3)
    assert interval_count(ctx, 2) == 2  # {1, 2}
    assert interval_count(ctx, 6) == 3


def test_char_sums_moment_identities():
    for p, t in ((7, 3), (13, 4), (101, 20)):
        ctx = subgroup_context(p, t)
        rep = char_moment_report(ctx)
        assert rep.parseval_ok
        assert rep.fourth_ok
        assert rep.strict_bound_ok
        assert t * rep.second_moment == pytest.approx(t * (p - t), rel=1e-9)


def test_char_sums_fourth_moment_worked_example():
    # p = 7, t = 3: sum |S_j|^4 = 8 < 35 = (p/t) E - t^3/...; table is tiny
    ctx = subgroup_context(7, 3)
    rep = char_moment_report(ctx)
    assert rep.fourth_moment == pytest.approx(8.0, abs=1e-6)
    assert (7 / 3) * rep.energy == pytest.approx(35.0, abs=1e-9)


def test_full_group_char_sums_are_minus_one():
    # t = p - 1: each S_j = -1, so t sum|S|^2 = t (p - t)
    ctx = subgroup_context(13, 12)
    S = subgroups.char_sums(ctx)
    assert np.allclose(np.abs(S), 1.0, atol=1e-9)


def test_ks_criterion_worked_example():
    ctx = subgroup_context(7, 3)
    rep = ks_criterion(ctx, 1)
    assert rep.value == pytest.approx(2 * math.sqrt(2), rel=1e-9)
    assert rep.threshold == 1.5
    assert not rep.ok


def test_lift_reduces_onto_base():
    lift = lifted_context(7, 3)
    assert sorted(x % 7 for x in lift.gamma2) == [1, 2, 4]
    assert len(lift.gamma2) == 3
    for x in lift.gamma2:
        assert pow(x, 3, 49) == 1


def test_tk_cyclic_matches_dict_route():
    for p, t in ((7, 3), (13, 4)):
        ctx = subgroup_context(p, t)
        for k in (2, 3):
            assert tk_cyclic(ctx.gamma, p, k) == energy.t_k(ctx.gamma_set(), k)
    lift = lifted_context(7, 3)
    for k in (2, 3):
        assert tk_cyclic(lift.gamma2, 49, k) == energy.t_k(lift.gamma2_set(), k)


def test_mod_p2_t3_never_grows():
    for p, t in ((3, 2), (5, 4), (7, 3), (11, 5)):
        _, table = mod_p2_subgroup(p, t)
        for k, (up, down) in table.items():
            assert up <= down, (p, t, k)


def test_mod_p2_worked_example():
    _, table = mod_p2_subgroup(3, 2)
    up, down = table[3]
    assert up == 20 and down == 22


def test_mod_p2_guard():
    with pytest.raises(TooLarge):
        mod_p2_subgroup(1009, 1008, max_t=64)


def test_gamma_energy_matches_generic_counter():
    for p, t in ((7, 3), (11, 5), (101, 25)):
        ctx = subgroup_context(p, t)
        assert gamma_energy(ctx) == energy.energy_pair(ctx.gamma_set())
