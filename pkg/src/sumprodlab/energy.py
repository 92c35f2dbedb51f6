"""Additive-energy functionals: moment energies, T_k, the weighted double sum,
popular differences and dyadic energy levels.

All integer-valued quantities are computed with exact integer arithmetic;
the only float on offer is the fractional moment (q = 3/2 and friends).
Counting conventions: every count is over ordered tuples, and r_{A-B}(d) is
the number of ordered pairs (a, b) with a - b = d.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import BadSpec, RestrictNotSubset, TooLarge
from .ground import ModP
from .setops import MODP, CountTable, GSet, combine

# Default cap on |A-A| for the double-sum kernel; |A-A|^2 pairs are iterated,
# so 4000 keeps a single call under ~20s of pure Python.  Override per call.
SIGMA_SUPPORT_CAP = 4000


def difference_table(A: GSet) -> CountTable:
    """r_{A-A}: multiplicity table of the difference set."""
    return combine(A, A, "-")


def energy_pair(A: GSet, B: GSet | None = None, *, table: CountTable | None = None) -> int:
    """E(A, B) = sum_d |A ^ (B + d)|^2; E(A) when B is omitted."""
    if table is None:
        table = combine(A, B if B is not None else A, "-")
    return sum(c * c for c in table.entries.values())


def moment_energy(A: GSet, q, *, table: CountTable | None = None):
    """E_q(A) = sum_d r(d)^q.  Exact int for integral q >= 1, float otherwise."""
    qf = Fraction(q)
    if qf < 1:
        raise BadSpec(f"moment exponent must be >= 1, got {q}")
    if table is None:
        table = difference_table(A)
    if qf.denominator == 1:
        k = qf.numerator
        return sum(c**k for c in table.entries.values())
    qq = float(qf)
    return math.fsum(float(c) ** qq for c in table.entries.values())


def t_k(A: GSet, k: int, *, sum_table: CountTable | None = None) -> int:
    """T_k(A): ordered 2k-tuples with equal k-fold sums; T_2 = E."""
    if k < 2:
        raise BadSpec(f"T_k needs k >= 2, got {k}")
    if sum_table is None:
        from .setops import iterated_sum_counts

        sum_table = iterated_sum_counts(A, k)
    return sum(c * c for c in sum_table.entries.values())


def _int_diff_items(table: CountTable) -> list[tuple[int, int]]:
    items = table.int_items()
    if items is not None:
        return items
    # Fractional support: scale by the common denominator; r-values and all
    # additive coincidences among differences are preserved.
    scale = 1
    for v in table.entries:
        scale = scale * v.denominator // math.gcd(scale, v.denominator)
    return [(int(v * scale), c) for v, c in table.entries.items()]


def sigma_sum(A: GSet, *, table: CountTable | None = None, max_support: int = SIGMA_SUPPORT_CAP) -> int:
    """The weighted double sum  sum_{d,d'} r(d) r(d') r(d-d')^2  over A-A.

    Equivalently: ordered 8-tuples (a1,...,a8) from A solving
    a1 - a2 = a3 - a4 = (a5 - a6) - (a7 - a8).
    Iterates |A-A|^2 support pairs; guarded by max_support.
    """
    if table is None:
        table = difference_table(A)
    support = table.support_size()
    if support > max_support:
        raise TooLarge(f"|A-A| = {support} exceeds the sigma_sum guard {max_support}")
    items = _int_diff_items(table)
    p = table.p if table.kind == MODP else None
    rmap = dict(items)
    total = 0
    if p is None:
        for d, rd in items:
            acc = 0
            for e, re2 in items:
                w = rmap.get(d - e)
                if w is not None:
                    # contribution r(d) r(e) r(d-e)^2 arranged as r(e) * [r(d-e)^2]
                    acc += re2 * w * w
            total += rd * acc
    else:
        for d, rd in items:
            acc = 0
            for e, re2 in items:
                w = rmap.get((d - e) % p)
                if w is not None:
                    acc += re2 * w * w
            total += rd * acc
    return total


def difference_triple_count(A: GSet, restrict: GSet | None = None, *, table: CountTable | None = None) -> int:
    """Ordered pairs (d, d') in D x R with d - d' in D, where D = A - A.

    R defaults to D; otherwise restrict must be a subset of D.
    """
    if table is None:
        table = difference_table(A)
    values = [v for v, _ in _int_diff_items(table)]
    p = table.p if table.kind == MODP else None
    if restrict is None:
        rvals = values
    else:
        if restrict.kind != table.kind or restrict.p != table.p:
            raise RestrictNotSubset("restriction set has the wrong kind")
        supp_elems = set(table.entries.keys())
        for x in restrict.elements:
            if x not in supp_elems:
                raise RestrictNotSubset(f"{x} not in the difference set")
        if p is None:
            scale = 1
            for v in table.entries:
                scale = scale * v.denominator // math.gcd(scale, v.denominator)
            rvals = [int(x * scale) for x in restrict.elements]
        else:
            rvals = [x.value for x in restrict.elements]
    if p is not None:
        # |D ^ (D + d')| per shift; boolean counting, so still exact.
        ind = np.zeros(p, dtype=bool)
        ind[np.asarray(values, dtype=np.int64)] = True
        return sum(int(np.count_nonzero(ind & np.roll(ind, dp))) for dp in rvals)
    lim = 1 << 61  # keeps every d - d' inside int64
    if all(-lim < v < lim for v in values) and all(-lim < v < lim for v in rvals):
        arr = np.sort(np.asarray(values, dtype=np.int64))
        top = arr.size - 1
        count = 0
        for dp in rvals:
            shifted = arr - dp
            idx = np.searchsorted(arr, shifted)
            hit = (idx <= top) & (arr[np.minimum(idx, top)] == shifted)
            count += int(np.count_nonzero(hit))
        return count
    support = set(values)
    return sum(1 for d in values for dp in rvals if d - dp in support)


@dataclass(frozen=True)
class PopularSet:
    """Differences with r(d) >= Delta = |A|^2 / (2|A-A|); carries exact Delta."""

    delta: Fraction
    members: GSet
    mass: int  # sum of r(d) over members


@dataclass(frozen=True)
class DyadicLevel:
    """One dyadic popularity class [Delta, 2*Delta) maximizing sum r(d)^2."""

    delta: int
    members: GSet
    mass: int  # sum of r(d)^2 over the class


def popular_differences(A: GSet, *, table: CountTable | None = None) -> PopularSet:
    """The popular-difference set P at the pigeonhole threshold.

    Mass invariant: sum_{d in P} r(d) >= |A|^2 / 2, since the unpopular
    differences contribute less than |A-A| * Delta = |A|^2 / 2.
    """
    if table is None:
        table = difference_table(A)
    n2 = table.total  # |A|^2
    delta = Fraction(n2, 2 * table.support_size())
    members = [v for v, c in table.entries.items() if c >= delta]
    mass = sum(c for c in table.entries.values() if c >= delta)
    gs = GSet.from_elements(members, allow_zero=True, kind=table.kind, p=table.p)
    return PopularSet(delta, gs, mass)


def dyadic_energy_level(A: GSet, *, table: CountTable | None = None) -> DyadicLevel:
    """Most energetic dyadic class; ties resolve toward the smaller level.

    With at most log2|A| + 1 nonempty classes, the winner carries at least
    E(A) / (2 log2|A| + 2) of the energy.
    """
    if table is None:
        table = difference_table(A)
    classes: dict[int, int] = {}
    for c in table.entries.values():
        classes[c.bit_length() - 1] = classes.get(c.bit_length() - 1, 0) + c * c
    best_i = min(classes, key=lambda i: (-classes[i], i))
    delta = 1 << best_i
    members = [v for v, c in table.entries.items() if delta <= c < 2 * delta]
    gs = GSet.from_elements(members, allow_zero=True, kind=table.kind, p=table.p)
    return DyadicLevel(delta, gs, classes[best_i])


def tail_decompose(A: GSet, delta, *, table: CountTable | None = None) -> tuple[int, int, int]:
    """(E', E'', tail_support): energy split at threshold delta.

    E' sums r^2 over r <= delta, E'' over r > delta; E' + E'' = E(A).
    tail_support counts the differences with r > delta.
    """
    if table is None:
        table = difference_table(A)
    e_low = e_high = heavy = 0
    for c in table.entries.values():
        if c <= delta:
            e_low += c * c
        else:
            e_high += c * c
            heavy += 1
    return e_low, e_high, heavy


@dataclass(frozen=True)
class EnergyProfile:
    """Bundle of the standard functionals for one set."""

    size: int
    energy: int
    energy3: int
    energy32: float
    tk: tuple  # ((k, T_k), ...)
    sigma: int | None

    def to_json_dict(self) -> dict:
        return {
            "size": str(self.size),
            "energy": str(self.energy),
            "energy3": str(self.energy3),
            "energy32": repr(self.energy32),
            "tk": {str(k): str(v) for k, v in self.tk},
            "sigma": None if self.sigma is None else str(self.sigma),
        }


def energy_profile(A: GSet, ks: tuple[int, ...] = (2, 3), *, with_sigma: bool = True,
                   max_support: int = SIGMA_SUPPORT_CAP) -> EnergyProfile:
    table = difference_table(A)
    sigma: int | None
    if with_sigma and table.support_size() <= max_support:
        sigma = sigma_sum(A, table=table)
    else:
        sigma = None
    return EnergyProfile(
        size=A.size,
        energy=energy_pair(A, table=table),
        energy3=moment_energy(A, 3, table=table),
        energy32=moment_energy(A, Fraction(3, 2), table=table),
        tk=tuple((k, t_k(A, k)) for k in ks),
        sigma=sigma,
    )
