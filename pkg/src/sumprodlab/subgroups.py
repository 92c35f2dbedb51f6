"""Multiplicative subgroups of Z/p and their lifts to Z/p^2.

Builds the order-t subgroup Gamma from the smallest primitive root, indexes
cosets through a discrete-log table, and provides the statistics the harness
consumes: largest coset gap (circular by default), window membership counts
computed by two independent routes, exponential sums with their moment
identities, and the Kolmogorov-style smallness criterion.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator

import numpy as np

from .errors import (
    BadSpec,
    CrossCheckMismatch,
    NotPrime,
    OrderDoesNotDivide,
    TooLarge,
)
from .setops import GSet, gset_modp

# Witness set makes Miller-Rabin deterministic below 3.4 * 10^14.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17)
_MR_LIMIT = 340_000_000_000_000


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17):
        if n % q == 0:
            return n == q
    if n >= _MR_LIMIT:
        raise BadSpec(f"primality test is only deterministic below {_MR_LIMIT}")
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division; fine for the sizes used here."""
    if n < 1:
        raise BadSpec("factorize wants a positive integer")
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def divisors(n: int) -> list[int]:
    divs = [1]
    for q, e in factorize(n).items():
        divs = [d * q**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def primitive_root(p: int) -> int:
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if p == 2:
        return 1
    targets = [(p - 1) // q for q in factorize(p - 1)]
    for g in range(2, p):
        if all(pow(g, e, p) != 1 for e in targets):
            return g
    raise NotPrime(f"no primitive root found for {p}")  # unreachable for prime p


@dataclass
class SubgroupCtx:
    p: int
    t: int
    g: int
    gamma: tuple[int, ...]
    _dlog: np.ndarray | None = field(default=None, repr=False, compare=False)
    _chars: np.ndarray | None = field(default=None, repr=False, compare=False)
    _energy: int | None = field(default=None, repr=False, compare=False)

    @property
    def cosets(self) -> int:
        return (self.p - 1) // self.t

    def gamma_set(self) -> GSet:
        return gset_modp(self.gamma, self.p)

    def dlog(self) -> np.ndarray:
        """dlog()[x] = k with g^k = x, for x in [1, p-1]; entry 0 is unused."""
        if self._dlog is None:
            ind = np.zeros(self.p, dtype=np.int64)
            x = 1
            for k in range(self.p - 1):
                ind[x] = k
                x = x * self.g % self.p
            self._dlog = ind
        return self._dlog

    def coset_of(self, x: int) -> int:
        x %= self.p
        if x == 0:
            raise BadSpec("0 lies in no coset")
        return int(self.dlog()[x]) % self.cosets

    def label(self) -> str:
        return f"subgroup(p={self.p},t={self.t})"


def subgroup_context(p: int, t: int) -> SubgroupCtx:
    if p == 2 or not is_prime(p):
        raise NotPrime(f"{p} is not an odd prime")
    if t < 1 or (p - 1) % t != 0:
        raise OrderDoesNotDivide(f"{t} does not divide {p - 1}")
    g = primitive_root(p)
    gen = pow(g, (p - 1) // t, p)
    members = []
    x = 1
    for _ in range(t):
        members.append(x)
        x = x * gen % p
    if x != 1 or len(set(members)) != t:
        raise CrossCheckMismatch("generator order is off")
    return SubgroupCtx(p, t, g, tuple(sorted(members)))


# -- coset gaps --------------------------------------------------------------

@dataclass(frozen=True)
class GapReport:
    p: int
    t: int
    gap: int
    coset: int
    start: int
    circular: bool


def _bucket_positions(ctx: SubgroupCtx) -> list[list[int]]:
    n = ctx.cosets
    dlog = ctx.dlog()
    buckets: list[list[int]] = [[] for _ in range(n)]
    for x in range(1, ctx.p):
        buckets[int(dlog[x]) % n].append(x)
    return buckets  # ascending within each bucket by construction


def gap_H(ctx: SubgroupCtx, *, circular: bool = True) -> GapReport:
    """Longest run of consecutive residues u+1, ..., u+H avoiding a coset,
    maximized over the cosets.

    Runs live in Z/p, so they may pass through 0 (never a coset member) and
    wrap around; the linear variant confines runs to [0, p-1] instead.  The
    winning run is re-verified pointwise before returning.
    """
    p = ctx.p
    best = (0, 0, 0)  # run length, coset, first residue of the run
    for j, pos in enumerate(_bucket_positions(ctx)):
        for i in range(len(pos) - 1):
            d = pos[i + 1] - pos[i] - 1
            if d > best[0]:
                best = (d, j, pos[i] + 1)
        if circular:
            d = pos[0] + (p - 1) - pos[-1]  # through p-1, 0, 1, ...
            if d > best[0]:
                best = (d, j, pos[-1] + 1)
        else:
            if pos[0] > best[0]:
                best = (pos[0], j, 0)
            if p - 1 - pos[-1] > best[0]:
                best = (p - 1 - pos[-1], j, pos[-1] + 1)
    gap, coset, start = best
    members = {x for x in range(1, p) if ctx.coset_of(x) == coset}
    for step in range(gap):
        if (start + step) % p in members:
            raise CrossCheckMismatch("gap witness contains a coset element")
    return GapReport(p, ctx.t, gap, coset, start, circular)


def scan_gaps(primes: Iterable[int], *,
              t_filter: Callable[[int, int], bool] | None = None,
              ) -> Iterator[tuple[int, int, int]]:
    """Yields (p, t, circular gap) over every divisor t of p - 1 that passes
    the filter.  One discrete-log table per prime, vectorized bucketing per
    divisor, so a full sweep of small primes stays cheap."""
    for p in primes:
        g = primitive_root(p)
        ind = np.zeros(p, dtype=np.int64)
        x = 1
        for k in range(p - 1):
            ind[x] = k
            x = x * g % p
        res = np.arange(1, p, dtype=np.int64)
        dlog = ind[1:]
        for t in divisors(p - 1):
            if t_filter is not None and not t_filter(p, t):
                continue
            n = (p - 1) // t
            c = dlog % n
            order = np.lexsort((res, c))
            rs = res[order]
            cs = c[order]
            gap = 0
            same = cs[1:] == cs[:-1]
            if same.any():
                gap = int((rs[1:] - rs[:-1])[same].max()) - 1
            starts = np.flatnonzero(np.r_[True, ~same])
            ends = np.r_[starts[1:], len(rs)]
            wrap = int((rs[starts] + (p - 1) - rs[ends - 1]).max())
            yield p, t, max(gap, wrap)


# -- window counts -----------------------------------------------------------

def window_counts(ctx: SubgroupCtx, h: int) -> tuple[int, list[int]]:
    """N(h) = sum over cosets of (coset hits in {±1, ..., ±h})^2.

    Cross-checked against the direct pair count #{(x, y) in the window with
    y/x in Gamma}; the two must agree exactly.
    """
    p = ctx.p
    if not 1 <= h <= (p - 1) // 2:
        raise BadSpec(f"window radius must lie in [1, {(p - 1) // 2}]")
    window = [v for u in range(1, h + 1) for v in (u, p - u)]
    counts = [0] * ctx.cosets
    for w in window:
        counts[ctx.coset_of(w)] += 1
    total = sum(c * c for c in counts)
    members = set(ctx.gamma)
    direct = 0
    for xw in window:
        xinv = pow(xw, -1, p)
        for yw in window:
            if yw * xinv % p in members:
                direct += 1
    if direct != total:
        raise CrossCheckMismatch(
            f"window count routes disagree: {direct} vs {total}")
    return total, counts


def interval_count(ctx: SubgroupCtx, bound: int) -> int:
    """#(Gamma intersect [1, bound])."""
    return sum(1 for x in ctx.gamma if x <= bound)


# -- exponential sums --------------------------------------------------------

def gamma_energy(ctx: SubgroupCtx) -> int:
    """E(Gamma), vectorized over the t^2 pairwise differences and cached."""
    if ctx._energy is None:
        gamma = np.asarray(ctx.gamma, dtype=np.int64)
        diffs = (gamma[:, None] - gamma[None, :]) % ctx.p
        _, counts = np.unique(diffs, return_counts=True)
        ctx._energy = int((counts.astype(np.int64) ** 2).sum())
    return ctx._energy


@dataclass
class CharReport:
    p: int
    t: int
    fourth_moment: float      # sum over coset reps of |S_j|^4
    second_moment: float      # sum over coset reps of |S_j|^2
    energy: int               # E(Gamma)
    tol: float

    @property
    def parseval_ok(self) -> bool:
        lhs = self.t * self.second_moment
        rhs = self.t * (self.p - self.t)
        return abs(lhs - rhs) <= self.tol * max(1.0, rhs)

    @property
    def fourth_ok(self) -> bool:
        lhs = self.t * self.fourth_moment
        rhs = self.p * self.energy - self.t**4
        return abs(lhs - rhs) <= self.tol * max(1.0, abs(rhs))

    @property
    def strict_bound_ok(self) -> bool:
        # t^4 > 0 makes the moment identity a strict inequality
        return self.fourth_moment < (self.p / self.t) * self.energy


def char_sums(ctx: SubgroupCtx) -> np.ndarray:
    """S_j = sum over x in Gamma of e(g^j x / p), one j per coset.

    |S| is constant on cosets, so these n values carry the full spectrum.
    The table is verified once against the second and fourth moment
    identities (t sum|S|^2 = t(p - t) and t sum|S|^4 = p E(Gamma) - t^4)
    before being cached on the context.
    """
    if ctx._chars is not None:
        return ctx._chars
    p, t = ctx.p, ctx.t
    if p > 10_000_000:
        raise BadSpec("exponential sum table wants p <= 10^7")
    reps = np.array([pow(ctx.g, j, p) for j in range(ctx.cosets)], dtype=np.int64)
    gamma = np.asarray(ctx.gamma, dtype=np.int64)
    phase = np.exp((2j * np.pi / p) * (reps[:, None] * gamma[None, :] % p))
    S = phase.sum(axis=1)
    absS = np.abs(S)
    second = t * float((absS**2).sum())
    if abs(second - t * (p - t)) > 1e-6 * max(1.0, t * (p - t)):
        raise CrossCheckMismatch(
            f"second moment {second} != t(p-t) = {t * (p - t)}")
    fourth = t * float((absS**4).sum())
    target = p * gamma_energy(ctx) - t**4
    if abs(fourth - target) > 1e-6 * max(1.0, abs(target)):
        raise CrossCheckMismatch(
            f"fourth moment {fourth} != pE - t^4 = {target}")
    ctx._chars = S
    return S


def char_moment_report(ctx: SubgroupCtx, *, tol: float = 1e-6) -> CharReport:
    S = np.abs(char_sums(ctx))
    return CharReport(ctx.p, ctx.t, float((S**4).sum()), float((S**2).sum()),
                      gamma_energy(ctx), tol)


@dataclass(frozen=True)
class KsReport:
    p: int
    t: int
    h: int
    value: float
    threshold: float

    @property
    def ok(self) -> bool:
        return self.value <= self.threshold


def ks_criterion(ctx: SubgroupCtx, h: int) -> KsReport:
    """max over shifts k of sum_j N_j |S_{j+k}| against t/2, where N_j are
    the window coset counts at radius h."""
    _, counts = window_counts(ctx, h)
    S = np.abs(char_sums(ctx))
    Nj = np.asarray(counts, dtype=np.float64)
    best = 0.0
    for k in range(ctx.cosets):
        best = max(best, float((Nj * np.roll(S, -k)).sum()))
    return KsReport(ctx.p, ctx.t, h, best, 0.5 * ctx.t)


# -- lift to Z/p^2 -----------------------------------------------------------

@dataclass
class LiftedCtx:
    p: int
    t: int
    g2: int
    gamma2: tuple[int, ...]
    base: SubgroupCtx

    def gamma2_set(self) -> GSet:
        return gset_modp(self.gamma2, self.p * self.p)

    def label(self) -> str:
        return f"subgroup(p^2={self.p * self.p},t={self.t})"


def lifted_context(p: int, t: int) -> LiftedCtx:
    """Order-t subgroup of (Z/p^2)^*; reduction mod p maps it bijectively
    onto the order-t subgroup of (Z/p)^*."""
    base = subgroup_context(p, t)
    p2 = p * p
    g2 = base.g if pow(base.g, p - 1, p2) != 1 else base.g + p
    gen = pow(g2, p * (p - 1) // t, p2)
    members = []
    x = 1
    for _ in range(t):
        members.append(x)
        x = x * gen % p2
    if x != 1 or {m % p for m in members} != set(base.gamma):
        raise CrossCheckMismatch("lift does not reduce onto the base subgroup")
    return LiftedCtx(p, t, g2, tuple(sorted(members)), base)


def tk_cyclic(members: Iterable[int], m: int, k: int) -> int:
    """T_k inside Z/m, by whichever of two exact kernels fits in memory.

    Few members: enumerate all t^k k-fold sums and count collisions with a
    sort (memory t^k, independent of m, which matters when m = p^2).  Many
    members: k-1 rounds of shift-and-accumulate on a dense length-m array.
    Both are independent routes to the dictionary counter in ``energy.t_k``
    and the test suite cross-checks them.
    """
    members = [x % m for x in members]
    t = len(members)
    if t**k <= 2_000_000:
        arr = np.asarray(members, dtype=np.int64)
        sums = arr
        for _ in range(k - 1):
            sums = ((sums[:, None] + arr[None, :]) % m).ravel()
        _, counts = np.unique(sums, return_counts=True)
        return int((counts * counts).sum())
    acc = np.zeros(m, dtype=np.int64)
    for x in members:
        acc[x] += 1
    for _ in range(k - 1):
        nxt = np.zeros(m, dtype=np.int64)
        for x in members:
            nxt += np.roll(acc, x)
        acc = nxt
    return int((acc * acc).sum())


def mod_p2_subgroup(p: int, t: int, *, ks: tuple[int, ...] = (2, 3),
                    max_t: int = 64) -> tuple[LiftedCtx, dict[int, tuple[int, int]]]:
    """Lift plus the T_k comparison table {k: (T_k mod p^2, T_k mod p)}.

    Reduction mod p sends solutions to solutions injectively, so each lifted
    T_k can never exceed its base value; a violation means a counting bug.
    The two levels are counted by different kernels on purpose.
    """
    from . import energy as energy_mod

    if t > max_t:
        raise TooLarge(f"T_k comparison wants t <= {max_t}, got {t}")
    lift = lifted_context(p, t)
    table: dict[int, tuple[int, int]] = {}
    for k in ks:
        upstairs = tk_cyclic(lift.gamma2, p * p, k)
        downstairs = energy_mod.t_k(lift.base.gamma_set(), k)
        if upstairs > downstairs:
            raise CrossCheckMismatch(
                f"T_{k} grew under the lift: {upstairs} > {downstairs}")
        table[k] = (upstairs, downstairs)
    return lift, table
