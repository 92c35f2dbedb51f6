"""Finite ground sets and exact pairwise set arithmetic.

A GSet is a sorted, duplicate-free tuple of ground elements of one kind
(all rationals, or all residues mod one prime).  Input sets exclude 0; sets
derived from differences (supports, popular-difference sets) may contain 0
and are built with allow_zero=True.  All combine/count operations are plain
O(|A||B|) pairwise enumeration -- exactness over speed, no FFT.

Counting kernels drop to raw machine integers whenever the elements allow it
(integer-valued rationals, residues); results are identical to the generic
Fraction path and are cross-checked in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from pathlib import Path
from typing import Iterable, Sequence, TYPE_CHECKING

from .errors import (
    BadSpec,
    IndexOutOfRange,
    MixedKinds,
    ZeroDenominator,
)
from .ground import GroundElement, ModP, format_element, parse_element

if TYPE_CHECKING:  # pragma: no cover - annotation only, avoids an import cycle
    from .subgroups import SubgroupCtx

RATIONAL = "rational"
MODP = "modp"

_OPS = ("+", "-", "*", "/")


@dataclass(frozen=True)
class GSet:
    """Immutable finite set of ground elements of a single kind."""

    elements: tuple
    kind: str
    p: int | None = None

    @classmethod
    def from_elements(
        cls,
        items: Iterable,
        *,
        allow_zero: bool = False,
        kind: str | None = None,
        p: int | None = None,
    ) -> "GSet":
        """Build a GSet: dedupe, sort, validate homogeneity and the no-zero rule.

        Plain ints are coerced to Fraction (rational kind) or ModP when a
        modulus is supplied.  allow_zero is for derived sets only; input sets
        keep the 0-excluded convention.
        """
        raw = list(items)
        if p is not None:
            kind = MODP
            raw = [x if isinstance(x, ModP) else ModP(int(x) % p, p) for x in raw]
        coerced = []
        seen_kind = None
        seen_p = None
        for x in raw:
            if isinstance(x, ModP):
                k = MODP
                if seen_p is not None and x.p != seen_p:
                    raise MixedKinds(f"residues mod {seen_p} and mod {x.p} in one set")
                seen_p = x.p
            elif isinstance(x, (int, Fraction)):
                k = RATIONAL
                x = Fraction(x)
            else:
                raise MixedKinds(f"unsupported element type {type(x).__name__}")
            if seen_kind is not None and k != seen_kind:
                raise MixedKinds("rational and mod-p elements in one set")
            seen_kind = k
            coerced.append(x)
        if seen_kind is None:
            if kind is None:
                raise BadSpec("empty set needs an explicit kind")
            seen_kind = kind
            seen_p = p
        if kind is not None and kind != seen_kind:
            raise MixedKinds(f"declared kind {kind!r} but elements are {seen_kind!r}")
        dedup = sorted(set(coerced))
        if not allow_zero:
            for x in dedup:
                if (isinstance(x, ModP) and x.value == 0) or x == 0:
                    raise BadSpec("0 is excluded from input sets")
        return cls(tuple(dedup), seen_kind, seen_p)

    @property
    def size(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x) -> bool:
        return x in self.member_set()

    def member_set(self) -> frozenset:
        cached = self.__dict__.get("_members")
        if cached is None:
            cached = frozenset(self.elements)
            self.__dict__["_members"] = cached
        return cached

    def values(self) -> tuple:
        """Raw values: ints (residues) for mod-p sets, Fractions for rational."""
        if self.kind == MODP:
            return tuple(x.value for x in self.elements)
        return self.elements

    def int_values(self) -> tuple[int, ...] | None:
        """Integer view when every element is an integer (or a residue)."""
        cached = self.__dict__.get("_ints", False)
        if cached is False:
            if self.kind == MODP:
                cached = tuple(x.value for x in self.elements)
            elif all(x.denominator == 1 for x in self.elements):
                cached = tuple(x.numerator for x in self.elements)
            else:
                cached = None
            self.__dict__["_ints"] = cached
        return cached

    def scaled_int_values(self) -> tuple[tuple[int, ...], int]:
        """(k*x for x in set, k) with k the lcm of denominators (rational only).

        Scaling by a nonzero constant preserves all additive coincidence
        counts, so counting kernels may work on the scaled integers.
        """
        if self.kind != RATIONAL:
            raise MixedKinds("scaled_int_values is for rational sets")
        ints = self.int_values()
        if ints is not None:
            return ints, 1
        scale = 1
        for x in self.elements:
            scale = scale * x.denominator // gcd(scale, x.denominator)
        return tuple(int(x * scale) for x in self.elements), scale

    def label(self) -> str:
        if self.kind == MODP:
            return f"modp(p={self.p},n={self.size})"
        return f"rational(n={self.size})"


def gset_rational(values: Iterable, *, allow_zero: bool = False) -> GSet:
    return GSet.from_elements((Fraction(v) for v in values), allow_zero=allow_zero, kind=RATIONAL)


def gset_modp(values: Iterable[int], p: int, *, allow_zero: bool = False) -> GSet:
    return GSet.from_elements(values, allow_zero=allow_zero, p=p)


@dataclass
class CountTable:
    """Multiplicity table r_{A op B}: value -> number of ordered pairs."""

    entries: dict
    total: int
    kind: str = RATIONAL
    p: int | None = None

    def __post_init__(self) -> None:
        s = sum(self.entries.values())
        if s != self.total:
            raise BadSpec(f"count table sums to {s}, expected {self.total}")

    def get(self, x) -> int:
        if isinstance(x, int) and self.kind == RATIONAL:
            x = Fraction(x)
        return self.entries.get(x, 0)

    # r(x) is the usual name for the multiplicity in the counting arguments
    r = get

    def support_size(self) -> int:
        return len(self.entries)

    def max_count(self) -> int:
        return max(self.entries.values()) if self.entries else 0

    def support_set(self) -> GSet:
        return GSet.from_elements(self.entries.keys(), allow_zero=True, kind=self.kind, p=self.p)

    def int_items(self) -> list[tuple[int, int]] | None:
        """(value, count) with integer values, or None if values are not integral."""
        if self.kind == MODP:
            return [(k.value, c) for k, c in self.entries.items()]
        out = []
        for k, c in self.entries.items():
            if k.denominator != 1:
                return None
            out.append((k.numerator, c))
        return out


def _combine_int(av: Sequence[int], bv: Sequence[int], op: str, p: int | None) -> dict:
    counts: dict = {}
    if p is None:
        if op == "+":
            for a in av:
                for b in bv:
                    k = a + b
                    counts[k] = counts.get(k, 0) + 1
        elif op == "-":
            for a in av:
                for b in bv:
                    k = a - b
                    counts[k] = counts.get(k, 0) + 1
        elif op == "*":
            for a in av:
                for b in bv:
                    k = a * b
                    counts[k] = counts.get(k, 0) + 1
        else:
            raise BadSpec(f"no integer kernel for op {op!r}")
        return counts
    if op == "/":
        bv = [pow(b, -1, p) for b in bv]
        op = "*"
    if op == "+":
        for a in av:
            for b in bv:
                k = (a + b) % p
                counts[k] = counts.get(k, 0) + 1
    elif op == "-":
        for a in av:
            for b in bv:
                k = (a - b) % p
                counts[k] = counts.get(k, 0) + 1
    else:
        for a in av:
            for b in bv:
                k = (a * b) % p
                counts[k] = counts.get(k, 0) + 1
    return counts


def combine(A: GSet, B: GSet, op: str) -> CountTable:
    """Full multiplicity table of {a op b : a in A, b in B}, ordered pairs.

    total is always |A||B|; support gives the sumset/difference/product/ratio
    set.  Division requires 0 not in B.
    """
    if op not in _OPS:
        raise BadSpec(f"op must be one of {_OPS}, got {op!r}")
    if A.kind != B.kind or A.p != B.p:
        raise MixedKinds(f"cannot combine {A.kind} (p={A.p}) with {B.kind} (p={B.p})")
    total = A.size * B.size
    if op == "/":
        for b in B.elements:
            if (isinstance(b, ModP) and b.value == 0) or b == 0:
                raise ZeroDenominator("division by a set containing 0")
    if A.kind == MODP:
        counts = _combine_int(A.values(), B.values(), op, A.p)
        entries = {ModP(v, A.p): c for v, c in counts.items()}
        return CountTable(entries, total, MODP, A.p)
    ia, ib = A.int_values(), B.int_values()
    if ia is not None and ib is not None and op != "/":
        counts = _combine_int(ia, ib, op, None)
        entries = {Fraction(v): c for v, c in counts.items()}
        return CountTable(entries, total, RATIONAL)
    entries = {}
    if op == "+":
        for a in A.elements:
            for b in B.elements:
                k = a + b
                entries[k] = entries.get(k, 0) + 1
    elif op == "-":
        for a in A.elements:
            for b in B.elements:
                k = a - b
                entries[k] = entries.get(k, 0) + 1
    elif op == "*":
        for a in A.elements:
            for b in B.elements:
                k = a * b
                entries[k] = entries.get(k, 0) + 1
    else:
        for a in A.elements:
            for b in B.elements:
                k = a / b
                entries[k] = entries.get(k, 0) + 1
    return CountTable(entries, total, RATIONAL)


def support_size(A: GSet, B: GSet, op: str) -> int:
    """|A op B| without keeping the multiplicity table."""
    if A.kind != B.kind or A.p != B.p:
        raise MixedKinds(f"cannot combine {A.kind} with {B.kind}")
    if op == "/":
        for b in B.elements:
            if (isinstance(b, ModP) and b.value == 0) or b == 0:
                raise ZeroDenominator("division by a set containing 0")
    if A.kind == MODP:
        p = A.p
        av, bv = A.values(), B.values()
        if op == "/":
            bv = [pow(b, -1, p) for b in bv]
            op = "*"
        if op == "+":
            return len({(a + b) % p for a in av for b in bv})
        if op == "-":
            return len({(a - b) % p for a in av for b in bv})
        return len({(a * b) % p for a in av for b in bv})
    ia, ib = A.int_values(), B.int_values()
    if ia is not None and ib is not None:
        if op == "+":
            return len({a + b for a in ia for b in ib})
        if op == "-":
            return len({a - b for a in ia for b in ib})
        if op == "*":
            return len({a * b for a in ia for b in ib})
        return len({Fraction(a, b) for a in ia for b in ib})
    if op == "+":
        return len({a + b for a in A.elements for b in B.elements})
    if op == "-":
        return len({a - b for a in A.elements for b in B.elements})
    if op == "*":
        return len({a * b for a in A.elements for b in B.elements})
    return len({a / b for a in A.elements for b in B.elements})


def combined_set(A: GSet, B: GSet, op: str, *, allow_zero: bool = True) -> GSet:
    """The set A op B itself (support of the combine table)."""
    if A.kind == MODP:
        p = A.p
        av, bv = A.values(), B.values()
        if op == "/":
            for b in bv:
                if b == 0:
                    raise ZeroDenominator("division by a set containing 0")
            bv = [pow(b, -1, p) for b in bv]
            op = "*"
        if op == "+":
            vals = {(a + b) % p for a in av for b in bv}
        elif op == "-":
            vals = {(a - b) % p for a in av for b in bv}
        else:
            vals = {(a * b) % p for a in av for b in bv}
        return GSet.from_elements(vals, allow_zero=allow_zero, p=p)
    if op == "/":
        for b in B.elements:
            if b == 0:
                raise ZeroDenominator("division by a set containing 0")
        vals = {a / b for a in A.elements for b in B.elements}
    elif op == "+":
        vals = {a + b for a in A.elements for b in B.elements}
    elif op == "-":
        vals = {a - b for a in A.elements for b in B.elements}
    else:
        vals = {a * b for a in A.elements for b in B.elements}
    return GSet.from_elements(vals, allow_zero=allow_zero, kind=RATIONAL)


def doubling_stats(A: GSet) -> tuple[Fraction, Fraction, Fraction]:
    """(|AA|/|A|, |A/A|/|A|, |A+A|/|A|) as exact rationals.  Needs |A| >= 2."""
    if A.size < 2:
        raise BadSpec("doubling statistics need at least two elements")
    n = A.size
    m_mult = Fraction(support_size(A, A, "*"), n)
    m_div = Fraction(support_size(A, A, "/"), n)
    m_add = Fraction(support_size(A, A, "+"), n)
    return m_mult, m_div, m_add


def iterated_sum_counts(A: GSet, k: int) -> CountTable:
    """Multiplicity table of the k-fold sumset kA, ordered k-tuples."""
    if k < 1:
        raise BadSpec(f"k must be >= 1, got {k}")
    if A.kind == MODP:
        p = A.p
        vals = A.values()
        cur = {v: 1 for v in vals}
        for _ in range(k - 1):
            nxt: dict = {}
            for s, c in cur.items():
                for v in vals:
                    key = (s + v) % p
                    nxt[key] = nxt.get(key, 0) + c
            cur = nxt
        entries = {ModP(v, p): c for v, c in cur.items()}
        return CountTable(entries, A.size**k, MODP, p)
    ints = A.int_values()
    vals = ints if ints is not None else A.elements
    cur = {v: 1 for v in vals}
    for _ in range(k - 1):
        nxt = {}
        for s, c in cur.items():
            for v in vals:
                key = s + v
                nxt[key] = nxt.get(key, 0) + c
        cur = nxt
    entries = {Fraction(v): c for v, c in cur.items()}
    return CountTable(entries, A.size**k, RATIONAL)


def translate_intersect(A: GSet, d: GroundElement) -> GSet:
    """A intersect (A + d); its size equals r_{A-A}(d)."""
    if A.kind == MODP:
        if not isinstance(d, ModP) or d.p != A.p:
            raise MixedKinds("translation by an element of a different kind")
        dv = d.value
        p = A.p
        members = set(A.values())
        hits = [v for v in A.values() if (v - dv) % p in members]
        return GSet.from_elements(hits, allow_zero=True, p=p, kind=MODP) if hits else GSet((), MODP, p)
    if isinstance(d, ModP):
        raise MixedKinds("translation by an element of a different kind")
    d = Fraction(d)
    members = A.member_set()
    hits = [x for x in A.elements if x - d in members]
    return GSet(tuple(hits), RATIONAL, None)


def invariant_union(ctx: "SubgroupCtx", coset_indices: Iterable[int]) -> GSet:
    """Union of the cosets g^j * Gamma for the given j; Gamma-invariant by design."""
    indices = list(coset_indices)
    for j in indices:
        if not 0 <= j < ctx.cosets:
            raise IndexOutOfRange(f"coset index {j} outside 0..{ctx.cosets - 1}")
    p = ctx.p
    values: set[int] = set()
    for j in sorted(set(indices)):
        shift = pow(ctx.g, j, p)
        values.update((shift * x) % p for x in ctx.gamma)
    return GSet.from_elements(values, p=p)


def write_gset(A: GSet, path: str | Path) -> None:
    """Write a set file: a kind header, then one element per line."""
    lines = []
    if A.kind == MODP:
        lines.append(f"kind: modp p={A.p}")
        lines.extend(str(x.value) for x in A.elements)
    else:
        lines.append("kind: rational")
        lines.extend(format_element(x) for x in A.elements)
    Path(path).write_text("\n".join(lines) + "\n")


def read_gset(path: str | Path) -> GSet:
    """Read a set file written by write_gset.  '#' starts a comment."""
    raw = Path(path).read_text().splitlines()
    lines = []
    for line in raw:
        line = line.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines:
        raise BadSpec(f"{path}: empty set file")
    header = lines[0]
    if not header.startswith("kind:"):
        raise BadSpec(f"{path}: first line must declare 'kind: rational' or 'kind: modp p=<prime>'")
    decl = header[len("kind:"):].strip()
    if decl == RATIONAL:
        elems = [parse_element(s, RATIONAL) for s in lines[1:]]
        return GSet.from_elements(elems, kind=RATIONAL)
    if decl.startswith(MODP):
        part = decl[len(MODP):].strip()
        if not part.startswith("p="):
            raise BadSpec(f"{path}: modp header must carry p=<prime>")
        p = int(part[2:])
        elems = [parse_element(s, MODP, p) for s in lines[1:]]
        return GSet.from_elements(elems, p=p)
    raise BadSpec(f"{path}: unknown kind {decl!r}")
