"""Ideals of a finite commutative ring and the complete ideal lattice.

An ideal is stored as a bitmask over element indices, so membership is O(1)
and set algebra is a couple of word operations.  The lattice is generated by
seeding with all principal ideals and closing under pairwise sums, which is
complete because every ideal of a finite unital ring is a finite sum of
principal ideals.
"""

from __future__ import annotations

from dataclasses import dataclass

from .rings import FiniteRing, RingError

# Abort lattice enumeration beyond this many ideals.
LATTICE_CAP = 100_000


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(elements) -> int:
    out = 0
    for e in elements:
        out |= 1 << e
    return out


@dataclass(frozen=True)
class Ideal:
    """A subset of ring elements closed under + and under ring multiples."""

    ring: FiniteRing
    mask: int

    @property
    def members(self) -> tuple[int, ...]:
        return tuple(_bits(self.mask))

    @property
    def cardinality(self) -> int:
        return self.mask.bit_count()

    @property
    def is_zero(self) -> bool:
        return self.mask == 1 << self.ring.zero

    @property
    def is_unit(self) -> bool:
        return self.mask == (1 << self.ring.size) - 1

    def __contains__(self, element: int) -> bool:
        return bool(self.mask >> element & 1)

    def issubset(self, other: "Ideal") -> bool:
        return self.mask & ~other.mask == 0


@dataclass(frozen=True)
class IdealLattice:
    """All ideals of a ring, sorted by (cardinality, member list)."""

    ring: FiniteRing
    ideals: tuple[Ideal, ...]

    def __post_init__(self):
        object.__setattr__(self, "_by_mask", {i.mask: k for k, i in enumerate(self.ideals)})

    def __len__(self) -> int:
        return len(self.ideals)

    def __iter__(self):
        return iter(self.ideals)

    def index_of(self, ideal: Ideal) -> int:
        return self._by_mask[ideal.mask]

    @property
    def zero(self) -> Ideal:
        return self.ideals[0]

    @property
    def unit(self) -> Ideal:
        return self.ideals[-1]


def _require_same_ring(i: Ideal, j: Ideal):
    if i.ring is not j.ring and i.ring != j.ring:
        raise RingError("ideals belong to different rings")


def principal_ideal(r: FiniteRing, x: int) -> Ideal:
    """Rx, the set of ring multiples of x (an ideal since r is commutative unital)."""
    if not (0 <= x < r.size):
        raise RingError(f"element index {x} out of range")
    mul = r.mul
    mask = 0
    for a in range(r.size):
        mask |= 1 << mul[a][x]
    return Ideal(r, mask)


def _close_under_add(r: FiniteRing, mask: int) -> int:
    add = r.add
    while True:
        new = mask
        members = list(_bits(mask))
        for a in members:
            row = add[a]
            for b in members:
                new |= 1 << row[b]
        if new == mask:
            return mask
        mask = new


def ideal_sum(i: Ideal, j: Ideal) -> Ideal:
    """I + J = {a + b}; already an ideal, no closure pass needed."""
    _require_same_ring(i, j)
    add = i.ring.add
    mask = 0
    for a in _bits(i.mask):
        row = add[a]
        for b in _bits(j.mask):
            mask |= 1 << row[b]
    return Ideal(i.ring, mask)


def ideal_intersection(i: Ideal, j: Ideal) -> Ideal:
    _require_same_ring(i, j)
    return Ideal(i.ring, i.mask & j.mask)


def ideal_product(i: Ideal, j: Ideal) -> Ideal:
    """The ideal generated by pairwise products: close {a*b} under addition."""
    _require_same_ring(i, j)
    mul = i.ring.mul
    mask = 0
    for a in _bits(i.mask):
        row = mul[a]
        for b in _bits(j.mask):
            mask |= 1 << row[b]
    return Ideal(i.ring, _close_under_add(i.ring, mask))


def ideal_power(i: Ideal, k: int) -> Ideal:
    if k < 1:
        raise RingError("ideal powers need exponent >= 1")
    out = i
    for _ in range(k - 1):
        nxt = ideal_product(out, i)
        if nxt.mask == out.mask:
            return nxt
        out = nxt
    return out


def annihilator(i: Ideal) -> Ideal:
    """Ann(I) = {a : a*x = 0 for every x in I}; always an ideal."""
    r = i.ring
    mul = r.mul
    zero = r.zero
    members = i.members
    mask = 0
    for a in range(r.size):
        row = mul[a]
        if all(row[x] == zero for x in members):
            mask |= 1 << a
    return Ideal(r, mask)


def all_ideals(r: FiniteRing, cap: int = LATTICE_CAP) -> IdealLattice:
    """Enumerate every ideal: principal seeds, then pairwise-sum closure."""
    seeds = {principal_ideal(r, x).mask for x in range(r.size)}
    known = set(seeds)
    queue = sorted(seeds)
    add = r.add
    if len(known) > cap:
        raise RingError(
            f"ideal lattice exceeds cap ({cap}); "
            f"ring fingerprint {r.fingerprint[:12]}"
        )
    while queue:
        m1 = queue.pop()
        for m2 in list(known):
            s = 0
            for a in _bits(m1):
                row = add[a]
                for b in _bits(m2):
                    s |= 1 << row[b]
            if s not in known:
                known.add(s)
                queue.append(s)
                if len(known) > cap:
                    raise RingError(
                        f"ideal lattice exceeds cap ({cap}); "
                        f"ring fingerprint {r.fingerprint[:12]}"
                    )
    masks = sorted(known, key=lambda m: (m.bit_count(), tuple(_bits(m))))
    return IdealLattice(r, tuple(Ideal(r, m) for m in masks))


def sub_ideals(j: Ideal, lattice: IdealLattice) -> list[Ideal]:
    """All lattice members contained in j, including (0) and j itself."""
    if j.ring is not lattice.ring and j.ring != lattice.ring:
        raise RingError("ideal and lattice belong to different rings")
    return [i for i in lattice.ideals if i.mask & ~j.mask == 0]


def annihilating_ideals(lattice: IdealLattice) -> list[Ideal]:
    """Nonzero ideals with nonzero annihilator, in lattice order."""
    zero_mask = 1 << lattice.ring.zero
    out = []
    for i in lattice.ideals:
        if i.mask == zero_mask:
            continue
        if annihilator(i).mask != zero_mask:
            out.append(i)
    return out


def name_ideal(ideal: Ideal, lattice: IdealLattice | None = None) -> str:
    """Generator-based display name: "(x)", "(x,y)", or "I#k" past 2 generators."""
    r = ideal.ring
    members = ideal.members
    for x in members:
        if principal_ideal(r, x).mask == ideal.mask:
            return f"({r.labels[x]})"
    nonzero = [x for x in members if x != r.zero]
    for ai, a in enumerate(nonzero):
        pa = principal_ideal(r, a)
        for b in nonzero[ai + 1:]:
            if ideal_sum(pa, principal_ideal(r, b)).mask == ideal.mask:
                return f"({r.labels[a]},{r.labels[b]})"
    if lattice is not None:
        return f"I#{lattice.index_of(ideal)}"
    return f"I#{ideal.mask:x}"


def ideal_to_json(i: Ideal) -> dict:
    return {"ring": i.ring.fingerprint, "members": list(i.members)}


def lattice_to_json(lattice: IdealLattice) -> dict:
    return {
        "ring": lattice.ring.fingerprint,
        "ideals": [list(i.members) for i in lattice.ideals],
    }
