"""Ring-theoretic invariants of a finite commutative ring.

Computes maximal ideals and locality, and for local rings the nilpotency
index t of the maximal ideal (m^t != 0, m^(t+1) = 0), the residue field
size q, the dimension profile of the chain m/m^2, m^2/m^3, ..., the socle
Ann(m), and the Gorenstein and special-principal-ideal-ring predicates.
Every finite commutative ring is Artinian, so the local machinery always
applies when the ring is local.
"""

from __future__ import annotations

from dataclasses import dataclass

from .ideals import (
    Ideal,
    IdealLattice,
    annihilator,
    ideal_product,
    name_ideal,
    sub_ideals,
)
from .rings import FiniteRing, RingError


def _prime_power(q: int):
    """Return (p, e) with q = p^e, or None if q is not a prime power."""
    if q < 2:
        return None
    p = 2
    while p * p <= q:
        if q % p == 0:
            e = 0
            while q % p == 0:
                q //= p
                e += 1
            return (p, e) if q == 1 else None
        p += 1
    return (q, 1)


def _power_exponent(value: int, base: int):
    """d with value = base^d, or None."""
    d = 0
    while value > 1:
        if value % base:
            return None
        value //= base
        d += 1
    return d if value == 1 else None


@dataclass(frozen=True)
class RingClassification:
    """Classification record; local-only fields are None for non-local rings.

    For fields the convention is t = 0, socle = R, Gorenstein and SPIR true,
    with ``is_field`` set so downstream checks can special-case them.
    """

    ring_fingerprint: str
    ideal_count: int
    maximal_ideals: tuple[Ideal, ...]
    is_local: bool
    is_field: bool = False
    m: Ideal | None = None
    t: int = 0
    residue_size: int | None = None
    vdim_profile: tuple[int, ...] = ()
    socle: Ideal | None = None
    socle_dim: int | None = None
    is_gorenstein: bool | None = None
    is_spir: bool | None = None

    @property
    def maximal_ideal(self) -> Ideal:
        if not self.is_local:
            raise RingError("ring is not local")
        return self.m


def vdim(numerator: Ideal, denominator: Ideal, m: Ideal, q: int) -> int:
    """Dimension of numerator/denominator as a vector space over the residue field.

    Requires denominator <= numerator and m*numerator <= denominator, so the
    quotient really is an R/m-vector space of size q^d.
    """
    if not denominator.issubset(numerator):
        raise RingError("denominator is not contained in numerator")
    if not ideal_product(m, numerator).issubset(denominator):
        raise RingError("m * numerator is not contained in denominator; quotient "
                        "is not a residue-field vector space")
    ratio, rem = divmod(numerator.cardinality, denominator.cardinality)
    d = _power_exponent(ratio, q) if rem == 0 else None
    if d is None:
        raise RingError(f"quotient size {numerator.cardinality}/{denominator.cardinality} "
                        f"is not a power of q={q}")
    return d


def classify(r: FiniteRing, lattice: IdealLattice) -> RingClassification:
    """Full classification from a complete lattice."""
    unit_mask = (1 << r.size) - 1
    zero_mask = 1 << r.zero
    proper = [i for i in lattice.ideals if i.mask != unit_mask]
    maximal = tuple(
        i for i in proper
        if not any(i.mask != j.mask and i.mask & ~j.mask == 0 for j in proper)
    )
    count = len(lattice)
    if len(maximal) != 1:
        return RingClassification(
            ring_fingerprint=r.fingerprint,
            ideal_count=count,
            maximal_ideals=maximal,
            is_local=False,
        )

    m = maximal[0]
    if m.mask == zero_mask:
        # Field: every nonzero element is a unit.
        return RingClassification(
            ring_fingerprint=r.fingerprint,
            ideal_count=count,
            maximal_ideals=maximal,
            is_local=True,
            is_field=True,
            m=m,
            t=0,
            residue_size=r.size,
            vdim_profile=(),
            socle=lattice.unit,
            socle_dim=1,
            is_gorenstein=True,
            is_spir=True,
        )

    q, rem = divmod(r.size, m.cardinality)
    if rem != 0 or _prime_power(q) is None:
        raise RingError(f"residue size {r.size}/{m.cardinality} is not a prime power; "
                        "input is not a valid local ring")

    powers = [m]
    while powers[-1].mask != zero_mask:
        powers.append(ideal_product(powers[-1], m))
        if len(powers) > r.size:
            raise RingError("maximal ideal is not nilpotent; input ring is invalid")
    t = len(powers) - 1  # powers[k] = m^(k+1); powers[t] = m^(t+1) = (0)

    profile = []
    for k in range(t):
        num, den = powers[k], powers[k + 1]
        d = _power_exponent(num.cardinality // den.cardinality, q)
        if d is None or num.cardinality % den.cardinality:
            raise RingError(f"|m^{k + 1}/m^{k + 2}| is not a power of q={q}")
        profile.append(d)

    socle = annihilator(m)
    socle_dim = _power_exponent(socle.cardinality, q)
    if socle_dim is None:
        raise RingError("socle size is not a power of the residue size")

    power_masks = {p.mask for p in powers}
    is_spir = {i.mask for i in lattice.ideals} == power_masks | {unit_mask}

    return RingClassification(
        ring_fingerprint=r.fingerprint,
        ideal_count=count,
        maximal_ideals=maximal,
        is_local=True,
        m=m,
        t=t,
        residue_size=q,
        vdim_profile=tuple(profile),
        socle=socle,
        socle_dim=socle_dim,
        is_gorenstein=socle_dim == 1,
        is_spir=is_spir,
    )


def unique_minimal_ideal(lattice: IdealLattice, classification=None) -> Ideal | None:
    """The unique minimal nonzero proper ideal, or None if there are zero or
    several.  Fields have no nonzero proper ideals, so they return None."""
    zero_mask = 1 << lattice.ring.zero
    minimal = [
        i for i in lattice.ideals
        if i.mask != zero_mask and not i.is_unit
        and len(sub_ideals(i, lattice)) == 2
    ]
    return minimal[0] if len(minimal) == 1 else None


def classification_to_json(c: RingClassification, lattice: IdealLattice | None = None) -> dict:
    def iname(i):
        return None if i is None else name_ideal(i, lattice)

    def imembers(i):
        return None if i is None else list(i.members)

    return {
        "ring": c.ring_fingerprint,
        "ideal_count": c.ideal_count,
        "maximal_ideals": [iname(i) for i in c.maximal_ideals],
        "is_local": c.is_local,
        "is_field": c.is_field,
        "m": imembers(c.m),
        "t": c.t if c.is_local else None,
        "residue_size": c.residue_size,
        "vdim_profile": list(c.vdim_profile),
        "socle": imembers(c.socle),
        "socle_dim": c.socle_dim,
        "is_gorenstein": c.is_gorenstein,
        "is_spir": c.is_spir,
    }


CSV_FIELDS = (
    "ring", "ideal_count", "n_maximal", "is_local", "is_field", "t",
    "residue_size", "vdim_profile", "socle_dim", "is_gorenstein", "is_spir",
)


def classification_csv_row(c: RingClassification) -> list:
    return [
        c.ring_fingerprint[:12],
        c.ideal_count,
        len(c.maximal_ideals),
        c.is_local,
        c.is_field,
        c.t if c.is_local else "",
        c.residue_size if c.residue_size is not None else "",
        " ".join(str(d) for d in c.vdim_profile),
        c.socle_dim if c.socle_dim is not None else "",
        c.is_gorenstein if c.is_gorenstein is not None else "",
        c.is_spir if c.is_spir is not None else "",
    ]
