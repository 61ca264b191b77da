"""Finite commutative rings with identity, represented by explicit tables.

A ring is a pair of n x n Cayley tables (addition and multiplication) over
element indices 0..n-1, with index 0 reserved for the additive identity.
Constructors build the standard finite examples: Z_n, direct products,
quotients of univariate polynomial rings over prime fields, and algebras
given by structure constants.  ``validate_ring`` checks the ring axioms
exhaustively over the tables.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass

import numpy as np

# Hard cap on table-backed ring size; guards against materializing huge tables.
MAX_RING_SIZE = 4096

# Largest size for which the O(n^3) axiom checks run by default.
TRIPLE_CHECK_CAP = 512


class RingError(ValueError):
    """An input that cannot produce a valid finite commutative ring."""


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of ``validate_ring``: pass, or the first failing axiom.

    ``witness`` holds the offending element tuple, e.g. ``(a, b, c)`` for a
    distributivity failure.  ``triples_checked`` is False when the cubic
    checks were skipped because the ring exceeds the size guard.
    """

    ok: bool
    axiom: str | None = None
    witness: tuple | None = None
    triples_checked: bool = True

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class FiniteRing:
    """A finite commutative ring with 1 != 0, given by element tables.

    ``add`` and ``mul`` are row-major tables of element indices.  Rings built
    by the constructors in this module always place the additive identity at
    index 0.  Instances are immutable and safe to share.
    """

    size: int
    add: tuple[tuple[int, ...], ...]
    mul: tuple[tuple[int, ...], ...]
    zero: int = 0
    one: int = 1
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        n = self.size
        if n < 2:
            raise RingError("a ring with 1 != 0 needs at least 2 elements")
        if n > MAX_RING_SIZE:
            raise RingError(f"ring size {n} exceeds the cap of {MAX_RING_SIZE}")
        object.__setattr__(self, "add", tuple(tuple(row) for row in self.add))
        object.__setattr__(self, "mul", tuple(tuple(row) for row in self.mul))
        for name in ("add", "mul"):
            table = getattr(self, name)
            if len(table) != n:
                raise RingError(f"{name} table has {len(table)} rows, expected {n}")
            for i, row in enumerate(table):
                if len(row) != n:
                    raise RingError(f"{name} row {i} has {len(row)} entries, expected {n}")
                for e in row:
                    if not (0 <= e < n):
                        raise RingError(f"{name} table entry {e} out of range at row {i}")
        if not (0 <= self.zero < n) or not (0 <= self.one < n):
            raise RingError("zero/one index out of range")
        if not self.labels:
            object.__setattr__(self, "labels", tuple(str(i) for i in range(n)))
        else:
            object.__setattr__(self, "labels", tuple(str(s) for s in self.labels))
            if len(self.labels) != n:
                raise RingError("labels length does not match ring size")

    @property
    def fingerprint(self) -> str:
        """Hex digest of the tables; identifies the ring across serializations."""
        cached = self.__dict__.get("_fingerprint")
        if cached is None:
            payload = json.dumps(
                [self.size, self.zero, self.one, self.add, self.mul],
                separators=(",", ":"),
            )
            cached = hashlib.sha256(payload.encode()).hexdigest()
            object.__setattr__(self, "_fingerprint", cached)
        return cached

    def label(self, element: int) -> str:
        return self.labels[element]


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def make_zn(n: int) -> FiniteRing:
    """The ring of integers modulo ``n`` (n >= 2)."""
    if n < 2:
        raise RingError(f"Z_{n} is not a ring with 1 != 0")
    add = tuple(tuple((i + j) % n for j in range(n)) for i in range(n))
    mul = tuple(tuple((i * j) % n for j in range(n)) for i in range(n))
    return FiniteRing(size=n, add=add, mul=mul)


def make_product(a: FiniteRing, b: FiniteRing) -> FiniteRing:
    """Direct product with componentwise operations; element (i, j) has index i*|b|+j."""
    na, nb = a.size, b.size
    n = na * nb
    if n > MAX_RING_SIZE:
        raise RingError(f"product size {n} exceeds the cap of {MAX_RING_SIZE}")
    add = []
    mul = []
    for i in range(na):
        for j in range(nb):
            arow = []
            mrow = []
            for k in range(na):
                for l in range(nb):
                    arow.append(a.add[i][k] * nb + b.add[j][l])
                    mrow.append(a.mul[i][k] * nb + b.mul[j][l])
            add.append(tuple(arow))
            mul.append(tuple(mrow))
    labels = tuple(
        f"({a.labels[i]},{b.labels[j]})" for i in range(na) for j in range(nb)
    )
    one = a.one * nb + b.one
    return FiniteRing(size=n, add=tuple(add), mul=tuple(mul), one=one, labels=labels)


def _term(coeff: int, name: str) -> str:
    if name == "1":
        return str(coeff)
    if coeff == 1:
        return name
    return f"{coeff}{name}"


def _algebra_label(coeffs, basis_labels) -> str:
    terms = [_term(c, basis_labels[i]) for i, c in enumerate(coeffs) if c]
    return "+".join(terms) if terms else "0"


def _vec_index(coeffs, p: int) -> int:
    idx = 0
    for c in reversed(coeffs):
        idx = idx * p + c
    return idx


def _index_vec(idx: int, p: int, k: int) -> tuple[int, ...]:
    out = []
    for _ in range(k):
        out.append(idx % p)
        idx //= p
    return tuple(out)


def make_structure_constants(modulus, rank, basis_labels, mult_table) -> FiniteRing:
    """Commutative algebra over Z_p from a basis-by-basis multiplication table.

    ``mult_table[i][j]`` is the length-``rank`` coefficient vector of the
    product of basis elements i and j.  Basis element 0 must act as the
    multiplicative identity.  The table is checked for commutativity and
    associativity on the basis; a violation is reported with a witness.
    """
    p, k = modulus, rank
    if not _is_prime(p):
        raise RingError(f"modulus {p} is not prime")
    if k < 1:
        raise RingError("rank must be at least 1")
    if basis_labels is None:
        basis_labels = tuple(f"e{i}" for i in range(k))
    basis_labels = tuple(str(s) for s in basis_labels)
    if len(basis_labels) != k:
        raise RingError("basis label count does not match rank")
    if len(mult_table) != k or any(len(row) != k for row in mult_table):
        raise RingError("multiplication table must be rank x rank")
    table = []
    for row in mult_table:
        trow = []
        for vec in row:
            if len(vec) != k:
                raise RingError("structure-constant vectors must have length rank")
            trow.append(tuple(int(c) % p for c in vec))
        table.append(tuple(trow))

    def basis_vec(i):
        return tuple(1 if j == i else 0 for j in range(k))

    for j in range(k):
        if table[0][j] != basis_vec(j) or table[j][0] != basis_vec(j):
            raise RingError(
                f"basis element 0 ({basis_labels[0]}) is not a multiplicative "
                f"identity: fails against {basis_labels[j]}"
            )
    for i in range(k):
        for j in range(i + 1, k):
            if table[i][j] != table[j][i]:
                raise RingError(
                    "structure constants are not commutative: "
                    f"{basis_labels[i]}*{basis_labels[j]} != "
                    f"{basis_labels[j]}*{basis_labels[i]}"
                )

    def mul_vec(u, v):
        out = [0] * k
        for i, ci in enumerate(u):
            if not ci:
                continue
            for j, cj in enumerate(v):
                if not cj:
                    continue
                c = ci * cj % p
                w = table[i][j]
                for l in range(k):
                    out[l] = (out[l] + c * w[l]) % p
        return tuple(out)

    for i in range(k):
        for j in range(k):
            for l in range(k):
                left = mul_vec(table[i][j], basis_vec(l))
                right = mul_vec(basis_vec(i), table[j][l])
                if left != right:
                    raise RingError(
                        "structure constants are not associative: witness "
                        f"({basis_labels[i]}, {basis_labels[j]}, {basis_labels[l]})"
                    )

    n = p**k
    if n > MAX_RING_SIZE:
        raise RingError(f"algebra size {n} exceeds the cap of {MAX_RING_SIZE}")
    vecs = [_index_vec(i, p, k) for i in range(n)]
    add = tuple(
        tuple(_vec_index(tuple((a + b) % p for a, b in zip(u, v)), p) for v in vecs)
        for u in vecs
    )
    mul = tuple(tuple(_vec_index(mul_vec(u, v), p) for v in vecs) for u in vecs)
    labels = tuple(_algebra_label(v, basis_labels) for v in vecs)
    return FiniteRing(size=n, add=add, mul=mul, labels=labels)


def make_poly_quotient(p: int, f) -> FiniteRing:
    """Z_p[x] modulo a monic polynomial ``f`` (coefficients low degree first).

    Realizes prime fields' extensions and truncated polynomial rings such as
    F_4 = Z_2[x]/(x^2+x+1) or Z_3[x]/(x^2).
    """
    if not _is_prime(p):
        raise RingError(f"modulus {p} is not prime")
    f = [int(c) % p for c in f]
    if len(f) > 1 and f[-1] == 0:
        raise RingError("polynomial is not monic (leading coefficient 0)")
    d = len(f) - 1
    if d < 1:
        raise RingError("quotient polynomial must have degree at least 1")
    if f[-1] != 1:
        raise RingError("quotient polynomial must be monic")
    n = p**d
    if n > MAX_RING_SIZE:
        raise RingError(f"quotient size {n} exceeds the cap of {MAX_RING_SIZE}")

    # x^(d+i) mod f, precomputed for i = 0..d-2 (products have degree <= 2d-2).
    reductions = []
    current = [(-c) % p for c in f[:d]]  # x^d
    reductions.append(tuple(current))
    for _ in range(d - 2):
        shifted = [0] + current[:-1]
        lead = current[-1]
        current = [(shifted[i] + lead * reductions[0][i]) % p for i in range(d)]
        reductions.append(tuple(current))

    def poly_mul(u, v):
        prod = [0] * (2 * d - 1)
        for i, ci in enumerate(u):
            if not ci:
                continue
            for j, cj in enumerate(v):
                prod[i + j] = (prod[i + j] + ci * cj) % p
        out = prod[:d]
        for i in range(d, 2 * d - 1):
            c = prod[i]
            if c:
                red = reductions[i - d]
                for l in range(d):
                    out[l] = (out[l] + c * red[l]) % p
        return tuple(out)

    vecs = [_index_vec(i, p, d) for i in range(n)]
    add = tuple(
        tuple(_vec_index(tuple((a + b) % p for a, b in zip(u, v)), p) for v in vecs)
        for u in vecs
    )
    mul = tuple(tuple(_vec_index(poly_mul(u, v), p) for v in vecs) for u in vecs)
    basis = tuple("1" if i == 0 else ("x" if i == 1 else f"x^{i}") for i in range(d))
    labels = tuple(_algebra_label(v, basis) for v in vecs)
    return FiniteRing(size=n, add=add, mul=mul, labels=labels)


def _first_mismatch(left: np.ndarray, right: np.ndarray):
    bad = np.argwhere(left != right)
    return tuple(int(x) for x in bad[0]) if len(bad) else None


def validate_ring(r: FiniteRing, *, triple_cap: int = TRIPLE_CHECK_CAP,
                  force_triples: bool = False) -> ValidationReport:
    """Exhaustively check the commutative-ring axioms over the tables.

    Pair axioms are always checked.  The cubic checks (associativity of both
    operations, distributivity) run when ``size <= triple_cap`` or when
    ``force_triples`` is set; otherwise the report records that they were
    skipped.  Returns a pass, or the first failing axiom with a witness.
    """
    n = r.size
    A = np.asarray(r.add, dtype=np.int32)
    M = np.asarray(r.mul, dtype=np.int32)
    idx = np.arange(n, dtype=np.int32)
    z, one = r.zero, r.one

    if A.min() < 0 or A.max() >= n or M.min() < 0 or M.max() >= n:
        return ValidationReport(False, "totality", ())

    bad = np.argwhere(A[z] != idx)
    if len(bad):
        return ValidationReport(False, "zero_identity", (int(bad[0][0]),))

    has_inverse = (A == z).any(axis=1)
    if not has_inverse.all():
        return ValidationReport(False, "additive_inverse", (int(np.argmin(has_inverse)),))

    w = _first_mismatch(A, A.T)
    if w:
        return ValidationReport(False, "add_commutative", w)

    if one == z:
        return ValidationReport(False, "one_not_zero", (one,))

    bad = np.argwhere(M[one] != idx)
    if len(bad):
        return ValidationReport(False, "mul_identity", (int(bad[0][0]),))

    w = _first_mismatch(M, M.T)
    if w:
        return ValidationReport(False, "mul_commutative", w)

    if n > triple_cap and not force_triples:
        return ValidationReport(True, triples_checked=False)

    for a in range(n):
        w = _first_mismatch(A[A[a], :], A[a][A])
        if w:
            return ValidationReport(False, "add_associative", (a,) + w)
    for a in range(n):
        w = _first_mismatch(M[M[a], :], M[a][M])
        if w:
            return ValidationReport(False, "mul_associative", (a,) + w)
    for a in range(n):
        Ma = M[a]
        w = _first_mismatch(Ma[A], A[Ma[:, None], Ma[None, :]])
        if w:
            return ValidationReport(False, "distributive", (a,) + w)
    return ValidationReport(True)


def quotient_ring(r: FiniteRing, ideal) -> FiniteRing:
    """The quotient of ``r`` by an ideal, with least-index coset representatives."""
    if ideal.ring is not r and ideal.ring != r:
        raise RingError("ideal belongs to a different ring")
    members = ideal.members
    member_set = set(members)
    if r.zero not in member_set:
        raise RingError("subset is not an ideal: missing zero")
    for a in members:
        for b in members:
            if r.add[a][b] not in member_set:
                raise RingError(f"subset is not an ideal: not closed under + at ({a},{b})")
    for a in range(r.size):
        for x in members:
            if r.mul[a][x] not in member_set:
                raise RingError(
                    f"subset is not an ideal: not closed under ring multiples at ({a},{x})"
                )

    rep = [-1] * r.size
    reps = []
    for e in range(r.size):
        if rep[e] >= 0:
            continue
        coset = sorted(r.add[e][x] for x in members)
        lead = coset[0]
        for c in coset:
            rep[c] = lead
        reps.append(lead)
    reps.sort()
    index_of = {lead: i for i, lead in enumerate(reps)}
    m = len(reps)
    if m * len(members) != r.size:
        raise RingError("coset decomposition failed; subset is not an ideal")

    add = tuple(
        tuple(index_of[rep[r.add[a][b]]] for b in reps) for a in reps
    )
    mul = tuple(
        tuple(index_of[rep[r.mul[a][b]]] for b in reps) for a in reps
    )
    labels = tuple(f"[{r.labels[a]}]" for a in reps)
    return FiniteRing(size=m, add=add, mul=mul, one=index_of[rep[r.one]], labels=labels)


def ring_to_json(r: FiniteRing) -> dict:
    """The table exchange form: size, zero, one, row-major add/mul, labels."""
    return {
        "size": r.size,
        "zero": r.zero,
        "one": r.one,
        "add": [list(row) for row in r.add],
        "mul": [list(row) for row in r.mul],
        "labels": list(r.labels),
    }


def ring_from_json(data: dict) -> FiniteRing:
    """Load a ring from the table exchange form, normalizing zero to index 0."""
    try:
        size = int(data["size"])
        zero = int(data["zero"])
        one = int(data["one"])
        add = data["add"]
        mul = data["mul"]
    except (KeyError, TypeError, ValueError) as exc:
        raise RingError(f"malformed ring table file: {exc}") from exc
    labels = data.get("labels") or [str(i) for i in range(size)]
    if zero != 0:
        # Swap indices 0 and zero so that the additive identity sits at 0.
        perm = list(range(size))
        perm[0], perm[zero] = zero, 0
        add = [[perm[add[perm[i]][perm[j]]] for j in range(size)] for i in range(size)]
        mul = [[perm[mul[perm[i]][perm[j]]] for j in range(size)] for i in range(size)]
        labels = [labels[perm[i]] for i in range(size)]
        one = perm[one]
        zero = 0
    return FiniteRing(size=size, add=add, mul=mul, zero=zero, one=one,
                      labels=tuple(labels))


def ring_from_sc_json(data: dict) -> FiniteRing:
    """Load a structure-constant file: {p, rank, basis, mul}."""
    try:
        return make_structure_constants(
            int(data["p"]), int(data["rank"]), data.get("basis"), data["mul"]
        )
    except KeyError as exc:
        raise RingError(f"malformed structure-constant file: missing {exc}") from exc
