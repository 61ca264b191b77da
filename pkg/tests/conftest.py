"""Shared fixtures and independent oracles for the test suite.

The oracles deliberately avoid the library's own algorithms: ideal
enumeration by exhaustive subset closure, annihilating-ideal graphs by
elementwise pairwise products, genus by full rotation-system enumeration,
and Z_n ideal structure by divisor arithmetic.
"""

from __future__ import annotations

import math
from itertools import permutations, product as iproduct

import pytest

from annigraph.genus import verify_embedding
from annigraph.rings import FiniteRing, make_structure_constants
from annigraph.specs import builtin_corpus


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def brute_force_ideals(ring: FiniteRing) -> set[frozenset]:
    """Every subset containing 0 that is closed under + and ring multiples.

    Exhaustive over all 2^n subsets; only for rings of size <= 16.
    """
    n = ring.size
    assert n <= 16, "subset enumeration is only meant for tiny rings"
    add, mul, zero = ring.add, ring.mul, ring.zero
    found = set()
    for bits in range(1 << n):
        if not bits >> zero & 1:
            continue
        members = [e for e in range(n) if bits >> e & 1]
        ok = True
        for a in members:
            row = add[a]
            for b in members:
                if not bits >> row[b] & 1:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            for r in range(n):
                row = mul[r]
                for a in members:
                    if not bits >> row[a] & 1:
                        ok = False
                        break
                if not ok:
                    break
        if ok:
            found.add(frozenset(members))
    return found


def brute_ag(ring: FiniteRing, ideal_sets) -> tuple[set[frozenset], set[frozenset]]:
    """Vertices and edges of the annihilating-ideal graph from a raw ideal
    list, using only elementwise products.

    IJ = (0) exactly when every pairwise product of members vanishes, so no
    ideal arithmetic is needed.  Returns (vertex member-sets, edge pairs).
    """
    mul, zero = ring.mul, ring.zero
    nonzero = [s for s in ideal_sets if s != frozenset({zero})]

    def all_products_zero(i, j):
        return all(mul[a][b] == zero for a in i for b in j)

    vertices = {
        i for i in nonzero
        if any(all_products_zero(i, j) for j in nonzero)
    }
    edges = {
        frozenset((i, j))
        for i in vertices
        for j in vertices
        if i != j and all_products_zero(i, j)
    }
    return vertices, edges


def zn_ideal_sets(n: int) -> set[frozenset]:
    """Ideals of Z_n by divisor arithmetic: one per divisor of n."""
    return {frozenset(range(0, n, d)) for d in divisors(n)}


def rotation_count(graph) -> int:
    count = 1
    for v in range(graph.n_vertices):
        count *= math.factorial(max(graph.degree(v) - 1, 1))
    return count


def brute_force_genus(graph, cap: int = 200_000) -> int:
    """Minimum genus over all rotation systems, traced one by one."""
    assert rotation_count(graph) <= cap, "rotation space too large for brute force"
    options = []
    for v in range(graph.n_vertices):
        nbrs = sorted(graph.adjacency[v])
        if len(nbrs) <= 2:
            options.append([tuple(nbrs)])
        else:
            options.append([(nbrs[0],) + p for p in permutations(nbrs[1:])])
    best = None
    for combo in iproduct(*options):
        g = verify_embedding(graph, combo)
        if best is None or g < best:
            best = g
            if best == 0:
                break
    return 0 if best is None else best


def quadratic_sc_table(p: int):
    """Structure constants of Z_p[x,y]/(x^2, y^2) on the basis 1, x, y, xy."""
    def e(i):
        return [1 if j == i else 0 for j in range(4)]

    zero = [0, 0, 0, 0]
    return [
        [e(0), e(1), e(2), e(3)],
        [e(1), zero, e(3), zero],
        [e(2), e(3), zero, zero],
        [e(3), zero, zero, zero],
    ]


def make_f2xy_x2y2() -> FiniteRing:
    return make_structure_constants(2, 4, ("1", "x", "y", "xy"), quadratic_sc_table(2))


def make_f2xy_x2xyy2() -> FiniteRing:
    def e(i):
        return [1 if j == i else 0 for j in range(3)]

    zero = [0, 0, 0]
    table = [
        [e(0), e(1), e(2)],
        [e(1), zero, zero],
        [e(2), zero, zero],
    ]
    return make_structure_constants(2, 3, ("1", "x", "y"), table)


@pytest.fixture(scope="session")
def corpus():
    """The frozen corpus as a name -> ring mapping."""
    return dict(builtin_corpus())
