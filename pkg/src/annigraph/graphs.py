"""Simple graphs: annihilating-ideal and zero-divisor graphs, reference
families, complete-bipartite subgraph search, and DOT/JSON output."""

from __future__ import annotations

from dataclasses import dataclass

from .ideals import (
    IdealLattice,
    annihilating_ideals,
    ideal_product,
    name_ideal,
)
from .rings import FiniteRing


@dataclass(frozen=True)
class SimpleGraph:
    """Undirected simple graph; vertices are labels, edges sorted (i, j) pairs with i < j."""

    vertices: tuple[str, ...]
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        n = len(self.vertices)
        seen = set()
        for u, v in self.edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range")
            if u >= v:
                raise ValueError(f"edge ({u},{v}) not in canonical i < j form")
            if (u, v) in seen:
                raise ValueError(f"duplicate edge ({u},{v})")
            seen.add((u, v))
        if tuple(sorted(self.edges)) != self.edges:
            raise ValueError("edges not sorted")

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @property
    def adjacency(self) -> tuple[frozenset, ...]:
        cached = self.__dict__.get("_adjacency")
        if cached is None:
            sets = [set() for _ in self.vertices]
            for u, v in self.edges:
                sets[u].add(v)
                sets[v].add(u)
            cached = tuple(frozenset(s) for s in sets)
            object.__setattr__(self, "_adjacency", cached)
        return cached

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]


def simple_graph(vertices, edges) -> SimpleGraph:
    """Normalize arbitrary edge pairs into canonical SimpleGraph form."""
    canon = set()
    for u, v in edges:
        if u == v:
            raise ValueError(f"self-loop at vertex {u}")
        canon.add((u, v) if u < v else (v, u))
    return SimpleGraph(tuple(str(s) for s in vertices), tuple(sorted(canon)))


def complete_graph(n: int) -> SimpleGraph:
    if n < 1:
        raise ValueError("complete graph needs at least 1 vertex")
    return simple_graph(
        [str(i) for i in range(n)],
        [(i, j) for i in range(n) for j in range(i + 1, n)],
    )


def complete_bipartite(m: int, n: int) -> SimpleGraph:
    """K_{m,n}; labels a0..a(m-1) / b0..b(n-1) record part membership."""
    if m < 1 or n < 1:
        raise ValueError("bipartite parts need at least 1 vertex each")
    labels = [f"a{i}" for i in range(m)] + [f"b{j}" for j in range(n)]
    edges = [(i, m + j) for i in range(m) for j in range(n)]
    return simple_graph(labels, edges)


def build_ag(r: FiniteRing, lattice: IdealLattice) -> SimpleGraph:
    """The annihilating-ideal graph: vertices are nonzero ideals with nonzero
    annihilator; distinct I, J are adjacent exactly when IJ = (0)."""
    verts = annihilating_ideals(lattice)
    labels = [name_ideal(i, lattice) for i in verts]
    zero_mask = 1 << r.zero
    edges = []
    for a in range(len(verts)):
        for b in range(a + 1, len(verts)):
            if ideal_product(verts[a], verts[b]).mask == zero_mask:
                edges.append((a, b))
    return simple_graph(labels, edges)


def build_zero_divisor_graph(r: FiniteRing) -> SimpleGraph:
    """Vertices are the nonzero zero-divisors; x, y adjacent when xy = 0."""
    zero = r.zero
    mul = r.mul
    zd = [
        x for x in range(r.size)
        if x != zero and any(mul[x][y] == zero for y in range(r.size) if y != zero)
    ]
    index = {x: k for k, x in enumerate(zd)}
    edges = [
        (index[x], index[y])
        for i, x in enumerate(zd)
        for y in zd[i + 1:]
        if mul[x][y] == zero
    ]
    return simple_graph([r.labels[x] for x in zd], edges)


@dataclass(frozen=True)
class KmnSearch:
    """Outcome of the complete-bipartite subgraph search.

    status is "found" (with the two vertex parts), "none" (search space
    exhausted, no witness exists), or "unknown" (node budget ran out).
    """

    status: str
    left: tuple[int, ...] | None = None
    right: tuple[int, ...] | None = None


def find_complete_bipartite_subgraph(g: SimpleGraph, m: int, n: int,
                                     node_budget: int | None = None) -> KmnSearch:
    """Backtracking search for disjoint vertex sets A (|A|=m), B (|B|=n) with
    every A-B pair adjacent (ordinary subgraph containment, not induced)."""
    if m < 1 or n < 1:
        raise ValueError("part sizes must be at least 1")
    swapped = m > n
    if swapped:
        m, n = n, m
    nv = g.n_vertices
    if nv < m + n:
        return KmnSearch("none")
    nbr = [0] * nv
    for u, v in g.edges:
        nbr[u] |= 1 << v
        nbr[v] |= 1 << u
    nodes = 0

    def rec(start: int, chosen: list[int], common: int):
        nonlocal nodes
        nodes += 1
        if node_budget is not None and nodes > node_budget:
            raise _BudgetStop
        if len(chosen) == m:
            avail = common & ~mask_of_list(chosen)
            if avail.bit_count() >= n:
                right = []
                while avail and len(right) < n:
                    low = avail & -avail
                    right.append(low.bit_length() - 1)
                    avail ^= low
                return tuple(chosen), tuple(right)
            return None
        for v in range(start, nv):
            new_common = common & nbr[v]
            # B needs n vertices out of the common neighborhood.
            if new_common.bit_count() < n:
                continue
            chosen.append(v)
            hit = rec(v + 1, chosen, new_common)
            if hit:
                return hit
            chosen.pop()
        return None

    def mask_of_list(vs):
        out = 0
        for v in vs:
            out |= 1 << v
        return out

    class _BudgetStop(Exception):
        pass

    try:
        hit = rec(0, [], (1 << nv) - 1)
    except _BudgetStop:
        return KmnSearch("unknown")
    if hit is None:
        return KmnSearch("none")
    left, right = hit
    if swapped:
        left, right = right, left
    return KmnSearch("found", left, right)


def to_dot(g: SimpleGraph, name: str = "AG") -> str:
    """Deterministic DOT text: one vertex line per label, one sorted edge line per edge."""
    lines = [f"graph {name} {{"]
    for label in g.vertices:
        lines.append(f'  "{label}";')
    for u, v in g.edges:
        lines.append(f'  "{g.vertices[u]}" -- "{g.vertices[v]}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_to_json(g: SimpleGraph) -> dict:
    return {"vertices": list(g.vertices), "edges": [list(e) for e in g.edges]}


def graph_from_json(data: dict) -> SimpleGraph:
    return simple_graph(data["vertices"], [tuple(e) for e in data["edges"]])
