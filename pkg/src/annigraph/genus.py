"""Orientable genus of finite simple graphs.

Closed forms for the complete and complete bipartite families, Euler-formula
lower bounds, LR planarity, and an exact branch-and-bound solver over
rotation systems.

The exact solver builds a cellular embedding one edge at a time.  A partial
embedding is a rotation system of the inserted subgraph together with its
face cycles.  Inserting an edge means choosing a corner at each endpoint:
if both corners lie on the same face the face splits (genus unchanged), and
if they lie on different faces the faces merge (genus grows by one).  Corner
choices enumerate each rotation system exactly once, cyclic symmetry
included, so exhausting the search at merge budget g-1 proves genus >= g.
The driver deletes degree-0/1 vertices, suppresses degree-2 vertices, splits
into connected components (genus adds over components), and runs iterative
deepening on the merge budget starting from the Euler bound.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import networkx as nx

from .graphs import SimpleGraph

DEFAULT_NODE_BUDGET = 100_000_000
DEFAULT_TIME_BUDGET_MS = 300_000

RotationSystem = tuple  # per-vertex tuples of neighbor indices in cyclic order


class BudgetExceeded(Exception):
    """Raised internally when the node or time budget runs out."""


class EmbeddingError(ValueError):
    """A rotation system that does not cover the graph's edge-ends."""


@dataclass(frozen=True)
class GenusResult:
    """An interval [lower, upper] on the genus.

    status is "exact" (lower == upper, search completed), "budget_exhausted"
    (bounds as far as the budget allowed; upper is None when not even a
    first embedding was finished), or "bounded" for bound-only results
    produced without a completed search.  ``witness`` is a rotation system
    achieving ``upper`` whenever one is known.
    """

    lower: int
    upper: int | None
    status: str
    witness: RotationSystem | None = None
    nodes: int = 0

    @property
    def exact(self) -> bool:
        return self.status == "exact"


def genus_formula_complete(n: int) -> int:
    """ceil((n-3)(n-4)/12), the genus of the complete graph on n >= 3 vertices."""
    if n < 3:
        raise ValueError("complete-graph genus formula needs n >= 3")
    return ((n - 3) * (n - 4) + 11) // 12


def genus_formula_bipartite(m: int, n: int) -> int:
    """ceil((m-2)(n-2)/4), the genus of K_{m,n} for m, n >= 2; symmetric."""
    if m < 2 or n < 2:
        raise ValueError("bipartite genus formula needs m, n >= 2")
    return ((m - 2) * (n - 2) + 3) // 4


def _adjacency_dict(g: SimpleGraph) -> dict[int, set[int]]:
    adj = {v: set() for v in range(g.n_vertices)}
    for u, v in g.edges:
        adj[u].add(v)
        adj[v].add(u)
    return adj


def _components(adj: dict[int, set[int]]) -> list[list[int]]:
    seen = set()
    comps = []
    for v in sorted(adj):
        if v in seen:
            continue
        comp = []
        stack = [v]
        seen.add(v)
        while stack:
            u = stack.pop()
            comp.append(u)
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def _component_euler_bound(verts, adj) -> int:
    nv = len(verts)
    ne = sum(len(adj[v]) for v in verts) // 2
    if nv < 3 or ne < 3:
        return 0
    triangle = any(
        adj[u] & adj[v]
        for u in verts
        for v in adj[u]
        if u < v
    )
    if triangle:
        return max(0, -(-(ne - 3 * nv + 6) // 6))
    return max(0, -(-(ne - 2 * nv + 4) // 4))


def euler_lower_bound(g: SimpleGraph) -> int:
    """Sum of per-component Euler-formula bounds: ceil((E-3V+6)/6), or
    ceil((E-2V+4)/4) on triangle-free components; 0 for small components."""
    adj = _adjacency_dict(g)
    return sum(_component_euler_bound(c, adj) for c in _components(adj))


def is_planar(g: SimpleGraph) -> bool:
    """LR planarity test (networkx); must agree with the exact solver at genus 0."""
    G = nx.Graph()
    G.add_nodes_from(range(g.n_vertices))
    G.add_edges_from(g.edges)
    ok, _ = nx.check_planarity(G, counterexample=False)
    return ok


def planar_rotation(g: SimpleGraph) -> RotationSystem | None:
    """A rotation system realizing a planar embedding, or None if non-planar."""
    G = nx.Graph()
    G.add_nodes_from(range(g.n_vertices))
    G.add_edges_from(g.edges)
    ok, emb = nx.check_planarity(G)
    if not ok:
        return None
    data = emb.get_data()
    return tuple(tuple(data.get(v, [])) for v in range(g.n_vertices))


def verify_embedding(g: SimpleGraph, rotation) -> int:
    """Trace the faces of a rotation system and return the embedding genus.

    The rotation must list, for every vertex, exactly its neighbors in some
    cyclic order.  Genus comes from Euler's formula per connected component;
    a non-integer or negative outcome is reported as an inconsistency.
    """
    n = g.n_vertices
    if len(rotation) != n:
        raise EmbeddingError(f"rotation covers {len(rotation)} vertices, graph has {n}")
    adj = _adjacency_dict(g)
    pos = []
    for v in range(n):
        cyc = tuple(rotation[v])
        if sorted(cyc) != sorted(adj[v]):
            raise EmbeddingError(f"rotation at vertex {v} does not match its neighbors")
        pos.append({u: k for k, u in enumerate(cyc)})

    unseen = set()
    for u, v in g.edges:
        unseen.add((u, v))
        unseen.add((v, u))
    faces_in = {v: 0 for v in range(n)}
    while unseen:
        d = min(unseen)
        start = d
        while True:
            unseen.discard(d)
            u, v = d
            cyc = rotation[v]
            d = (v, cyc[(pos[v][u] + 1) % len(cyc)])
            if d == start:
                break
        faces_in[start[0]] += 1

    total = 0
    for comp in _components(adj):
        nv = len(comp)
        ne = sum(len(adj[v]) for v in comp) // 2
        nf = sum(faces_in[v] for v in comp) if ne else 1
        chi = nv - ne + nf
        if chi % 2 or chi > 2:
            raise EmbeddingError(f"face tracing gave Euler characteristic {chi} "
                                 f"on a component with {nv} vertices")
        total += (2 - chi) // 2
    return total


def rotation_to_json(rotation) -> list:
    return [list(row) for row in rotation]


# ---------------------------------------------------------------------------
# Exact search


class _Budget:
    __slots__ = ("limit", "deadline", "nodes")

    def __init__(self, node_limit, time_ms):
        self.limit = node_limit
        self.deadline = None if time_ms is None else time.monotonic() + time_ms / 1000.0
        self.nodes = 0

    def spend(self):
        self.nodes += 1
        if self.limit is not None and self.nodes > self.limit:
            raise BudgetExceeded
        if self.deadline is not None and self.nodes % 256 == 0:
            if time.monotonic() > self.deadline:
                raise BudgetExceeded


def _reduce(adj: dict[int, set[int]]):
    """Genus-preserving reductions, recorded for witness reconstruction.

    Removes isolated and pendant vertices, and suppresses a degree-2 vertex
    whenever its two neighbors are distinct and not already adjacent.
    """
    adj = {v: set(s) for v, s in adj.items()}
    records = []
    changed = True
    while changed:
        changed = False
        shrinking = True
        while shrinking:
            shrinking = False
            for v in sorted(adj):
                deg = len(adj[v])
                if deg == 0:
                    records.append(("isolated", v))
                    del adj[v]
                    shrinking = True
                elif deg == 1:
                    (p,) = adj[v]
                    records.append(("leaf", v, p))
                    adj[p].discard(v)
                    del adj[v]
                    shrinking = True
        for v in sorted(adj):
            if len(adj[v]) == 2:
                a, b = sorted(adj[v])
                if b not in adj[a]:
                    records.append(("suppress", v, a, b))
                    adj[a].discard(v)
                    adj[b].discard(v)
                    del adj[v]
                    adj[a].add(b)
                    adj[b].add(a)
                    changed = True
                    break
    return adj, records


def _restore_rotation(rot: dict[int, list[int]], records) -> dict[int, list[int]]:
    for rec in reversed(records):
        if rec[0] == "isolated":
            rot[rec[1]] = []
        elif rec[0] == "leaf":
            _, v, p = rec
            rot[p].append(v)
            rot[v] = [p]
        else:
            _, v, a, b = rec
            rot[a][rot[a].index(b)] = v
            rot[b][rot[b].index(a)] = v
            rot[v] = [a, b]
    return rot


def _connected_edge_order(verts, adj):
    """BFS edge order: spanning-tree edges first (each attaching a new
    vertex), then the remaining edges keyed to complete early vertices first."""
    degs = {v: len(adj[v]) for v in verts}
    root = min(verts, key=lambda v: (-degs[v], v))
    order = {root: 0}
    queue = [root]
    tree = []
    head = 0
    while head < len(queue):
        v = queue[head]
        head += 1
        for w in sorted(adj[v], key=lambda w: (-degs[w], w)):
            if w not in order:
                order[w] = len(order)
                queue.append(w)
                tree.append((v, w))
    cotree = []
    tree_set = {(min(a, b), max(a, b)) for a, b in tree}
    for v in sorted(verts):
        for w in sorted(adj[v]):
            if v < w and (v, w) not in tree_set:
                cotree.append((v, w))
    cotree.sort(key=lambda e: (max(order[e[0]], order[e[1]]),
                               min(order[e[0]], order[e[1]])))
    oriented = [
        (u, v) if order[u] < order[v] else (v, u)
        for u, v in cotree
    ]
    return tree + oriented


class _EmbeddingSearch:
    """Backtracking over corner insertions for a fixed ordered edge list.

    The edge list may span several components; each component's first edge
    opens a fresh face.  ``run`` returns (rotation, genus) for the first
    embedding found with at most ``target`` face merges, or (None, None).
    """

    def __init__(self, vert_ids, edges, budget):
        self.ids = list(vert_ids)
        local = {v: i for i, v in enumerate(self.ids)}
        self.edges = [(local[u], local[v]) for u, v in edges]
        self.head = []
        for u, v in self.edges:
            self.head.extend((v, u))
        ne = len(self.edges)
        self.rot_next = [-1] * (2 * ne)
        self.face = [-1] * (2 * ne)
        self.darts_at = [[] for _ in self.ids]
        self.budget = budget
        self.genus_used = 0
        self.next_face = 0
        self.target = 0
        self.solution = None
        self.solution_genus = None

    def run(self, target):
        self.target = float("inf") if target is None else target
        self.genus_used = 0
        self.next_face = 0
        for i in range(len(self.rot_next)):
            self.rot_next[i] = -1
            self.face[i] = -1
        for lst in self.darts_at:
            lst.clear()
        self.solution = None
        self.solution_genus = None
        if self._place(0):
            return self.solution, self.solution_genus
        return None, None

    def _extract(self):
        rot = {}
        rot_next = self.rot_next
        head = self.head
        for i, v in enumerate(self.ids):
            lst = self.darts_at[i]
            if not lst:
                rot[v] = []
                continue
            start = lst[0]
            cyc = []
            d = start
            while True:
                cyc.append(self.ids[head[d]])
                d = rot_next[d]
                if d == start:
                    break
            rot[v] = cyc
        return rot

    def _place(self, ei):
        if ei == len(self.edges):
            self.solution = self._extract()
            self.solution_genus = self.genus_used
            return True
        u, v = self.edges[ei]
        a = 2 * ei
        b = a + 1
        rot = self.rot_next
        face = self.face
        du = self.darts_at[u]
        dv = self.darts_at[v]
        spend = self.budget.spend

        if not du and not dv:
            # Opening edge of a component: a two-sided single face.
            spend()
            rot[a] = a
            rot[b] = b
            f = self.next_face
            self.next_face += 1
            face[a] = f
            face[b] = f
            du.append(a)
            dv.append(b)
            if self._place(ei + 1):
                return True
            du.pop()
            dv.pop()
            rot[a] = rot[b] = -1
            face[a] = face[b] = -1
            self.next_face -= 1
            return False

        if not dv:
            # Pendant insertion: v is new; the chosen corner's face absorbs
            # both darts, so the face count is unchanged.
            for x in tuple(du):
                spend()
                sx = rot[x]
                rot[x] = a
                rot[a] = sx
                rot[b] = b
                f = face[x ^ 1]
                face[a] = f
                face[b] = f
                du.append(a)
                dv.append(b)
                if self._place(ei + 1):
                    return True
                du.pop()
                dv.pop()
                rot[x] = sx
                rot[a] = rot[b] = -1
                face[a] = face[b] = -1
            return False

        # Both endpoints embedded: same-face corner pairs split (genus kept),
        # cross-face pairs merge (genus + 1, only while budget remains).
        same = []
        diff = []
        for x in du:
            fx = face[x ^ 1]
            for y in dv:
                if face[y ^ 1] == fx:
                    same.append((x, y))
                else:
                    diff.append((x, y))
        for x, y in same:
            spend()
            if self._insert(x, y, a, b, ei, merge=False):
                return True
        if self.genus_used < self.target:
            for x, y in diff:
                spend()
                if self._insert(x, y, a, b, ei, merge=True):
                    return True
        return False

    def _insert(self, x, y, a, b, ei, merge):
        rot = self.rot_next
        face = self.face
        sx = rot[x]
        sy = rot[y]
        rot[x] = a
        rot[a] = sx
        rot[y] = b
        rot[b] = sy
        u, v = self.edges[ei]
        self.darts_at[u].append(a)
        self.darts_at[v].append(b)
        trail = []
        if merge:
            self.genus_used += 1
            f = self.next_face
            self.next_face += 1
            d = a
            while True:
                trail.append((d, face[d]))
                face[d] = f
                d = rot[d ^ 1]
                if d == a:
                    break
        else:
            f1 = self.next_face
            f2 = self.next_face + 1
            self.next_face += 2
            d = a
            while True:
                trail.append((d, face[d]))
                face[d] = f1
                d = rot[d ^ 1]
                if d == a:
                    break
            d = b
            while True:
                trail.append((d, face[d]))
                face[d] = f2
                d = rot[d ^ 1]
                if d == b:
                    break

        if self._place(ei + 1):
            return True

        for d, old in reversed(trail):
            face[d] = old
        self.next_face -= 1 if merge else 2
        if merge:
            self.genus_used -= 1
        self.darts_at[u].pop()
        self.darts_at[v].pop()
        rot[y] = sy
        rot[x] = sx
        rot[a] = rot[b] = -1
        face[a] = face[b] = -1
        return False


def _solve_component(verts, adj, budget):
    """Exact genus of one connected component, or partial bounds on budget stop.

    Returns (lower, upper, rotation, exact).  A cheap unrestricted first
    descent supplies the initial upper bound and witness; iterative
    deepening from the Euler bound then closes the gap.  On budget
    exhaustion the bounds keep whatever the completed rungs proved.
    """
    edges = _connected_edge_order(verts, adj)
    lower = _component_euler_bound(verts, adj)
    rot = None
    upper = None
    try:
        search = _EmbeddingSearch(verts, edges, budget)
        rot, upper = search.run(None)
        if upper <= lower:
            return upper, upper, rot, True
        target = lower
        while target < upper:
            found, g = search.run(target)
            if found is not None:
                return g, g, found, True
            target += 1
            lower = target  # a completed failed rung proves genus >= target
        return upper, upper, rot, True
    except BudgetExceeded:
        return lower, upper, rot, False


def genus_exact(g: SimpleGraph, *, node_budget: int | None = DEFAULT_NODE_BUDGET,
                time_budget_ms: int | None = DEFAULT_TIME_BUDGET_MS,
                threads: int = 1) -> GenusResult:
    """Exact orientable genus with a certifying rotation system.

    Searches component by component after genus-preserving reductions.  When
    the node/time budget runs out the result carries the bounds established
    so far with status "budget_exhausted".  ``threads`` is accepted for
    interface stability; the search itself is single-threaded, so results
    never depend on it.
    """
    budget = _Budget(node_budget, time_budget_ms)
    full_adj = _adjacency_dict(g)
    reduced, records = _reduce(full_adj)
    comps = _components(reduced)

    lowers = []
    uppers = []
    rots = {}
    all_exact = True
    for k, comp in enumerate(comps):
        lo, up, rot, exact = _solve_component(comp, reduced, budget)
        lowers.append(lo)
        uppers.append(up)
        if rot is not None:
            rots[k] = rot
        if not exact:
            all_exact = False

    lower = sum(lowers)
    upper = sum(uppers) if all(u is not None for u in uppers) else None

    witness = None
    if upper is not None and len(rots) == len(comps):
        combined: dict[int, list[int]] = {}
        for rot in rots.values():
            combined.update(rot)
        combined = _restore_rotation(combined, records)
        witness = tuple(tuple(combined.get(v, ())) for v in range(g.n_vertices))
        achieved = verify_embedding(g, witness)
        if achieved != upper:
            raise RuntimeError(
                f"internal error: reconstructed witness has genus {achieved}, "
                f"expected {upper}"
            )

    status = "exact" if all_exact else "budget_exhausted"
    if status == "exact":
        lower = upper
    return GenusResult(lower=lower, upper=upper, status=status,
                       witness=witness, nodes=budget.nodes)


def _genus_exact_whole(g: SimpleGraph, *, node_budget=DEFAULT_NODE_BUDGET,
                       time_budget_ms=DEFAULT_TIME_BUDGET_MS) -> GenusResult:
    """Exact genus without reductions or component decomposition.

    One search over the whole (possibly disconnected) graph; used to
    cross-check that genus is additive over components.
    """
    budget = _Budget(node_budget, time_budget_ms)
    adj = _adjacency_dict(g)
    comps = _components(adj)
    edges = []
    isolated = []
    for comp in comps:
        if len(comp) == 1:
            isolated.extend(comp)
            continue
        edges.extend(_connected_edge_order(comp, adj))
    verts = [v for comp in comps for v in comp if len(comp) > 1]
    lower = sum(_component_euler_bound(c, adj) for c in comps)
    try:
        search = _EmbeddingSearch(verts, edges, budget)
        best, upper = search.run(None)
        target = lower
        while target < upper:
            found, gg = search.run(target)
            if found is not None:
                upper = gg
                best = found
                break
            target += 1
    except BudgetExceeded:
        return GenusResult(lower, None, "budget_exhausted", nodes=budget.nodes)
    for v in isolated:
        best[v] = []
    witness = tuple(tuple(best.get(v, ())) for v in range(g.n_vertices))
    return GenusResult(upper, upper, "exact", witness, nodes=budget.nodes)
