"""Graphs, cycle families and the signed cycle counters nu1 / nu2.

Edges carry a reference orientation from the lower vertex id to the higher
one. Functions that take an edge accept either its integer id or a vertex
pair; a pair ``(u, v)`` is read as the oriented edge ``u -> v``, which is how
callers flip a reference orientation.

nu1(A, B, E), with A and B sharing a vertex v: each cycle containing A, B and
E is oriented so it runs along A into v and leaves v along B; it contributes
+1 if it then traverses E along E's orientation, -1 otherwise.

nu2(A, B; E, F), with {A, B} and {E, F} pairs of non-adjacent edges: a cycle
containing all four contributes when E and F fall in different arcs of the
cycle once A and B are cut out. The contribution is the product of the
traversal signs of E and F, which does not depend on how the cycle is
oriented. nu2 is therefore n3 - n4, the count of cycles with product +1 minus
those with product -1.
"""

from __future__ import annotations

import csv
import json
from collections import defaultdict
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence, Union

EdgeArg = Union[int, tuple[int, int]]


@dataclass(frozen=True)
class Graph:
    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        seen = set()
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u}, {v}) out of range")
            if u > v:
                raise ValueError("edges must be stored as (lo, hi)")
            if (u, v) in seen:
                raise ValueError(f"multi-edge ({u}, {v})")
            seen.add((u, v))
        object.__setattr__(self, "_index", {e: i for i, e in enumerate(self.edges)})
        adj = [set() for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        object.__setattr__(self, "_adj", tuple(frozenset(a) for a in adj))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        return cls(n, tuple(sorted((min(u, v), max(u, v)) for u, v in edges)))

    def neighbors(self, v: int) -> frozenset:
        return self._adj[v]

    def edge_id(self, u: int, v: int) -> int:
        try:
            return self._index[(min(u, v), max(u, v))]
        except KeyError:
            raise KeyError(f"no edge between {u} and {v}") from None

    def oriented(self, e: EdgeArg) -> tuple[int, int, int]:
        """Normalize an edge argument to ``(edge_id, tail, head)``."""
        if isinstance(e, int):
            u, v = self.edges[e]
            return e, u, v
        u, v = e
        return self.edge_id(u, v), u, v

    def adjacent(self, e: int, f: int) -> bool:
        return bool(set(self.edges[e]) & set(self.edges[f]))

    @property
    def is_complete(self) -> bool:
        return len(self.edges) == self.n * (self.n - 1) // 2

    def cycle(self, vertices: Sequence[int]) -> "Cycle":
        return Cycle.make(self, vertices)

    def edge_label(self, e: int) -> str:
        u, v = self.edges[e]
        return f"{u}-{v}"


def complete_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("complete_graph needs n >= 3")
    return Graph(n, tuple(combinations(range(n), 2)))


@dataclass(frozen=True)
class Cycle:
    """Simple cycle in canonical form: least vertex first, second < last."""

    vertices: tuple[int, ...]
    edges: tuple[int, ...]  # edges[i] joins vertices[i] and vertices[i + 1]
    mask: int

    @classmethod
    def make(cls, graph: Graph, vertices: Sequence[int]) -> "Cycle":
        vs = canonical_cycle(vertices)
        edges = tuple(graph.edge_id(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs)))
        mask = 0
        for e in edges:
            mask |= 1 << e
        return cls(vs, edges, mask)

    def __len__(self):
        return len(self.vertices)

    def contains(self, *edge_ids: int) -> bool:
        return all(self.mask >> e & 1 for e in edge_ids)

    def directions(self) -> tuple[int, ...]:
        """+1 where the canonical traversal follows the edge's reference."""
        vs = self.vertices
        return tuple(1 if vs[i] < vs[(i + 1) % len(vs)] else -1 for i in range(len(vs)))


def canonical_cycle(vertices: Sequence[int]) -> tuple[int, ...]:
    vs = list(vertices)
    if len(vs) < 3 or len(set(vs)) != len(vs):
        raise ValueError(f"not a simple cycle: {vertices}")
    i = vs.index(min(vs))
    vs = vs[i:] + vs[:i]
    if vs[1] > vs[-1]:
        vs = [vs[0]] + vs[:0:-1]
    return tuple(vs)


@dataclass
class CycleFamily:
    graph: Graph
    cycles: list[Cycle]
    tag: str = "custom"

    def __post_init__(self):
        keys = [c.vertices for c in self.cycles]
        if len(set(keys)) != len(keys):
            raise ValueError("duplicate cycles in family")

    def __len__(self):
        return len(self.cycles)

    def __iter__(self):
        return iter(self.cycles)

    def __add__(self, other: "CycleFamily") -> "CycleFamily":
        return CycleFamily(self.graph, self.cycles + other.cycles, "custom")

    @classmethod
    def from_vertex_lists(cls, graph: Graph, seqs, tag: str = "custom") -> "CycleFamily":
        return cls(graph, [graph.cycle(s) for s in seqs], tag)

    def to_json(self) -> str:
        return json.dumps([list(c.vertices) for c in self.cycles])

    @classmethod
    def from_json(cls, graph: Graph, text: str, tag: str = "custom") -> "CycleFamily":
        return cls.from_vertex_lists(graph, json.loads(text), tag)


def hamiltonian_cycles(graph: Graph) -> CycleFamily:
    """All Hamiltonian cycles up to rotation and reflection, by backtracking."""
    n = graph.n
    found = []
    path = [0]
    used = [False] * n
    used[0] = True

    def extend():
        last = path[-1]
        if len(path) == n:
            if 0 in graph.neighbors(last) and path[1] < path[-1]:
                found.append(tuple(path))
            return
        for w in sorted(graph.neighbors(last)):
            if not used[w]:
                used[w] = True
                path.append(w)
                extend()
                path.pop()
                used[w] = False

    if n >= 3:
        extend()
    return CycleFamily(graph, [graph.cycle(p) for p in found], "hamiltonian")


# -- nu1 / nu2 ----------------------------------------------------------------

def _traversal_sign(cycle: Cycle, eid: int, tail: int, head: int) -> int:
    """+1 if the canonical traversal of ``cycle`` runs ``tail -> head``."""
    vs = cycle.vertices
    i = cycle.edges.index(eid)
    return 1 if (vs[i], vs[(i + 1) % len(vs)]) == (tail, head) else -1


def nu1(family: CycleFamily, A: EdgeArg, B: EdgeArg, E: EdgeArg) -> int:
    g = family.graph
    a, _, _ = g.oriented(A)
    b, _, _ = g.oriented(B)
    e, et, eh = g.oriented(E)
    shared = set(g.edges[a]) & set(g.edges[b])
    if a == b or len(shared) != 1:
        raise ValueError("nu1 needs two distinct adjacent edges A, B")
    if e in (a, b):
        raise ValueError("E must differ from A and B")
    (v,) = shared
    (a_end,) = set(g.edges[a]) - {v}
    total = 0
    for cyc in family.cycles:
        if not cyc.contains(a, b, e):
            continue
        vs = cyc.vertices
        i = vs.index(v)
        # canonical traversal enters v from vs[i-1]; flip if that is not A
        orient = 1 if vs[i - 1] == a_end else -1
        total += orient * _traversal_sign(cyc, e, et, eh)
    return total


def _check_nonadjacent_quad(g: Graph, a, b, e, f):
    if len({a, b, e, f}) != 4:
        raise ValueError("nu2 needs four distinct edges")
    if g.adjacent(a, b):
        raise ValueError("A and B must be non-adjacent")
    if g.adjacent(e, f):
        raise ValueError("E and F must be non-adjacent")


def _separated(cycle: Cycle, a: int, b: int, e: int, f: int) -> bool:
    pos = {eid: i for i, eid in enumerate(cycle.edges)}
    lo, hi = sorted((pos[a], pos[b]))
    return (lo < pos[e] < hi) != (lo < pos[f] < hi)


def nu2(family: CycleFamily, A: EdgeArg, B: EdgeArg, E: EdgeArg, F: EdgeArg) -> int:
    g = family.graph
    a, _, _ = g.oriented(A)
    b, _, _ = g.oriented(B)
    e, et, eh = g.oriented(E)
    f, ft, fh = g.oriented(F)
    _check_nonadjacent_quad(g, a, b, e, f)
    total = 0
    for cyc in family.cycles:
        if cyc.contains(a, b, e, f) and _separated(cyc, a, b, e, f):
            total += _traversal_sign(cyc, e, et, eh) * _traversal_sign(cyc, f, ft, fh)
    return total


def n3_n4(family: CycleFamily, A: EdgeArg, B: EdgeArg, E: EdgeArg, F: EdgeArg) -> tuple[int, int]:
    """Counts of separating cycles with sign product +1 and -1."""
    g = family.graph
    a, _, _ = g.oriented(A)
    b, _, _ = g.oriented(B)
    e, et, eh = g.oriented(E)
    f, ft, fh = g.oriented(F)
    _check_nonadjacent_quad(g, a, b, e, f)
    n3 = n4 = 0
    for cyc in family.cycles:
        if cyc.contains(a, b, e, f) and _separated(cyc, a, b, e, f):
            if _traversal_sign(cyc, e, et, eh) * _traversal_sign(cyc, f, ft, fh) > 0:
                n3 += 1
            else:
                n4 += 1
    return n3, n4


@dataclass
class NuReport:
    """Every nu1 / nu2 value of a cycle family, with the moduli checked.

    nu1 keys are ``(A, B, E)`` with ``A < B`` (swapping A and B negates the
    value); nu2 keys are ``((A, B), (E, F))`` with ``A < B`` and ``E < F``.
    """

    graph: Graph
    n: int
    nu1: dict[tuple[int, int, int], int]
    nu2: dict[tuple[tuple[int, int], tuple[int, int]], int]
    violations: list[tuple] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return not self.violations

    @property
    def verdict(self) -> str:
        return "hold" if self.holds else "fail"

    def rows(self):
        g = self.graph
        for (a, b, e), val in sorted(self.nu1.items()):
            m = self.n
            yield ("nu1", g.edge_label(a), g.edge_label(b), g.edge_label(e), "", val, m, val % m, val % m == 0)
        for ((a, b), (e, f)), val in sorted(self.nu2.items()):
            m = 2 * self.n
            yield ("nu2", g.edge_label(a), g.edge_label(b), g.edge_label(e), g.edge_label(f), val, m, val % m, val % m == 0)

    def write_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["kind", "edge1", "edge2", "edge3", "edge4", "value", "modulus", "residue", "ok"])
            w.writerows(self.rows())


def nu_audit(graph: Graph, family: CycleFamily, n: int) -> NuReport:
    """Evaluate nu1 mod n and nu2 mod 2n over every admissible edge tuple.

    Cycle-major: each cycle is visited once and adds its contribution to
    every tuple it touches, so the cost is linear in the family size.
    """
    if n < 2:
        raise ValueError("modulus must be >= 2")
    nu1_vals: dict = {}
    nu2_vals: dict = {}
    m = len(graph.edges)
    for a in range(m):
        for b in range(a + 1, m):
            if graph.adjacent(a, b):
                for e in range(m):
                    if e != a and e != b:
                        nu1_vals[(a, b, e)] = 0
    nonadj = [(a, b) for a, b in combinations(range(m), 2) if not graph.adjacent(a, b)]
    for p in nonadj:
        for q in nonadj:
            if not set(p) & set(q):
                nu2_vals[(p, q)] = 0

    acc1 = defaultdict(int)
    acc2 = defaultdict(int)
    for cyc in family.cycles:
        es = cyc.edges
        dirs = cyc.directions()
        L = len(es)
        for i in range(L):
            # consecutive edges es[i-1], es[i] meet at vertices[i]
            p, q = es[i - 1], es[i]
            # canonical traversal runs p into the shared vertex then q; the
            # key stores (min, max) so flip when p is the larger id
            orient = 1 if p < q else -1
            key_ab = (min(p, q), max(p, q))
            for k in range(L):
                if k != i and k != (i - 1) % L:
                    acc1[(key_ab[0], key_ab[1], es[k])] += orient * dirs[k]
        for i in range(L):
            for j in range(i + 2, L):
                if i == 0 and j == L - 1:
                    continue
                key_ab = (min(es[i], es[j]), max(es[i], es[j]))
                inner = range(i + 1, j)
                outer = [k for k in range(L) if k < i or k > j]
                for x in inner:
                    for y in outer:
                        ef = (min(es[x], es[y]), max(es[x], es[y]))
                        acc2[(key_ab, ef)] += dirs[x] * dirs[y]
    for k, v in acc1.items():
        nu1_vals[k] = v
    for k, v in acc2.items():
        nu2_vals[k] = v

    violations = []
    for k, v in sorted(nu1_vals.items()):
        if v % n:
            violations.append(("nu1", k, v))
    for k, v in sorted(nu2_vals.items()):
        if v % (2 * n):
            violations.append(("nu2", k, v))
    return NuReport(graph, n, nu1_vals, nu2_vals, violations)
