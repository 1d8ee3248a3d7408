"""Labeled constructible graphs, the shifting operator, compression and
triangle counts.

A constructible graph starts from a K4 whose edges carry label 0, then grows
by adding a vertex v of type 3 or 4 joined to existing vertices by edges
labeled v, or by adding an unlabeled edge between existing vertices.
"""

from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import NamedTuple

import numpy as np

from .complex import SimpleGraph
from .errors import InvalidArguments, NotCompressed, NotConstructible, PreconditionViolation
from .kernels import count_triangles


def _edge(u, v):
    return (u, v) if u < v else (v, u)


def revlex_edge_key(e):
    return (e[1], e[0])


@dataclass(frozen=True)
class LabeledGraph:
    """``order`` lists vertices in creation order; ``types`` maps created
    vertices to 3 or 4; ``labels`` maps each sorted edge to its label, with
    None meaning unlabeled."""

    order: tuple
    types: dict = field(default_factory=dict)
    labels: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "order", tuple(self.order))
        vs = set(self.order)
        if len(vs) != len(self.order):
            raise ValueError("repeated vertex in creation order")
        clean = {}
        for (u, v), lab in self.labels.items():
            if u == v:
                raise ValueError(f"loop at {u}")
            if u not in vs or v not in vs:
                raise ValueError(f"edge {(u, v)} uses an unknown vertex")
            clean[_edge(u, v)] = lab
        object.__setattr__(self, "labels", clean)
        object.__setattr__(self, "types", dict(self.types))

    __hash__ = None

    @property
    def edges(self) -> frozenset:
        return frozenset(self.labels)

    @property
    def n(self) -> int:
        return len(self.order)

    def simple(self) -> SimpleGraph:
        return SimpleGraph(tuple(sorted(self.order)), self.edges)

    def neighbors(self, v) -> set:
        out = set()
        for a, b in self.labels:
            if a == v:
                out.add(b)
            elif b == v:
                out.add(a)
        return out

    def degree(self, v) -> int:
        return len(self.neighbors(v))

    def position(self, v) -> int:
        """1-based creation position."""
        return self.order.index(v) + 1

    def unlabeled_edges(self) -> list:
        return sorted((e for e, lab in self.labels.items() if lab is None), key=revlex_edge_key)

    def count_types(self):
        """(number of type-3, number of type-4) vertices."""
        ts = list(self.types.values())
        return ts.count(3), ts.count(4)

    def invariant_violations(self) -> list:
        """Breaches of the labeling rules; empty for a well-formed graph."""
        out = []
        vs = set(self.order)
        own = {}
        zero = []
        for e, lab in self.labels.items():
            if lab is None:
                continue
            if lab == 0:
                zero.append(e)
            elif lab not in vs:
                out.append(f"edge {e} labeled by missing vertex {lab}")
            elif lab not in e:
                out.append(f"edge {e} labeled {lab} is not incident to it")
            else:
                own[lab] = own.get(lab, 0) + 1
        for v, t in self.types.items():
            if t not in (3, 4):
                out.append(f"vertex {v} has type {t}")
            if own.get(v, 0) != t:
                out.append(f"vertex {v} of type {t} has {own.get(v, 0)} own-labeled edges")
        zv = sorted({x for e in zero for x in e})
        if len(zero) != 6 or len(zv) != 4:
            out.append("edges labeled 0 do not form a K4")
        return out


def shift(g: SimpleGraph, i, j) -> SimpleGraph:
    """S_{i,j}: move each edge at j over to i unless the target already exists."""
    if i == j:
        raise InvalidArguments("shift needs two distinct vertices")
    if i not in g.vertices or j not in g.vertices:
        raise InvalidArguments(f"vertices {i}, {j} must belong to the graph")
    old = set(g.edges)
    new = set()
    for e in old:
        if j in e and i not in e:
            other = e[0] if e[1] == j else e[1]
            target = _edge(other, i)
            if target not in old:
                new.add(target)
                continue
        new.add(e)
    return SimpleGraph(g.vertices, frozenset(new))


def adjacency_matrix(g) -> np.ndarray:
    if isinstance(g, LabeledGraph):
        g = g.simple()
    idx = {v: k for k, v in enumerate(g.vertices)}
    a = np.zeros((len(idx), len(idx)), dtype=np.uint8)
    for u, v in g.edges:
        a[idx[u], idx[v]] = a[idx[v], idx[u]] = 1
    return a


def triangle_count(g) -> int:
    return count_triangles(adjacency_matrix(g))


def triangles(g) -> list:
    """All 3-cliques, ascending by (max, mid, min)."""
    if isinstance(g, LabeledGraph):
        g = g.simple()
    adj = {v: set() for v in g.vertices}
    for u, v in g.edges:
        adj[u].add(v)
        adj[v].add(u)
    out = [t for t in combinations(sorted(g.vertices), 3) if t[1] in adj[t[0]] and t[2] in adj[t[0]] and t[2] in adj[t[1]]]
    return sorted(out, key=lambda t: (t[2], t[1], t[0]))


class Step(NamedTuple):
    """One deconstruction move: ('edge', (i, j)) or ('vertex', v)."""

    kind: str
    item: object


class Deconstruction(NamedTuple):
    ok: bool
    steps: tuple
    reason: str = ""

    def __bool__(self):
        return self.ok


def is_constructible(g: LabeledGraph) -> Deconstruction:
    """Greedy deconstruction: drop every unlabeled edge, then peel vertices
    whose edges all carry their own label, then check for a 0-labeled K4.

    Peeling is confluent (removing a peelable vertex never blocks another),
    so greedy failure means no deconstruction exists.
    """
    bad = g.invariant_violations()
    if bad:
        return Deconstruction(False, (), bad[0])
    steps = [Step("edge", e) for e in g.unlabeled_edges()]
    labels = {e: lab for e, lab in g.labels.items() if lab is not None}
    alive = list(g.order)
    progress = True
    while progress:
        progress = False
        # newest first keeps the certificate close to the reverse creation order
        for v in reversed(alive):
            inc = [e for e in labels if v in e]
            if len(inc) in (3, 4) and all(labels[e] == v for e in inc):
                if g.types.get(v, len(inc)) != len(inc):
                    continue
                for e in inc:
                    del labels[e]
                alive.remove(v)
                steps.append(Step("vertex", v))
                progress = True
                break
    if len(alive) != 4 or len(labels) != 6 or any(lab != 0 for lab in labels.values()):
        return Deconstruction(False, tuple(steps), f"stuck with {len(alive)} vertices and {len(labels)} labeled edges")
    if set(x for e in labels for x in e) != set(alive):
        return Deconstruction(False, tuple(steps), "leftover edges do not form a K4")
    return Deconstruction(True, tuple(steps))


def replay_certificate(g: LabeledGraph, steps) -> bool:
    """Check that ``steps`` is a legal deconstruction of ``g`` down to a 0-labeled K4."""
    labels = dict(g.labels)
    alive = set(g.order)
    for kind, item in steps:
        if kind == "edge":
            e = _edge(*item)
            if labels.get(e, 0) is not None or e not in labels:
                return False
            del labels[e]
        elif kind == "vertex":
            v = item
            inc = [e for e in labels if v in e]
            if v not in alive or len(inc) not in (3, 4) or any(labels[e] != v for e in inc):
                return False
            for e in inc:
                del labels[e]
            alive.discard(v)
        else:
            return False
    return len(alive) == 4 and len(labels) == 6 and all(lab == 0 for lab in labels.values()) and {
        x for e in labels for x in e
    } == alive


def canonical_graph(n_b: int, n_a: int, n_e: int) -> LabeledGraph:
    """The compressed graph with the given move counts."""
    order = list(range(1, 5 + n_b + n_a))
    labels = {e: 0 for e in combinations(range(1, 5), 2)}
    types = {}
    for v in range(5, 5 + n_b):
        types[v] = 4
        labels.update({(i, v): v for i in range(1, 5)})
    for v in range(5 + n_b, 5 + n_b + n_a):
        types[v] = 3
        labels.update({(i, v): v for i in range(1, 4)})
    n = len(order)
    added = 0
    for j in range(2, n + 1):
        for i in range(1, j):
            if added == n_e:
                break
            if (i, j) not in labels:
                labels[(i, j)] = None
                added += 1
    if added < n_e:
        raise PreconditionViolation(f"only {added} missing edges available, {n_e} requested")
    return LabeledGraph(tuple(order), types, labels)


def compress(g: LabeledGraph) -> LabeledGraph:
    cert = is_constructible(g)
    if not cert:
        raise NotConstructible(cert.reason)
    a, b = g.count_types()
    return canonical_graph(b, a, len(g.unlabeled_edges()))


def rebalance_unlabeled(g: LabeledGraph, u, v, p: int) -> LabeledGraph:
    """Move unlabeled edges from u to v inside the initial clique of size p."""
    clique = g.order[:p]
    for x, y in combinations(clique, 2):
        if _edge(x, y) not in g.labels:
            raise PreconditionViolation(f"the first {p} vertices are not a clique")
    nu, nv = g.neighbors(u), g.neighbors(v)
    cs = set(clique)
    if not nu <= cs or not nv <= cs:
        raise PreconditionViolation("neighborhoods must lie in the clique")
    if v in nu or u == v:
        raise PreconditionViolation("u and v must be distinct and nonadjacent")
    if len(nu) > len(nv):
        raise PreconditionViolation("need deg(u) <= deg(v)")
    k = min(len(nu) - g.types.get(u, len(nu)), p - len(nv))
    movable = sorted((x for x in nu if g.labels[_edge(u, x)] is None), key=g.position, reverse=True)
    slots = [x for x in clique if x not in nv]
    if k > len(movable):
        raise PreconditionViolation("u has fewer unlabeled edges than required")
    labels = dict(g.labels)
    for x in movable[:k]:
        del labels[_edge(u, x)]
    for x in slots[:k]:
        labels[_edge(v, x)] = None
    return LabeledGraph(g.order, g.types, labels)


def restricted_edge_count(g, W) -> int:
    W = set(W)
    edges = g.labels if isinstance(g, LabeledGraph) else g.edges
    return sum(1 for u, v in edges if u in W and v in W)


class StructureProfile(NamedTuple):
    p: int
    q: int
    a1: int  # type-3 vertices among v5..v_{p+1}
    b1: int  # type-4 vertices among v5..v_{p+1}
    a2: int  # type-3 vertices among v_{p+2}..v_n
    b2: int  # type-4 vertices among v_{p+2}..v_n


def binom(n: int, k: int) -> int:
    if n < 0 or k < 0 or n < k:
        return 0
    return comb(n, k)


def structure_profile(g: LabeledGraph) -> StructureProfile:
    order = g.order
    n = len(order)
    adj = {v: g.neighbors(v) for v in order}

    def fail(msg):
        raise NotCompressed(msg)

    if n < 4 or any(g.labels.get(e) != 0 for e in combinations(order[:4], 2)):
        fail("first four vertices are not a 0-labeled K4")
    ts = [g.types.get(v) for v in order[4:]]
    if any(t not in (3, 4) for t in ts):
        fail("every vertex after the fourth needs type 3 or 4")
    if any(x < y for x, y in zip(ts, ts[1:])):
        fail("types must be nonincreasing from v5 on")
    p = 4
    while p < n and set(order[:p]) <= adj[order[p]]:
        p += 1
    if p < n:
        w = order[p]
        q = len(adj[w])
        if adj[w] != set(order[:q]) or q >= p:
            fail(f"vertex {w} is not joined to an initial segment")
    else:
        q = 0
    for i in range(p + 1, n):
        w = order[i]
        if adj[w] != set(order[: g.types[w]]):
            fail(f"vertex {w} is not joined to exactly the first {g.types[w]} vertices")
    mid = order[4 : min(p + 1, n)]
    tail = order[p + 1 :]
    a1 = sum(1 for v in mid if g.types[v] == 3)
    b1 = len(mid) - a1
    a2 = sum(1 for v in tail if g.types[v] == 3)
    b2 = len(tail) - a2
    prof = StructureProfile(p, q, a1, b1, a2, b2)
    if p < n and p != a1 + b1 + 3:
        fail(f"clique size {p} disagrees with {a1 + b1} middle vertices")
    return prof


def profile_triangles(s: StructureProfile) -> int:
    return binom(s.p, 3) + binom(s.q, 2) + 6 * s.b2 + 3 * s.a2


def profile_eta_e(s: StructureProfile) -> int:
    return binom(s.p, 2) + s.q - 3 * s.a1 - 4 * s.b1 - 6


def dump_graph(g: LabeledGraph) -> str:
    lines = []
    for v in sorted(g.order):
        t = g.types.get(v)
        lines.append(f"v {v}" + (f" {t}" if t is not None else ""))
    for e in sorted(g.labels):
        lab = g.labels[e]
        lines.append(f"e {e[0]} {e[1]}" + (f" {lab}" if lab is not None else ""))
    return "\n".join(lines) + "\n"


def simple_graph(vertices, edges) -> SimpleGraph:
    return SimpleGraph(tuple(sorted(vertices)), frozenset(_edge(*e) for e in edges))

