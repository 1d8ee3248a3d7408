"""PS ear decompositions: base spheres, typed ears, gluing validation, and the
instance-file schema.

Vertex labels of the base spheres are fixed:

* tetrahedron on 1..4;
* bipyramid with axis {4, 5} over the triangle 1-2-3;
* octahedron with non-adjacent pairs {1, 4}, {2, 5}, {3, 6}.
"""

import json
from dataclasses import dataclass
from enum import Enum
from itertools import combinations, product
from typing import ClassVar, NamedTuple, Union

from .complex import HVector, SimplicialComplex, subfaces
from .errors import GluingViolation, ParseError, UnsupportedBase


def _edge(u, v):
    return (u, v) if u < v else (v, u)


def _tri(a, b, c):
    return tuple(sorted((a, b, c)))


class BaseSphere(Enum):
    TETRAHEDRON = "tetrahedron"
    BIPYRAMID = "bipyramid"
    OCTAHEDRON = "octahedron"

    @property
    def n_vertices(self) -> int:
        return {"tetrahedron": 4, "bipyramid": 5, "octahedron": 6}[self.value]

    @property
    def facets(self) -> tuple:
        if self is BaseSphere.TETRAHEDRON:
            return tuple(combinations(range(1, 5), 3))
        if self is BaseSphere.BIPYRAMID:
            return tuple(sorted(_tri(a, *e) for a in (4, 5) for e in ((1, 2), (1, 3), (2, 3))))
        return tuple(sorted(_tri(*t) for t in product((1, 4), (2, 5), (3, 6))))

    @property
    def h(self) -> HVector:
        k = {"tetrahedron": 1, "bipyramid": 2, "octahedron": 3}[self.value]
        return HVector(1, k, k, 1)

    def complex(self) -> SimplicialComplex:
        return SimplicialComplex.from_facets(self.facets)


@dataclass(frozen=True)
class EarA:
    """Cone over a triangle boundary; the apex is a new vertex."""

    apex: int
    cycle: tuple
    kind: ClassVar[str] = "A"
    h_contribution: ClassVar[HVector] = HVector(0, 1, 1, 1)

    def __post_init__(self):
        object.__setattr__(self, "cycle", tuple(self.cycle))
        if len(self.cycle) != 3 or len(set(self.cycle)) != 3:
            raise ValueError(f"A-ear needs 3 distinct cycle vertices, got {self.cycle}")

    def boundary_edges(self):
        c = self.cycle
        return [_edge(c[i], c[(i + 1) % len(c)]) for i in range(len(c))]

    def new_facets(self):
        return [_tri(self.apex, a, b) for a, b in self.boundary_edges()]


@dataclass(frozen=True)
class EarB(EarA):
    """Cone over a 4-cycle; the apex is a new vertex."""

    kind: ClassVar[str] = "B"
    h_contribution: ClassVar[HVector] = HVector(0, 1, 2, 1)

    def __post_init__(self):
        object.__setattr__(self, "cycle", tuple(self.cycle))
        if len(self.cycle) != 4 or len(set(self.cycle)) != 4:
            raise ValueError(f"B-ear needs 4 distinct cycle vertices, got {self.cycle}")


@dataclass(frozen=True)
class EarE:
    """Two triangles sharing the new edge ``chord``; cycle is (u, x, w, y)
    with chord {u, w}."""

    chord: tuple
    cycle: tuple
    kind: ClassVar[str] = "E"
    h_contribution: ClassVar[HVector] = HVector(0, 0, 1, 1)

    def __post_init__(self):
        object.__setattr__(self, "chord", tuple(self.chord))
        object.__setattr__(self, "cycle", tuple(self.cycle))
        if len(self.cycle) != 4 or len(set(self.cycle)) != 4:
            raise ValueError(f"E-ear needs 4 distinct cycle vertices, got {self.cycle}")
        if len(self.chord) == 2 and {self.cycle[1], self.cycle[3]} == set(self.chord):
            # same cycle, written from the other opposite pair
            object.__setattr__(self, "cycle", self.cycle[1:] + self.cycle[:1])
        if len(self.chord) != 2 or {self.cycle[0], self.cycle[2]} != set(self.chord):
            raise ValueError(f"E-ear chord {self.chord} must join cycle entries 1 and 3 of {self.cycle}")

    @property
    def wings(self) -> tuple:
        """The two cycle vertices off the chord."""
        return (self.cycle[1], self.cycle[3])

    def boundary_edges(self):
        c = self.cycle
        return [_edge(c[i], c[(i + 1) % 4]) for i in range(4)]

    def new_facets(self):
        u, w = self.chord
        return [_tri(u, w, x) for x in self.wings]


@dataclass(frozen=True)
class EarF:
    """A single triangle filled along its boundary."""

    face: tuple
    kind: ClassVar[str] = "F"
    h_contribution: ClassVar[HVector] = HVector(0, 0, 0, 1)

    def __post_init__(self):
        object.__setattr__(self, "face", tuple(self.face))
        if len(self.face) != 3 or len(set(self.face)) != 3:
            raise ValueError(f"F-ear needs 3 distinct vertices, got {self.face}")

    def boundary_edges(self):
        a, b, c = self.face
        return [_edge(a, b), _edge(b, c), _edge(a, c)]

    def new_facets(self):
        return [_tri(*self.face)]


Ear = Union[EarA, EarB, EarE, EarF]


@dataclass(frozen=True)
class EarDecomposition:
    base: BaseSphere
    ears: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "ears", tuple(self.ears))

    def prefix(self, k: int) -> "EarDecomposition":
        return EarDecomposition(self.base, self.ears[:k])

    def extended(self, *ears) -> "EarDecomposition":
        return EarDecomposition(self.base, self.ears + tuple(ears))


class EarCounts(NamedTuple):
    a: int = 0
    b: int = 0
    e: int = 0
    f: int = 0


class ComplexBuilder:
    """Mutable complex grown ear by ear, checking the gluing rule each time.

    Internal workhorse of ``realize``; the engine also uses it to query
    missing edges and triangles while it builds compressed complexes.
    """

    def __init__(self, base: BaseSphere):
        self.base = base
        self.n = base.n_vertices
        self.faces = set()
        self.adj = {v: set() for v in range(1, self.n + 1)}
        self.triangles = set()
        for f in base.facets:
            self._add_facet(f)
        self.counts = [0, 0, 0, 0]

    def _add_facet(self, f):
        for g in subfaces(f):
            if g in self.faces:
                continue
            self.faces.add(g)
            if len(g) == 2:
                self.adj.setdefault(g[0], set()).add(g[1])
                self.adj.setdefault(g[1], set()).add(g[0])
            elif len(g) == 3:
                self.triangles.add(g)

    def has_edge(self, u, v) -> bool:
        return v in self.adj.get(u, ())

    def violation(self, ear) -> str:
        """Why ``ear`` cannot be glued next, or '' if it can."""
        if isinstance(ear, EarA):
            if ear.apex != self.n + 1:
                return f"apex {ear.apex} is not the next fresh vertex {self.n + 1}"
        if isinstance(ear, EarF):
            verts = ear.face
        else:
            verts = ear.cycle
        for v in verts:
            if not 1 <= v <= self.n:
                return f"vertex {v} does not exist yet"
        for u, v in ear.boundary_edges():
            if not self.has_edge(u, v):
                return f"boundary edge {(u, v)} is missing"
        if isinstance(ear, EarE):
            if self.has_edge(*ear.chord):
                return f"chord {_edge(*ear.chord)} is already present"
            for t in ear.new_facets():
                if t in self.triangles:
                    return f"triangle {t} is already present"
        if isinstance(ear, EarF):
            if _tri(*ear.face) in self.triangles:
                return f"face {_tri(*ear.face)} is already present"
        return ""

    def add(self, ear, index=None):
        why = self.violation(ear)
        if why:
            raise GluingViolation(index, why)
        if isinstance(ear, EarA):
            self.n += 1
            self.adj[self.n] = set()
        for f in ear.new_facets():
            self._add_facet(f)
        self.counts["ABEF".index(ear.kind)] += 1

    def missing_edges(self):
        """Absent vertex pairs in revlex order: ascending by (max, min)."""
        for j in range(2, self.n + 1):
            for i in range(1, j):
                if j not in self.adj[i]:
                    yield (i, j)

    def missing_triangles(self):
        """Empty 3-cycles of the 1-skeleton, ascending by (max, mid, min)."""
        for k in range(3, self.n + 1):
            nk = self.adj[k]
            for j in range(2, k):
                if j not in nk:
                    continue
                for i in range(1, j):
                    if i in nk and j in self.adj[i] and (i, j, k) not in self.triangles:
                        yield (i, j, k)

    def complex(self) -> SimplicialComplex:
        return SimplicialComplex(frozenset(self.faces))


def realize(dec: EarDecomposition) -> SimplicialComplex:
    return build(dec).complex()


def build(dec: EarDecomposition) -> ComplexBuilder:
    b = ComplexBuilder(dec.base)
    for i, ear in enumerate(dec.ears):
        b.add(ear, i)
    return b


def is_valid(dec: EarDecomposition) -> bool:
    try:
        build(dec)
    except GluingViolation:
        return False
    return True


def ear_counts(dec: EarDecomposition) -> EarCounts:
    c = [0, 0, 0, 0]
    for ear in dec.ears:
        c["ABEF".index(ear.kind)] += 1
    return EarCounts(*c)


def h_from_counts(base: BaseSphere, c: EarCounts) -> HVector:
    h = base.h
    for n, ear_type in zip(c, (EarA, EarB, EarE, EarF)):
        h = h + HVector(*(n * x for x in ear_type.h_contribution))
    return h


def labeled_graph_of(dec: EarDecomposition):
    """Constructible labeled 1-skeleton of a tetrahedron- or bipyramid-based
    decomposition. The bipyramid is read as K4 on 1..4 plus vertex 5 of
    type 3."""
    if dec.base is BaseSphere.OCTAHEDRON:
        raise UnsupportedBase("the octahedron graph contains no K4 and is not constructible")
    return _labeled_graph(dec)


def _labeled_graph(dec: EarDecomposition):
    from .graphs import LabeledGraph

    order = [1, 2, 3, 4]
    types = {}
    labels = {e: 0 for e in combinations(range(1, 5), 2)}
    if dec.base is BaseSphere.BIPYRAMID:
        order.append(5)
        types[5] = 3
        labels.update({(i, 5): 5 for i in (1, 2, 3)})
    elif dec.base is BaseSphere.OCTAHEDRON:
        # base edges carry label 0; the result is not a constructible graph
        order += [5, 6]
        labels = {}
        for f in dec.base.facets:
            for e in combinations(f, 2):
                labels[e] = 0
    for ear in dec.ears:
        if isinstance(ear, EarA):
            order.append(ear.apex)
            types[ear.apex] = len(ear.cycle)
            for c in ear.cycle:
                labels[_edge(c, ear.apex)] = ear.apex
        elif isinstance(ear, EarE):
            labels[_edge(*ear.chord)] = None
    return LabeledGraph(tuple(order), types, labels)


# ---------------------------------------------------------------- schema


def ear_to_dict(ear) -> dict:
    if isinstance(ear, EarA):
        return {"type": ear.kind, "apex": ear.apex, "cycle": list(ear.cycle)}
    if isinstance(ear, EarE):
        return {"type": "E", "chord": list(ear.chord), "cycle": list(ear.cycle)}
    return {"type": "F", "face": list(ear.face)}


def _ints(obj, n, what):
    if not isinstance(obj, list) or len(obj) != n:
        raise ParseError(f"{what} must be a list of {n} integers")
    for x in obj:
        if isinstance(x, bool) or not isinstance(x, int) or x <= 0:
            raise ParseError(f"{what} must contain positive integers, got {x!r}")
    return tuple(obj)


def ear_from_dict(d, index=None) -> Ear:
    where = f"ears[{index}]" if index is not None else "ear"
    if not isinstance(d, dict) or "type" not in d:
        raise ParseError(f"{where}: expected an object with a 'type' field")
    kind = d["type"]
    try:
        if kind in ("A", "B"):
            apex = _ints([d.get("apex")], 1, f"{where}.apex")[0]
            cyc = _ints(d.get("cycle"), 3 if kind == "A" else 4, f"{where}.cycle")
            return (EarA if kind == "A" else EarB)(apex, cyc)
        if kind == "E":
            return EarE(_ints(d.get("chord"), 2, f"{where}.chord"), _ints(d.get("cycle"), 4, f"{where}.cycle"))
        if kind == "F":
            return EarF(_ints(d.get("face"), 3, f"{where}.face"))
    except ValueError as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(f"{where}: {exc}") from None
    raise ParseError(f"{where}: unknown ear type {kind!r}")


def dec_to_dict(dec: EarDecomposition) -> dict:
    return {"base": dec.base.value, "ears": [ear_to_dict(e) for e in dec.ears]}


def dec_from_dict(d) -> EarDecomposition:
    if not isinstance(d, dict):
        raise ParseError("instance must be a JSON object")
    try:
        base = BaseSphere(d.get("base"))
    except ValueError:
        raise ParseError(f"unknown base {d.get('base')!r}") from None
    ears = d.get("ears", [])
    if not isinstance(ears, list):
        raise ParseError("'ears' must be an array")
    return EarDecomposition(base, tuple(ear_from_dict(e, i) for i, e in enumerate(ears)))


def dumps_instance(dec: EarDecomposition) -> str:
    lines = ['{', f'  "base": "{dec.base.value}",']
    if not dec.ears:
        lines.append('  "ears": []')
    else:
        lines.append('  "ears": [')
        body = [f"    {json.dumps(ear_to_dict(e))}" for e in dec.ears]
        lines.append(",\n".join(body))
        lines.append("  ]")
    lines.append("}")
    return "\n".join(lines) + "\n"


def loads_instance(text: str) -> EarDecomposition:
    try:
        d = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    return dec_from_dict(d)


def relabel(dec: EarDecomposition, base: BaseSphere, perm: dict) -> EarDecomposition:
    """Apply a vertex permutation (missing keys fixed) to every ear."""

    def p(v):
        return perm.get(v, v)

    out = []
    for ear in dec.ears:
        if isinstance(ear, EarA):
            out.append(type(ear)(p(ear.apex), tuple(map(p, ear.cycle))))
        elif isinstance(ear, EarE):
            out.append(EarE(tuple(map(p, ear.chord)), tuple(map(p, ear.cycle))))
        else:
            out.append(EarF(tuple(map(p, ear.face))))
    return EarDecomposition(base, tuple(out))

