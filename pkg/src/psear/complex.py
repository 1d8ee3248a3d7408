"""Faces, simplicial complexes and the f- to h-vector transform for d = 3."""

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Iterable, NamedTuple

from .errors import UnsupportedDimension

Face = tuple  # strictly increasing tuple of vertex ids

EMPTY_FACE: Face = ()


def face(vertices: Iterable[int]) -> Face:
    f = tuple(sorted(set(vertices)))
    if any(v <= 0 for v in f):
        raise ValueError(f"vertex ids must be positive: {f}")
    return f


def subfaces(f: Face):
    for r in range(len(f) + 1):
        yield from combinations(f, r)


class FVector(NamedTuple):
    f_1: int  # f_{-1}
    f0: int
    f1: int
    f2: int


class HVector(NamedTuple):
    h0: int
    h1: int
    h2: int
    h3: int

    def __add__(self, other):
        return HVector(*(a + b for a, b in zip(self, other)))


@dataclass(frozen=True)
class SimplicialComplex:
    faces: frozenset = frozenset()

    def __post_init__(self):
        # downward closure is cheap at this scale, so it is enforced, not trusted
        for f in self.faces:
            for g in combinations(f, len(f) - 1) if f else ():
                if g not in self.faces:
                    raise ValueError(f"not downward closed: {f} present, {g} missing")

    @classmethod
    def from_facets(cls, facets: Iterable[Iterable[int]]) -> "SimplicialComplex":
        out = set()
        for f in facets:
            out.update(subfaces(face(f)))
        return cls(frozenset(out))

    def __contains__(self, f) -> bool:
        return tuple(sorted(f)) in self.faces

    def __len__(self):
        return len(self.faces)

    @property
    def dimension(self) -> int:
        if not self.faces:
            return -2  # the void complex
        return max(len(f) for f in self.faces) - 1

    @property
    def vertices(self) -> tuple:
        return tuple(sorted(f[0] for f in self.faces if len(f) == 1))

    def faces_of_dim(self, k: int) -> list:
        return sorted(f for f in self.faces if len(f) == k + 1)

    def facets(self) -> list:
        out = []
        for f in self.faces:
            if not any(len(g) == len(f) + 1 and set(f) <= set(g) for g in self.faces):
                out.append(f)
        return sorted(out, key=lambda f: (len(f), f))

    def is_pure(self) -> bool:
        return len({len(f) for f in self.facets()}) <= 1

    def is_subcomplex_of(self, other: "SimplicialComplex") -> bool:
        return self.faces <= other.faces


def add_face(cx: SimplicialComplex, f: Iterable[int]) -> SimplicialComplex:
    f = face(f)
    if len(f) > 3:
        raise UnsupportedDimension(f"face {f} has dimension {len(f) - 1} > 2")
    if f in cx.faces:
        return cx
    return SimplicialComplex(cx.faces | frozenset(subfaces(f)))


def f_vector(cx: SimplicialComplex):
    """Face counts by dimension; the void complex yields an empty tuple."""
    if not cx.faces:
        return ()
    if cx.dimension > 2:
        raise UnsupportedDimension(f"complex has dimension {cx.dimension}")
    counts = [0, 0, 0, 0]
    for f in cx.faces:
        counts[len(f)] += 1
    return FVector(*counts)


def h_vector(f: FVector) -> HVector:
    _, f0, f1, f2 = f
    return HVector(1, f0 - 3, f1 - 2 * f0 + 3, f2 - f1 + f0 - 1)


def h_vector_general(f, d: int = 3) -> tuple:
    """The binomial h-transform for any d; used to cross-check ``h_vector``."""
    f = list(f) + [0] * (d + 1 - len(f))
    return tuple(
        sum((-1) ** (j - i) * comb(d - i, d - j) * f[i] for i in range(j + 1))
        for j in range(d + 1)
    )


class SimpleGraph(NamedTuple):
    vertices: tuple
    edges: frozenset  # of sorted pairs


def one_skeleton(cx: SimplicialComplex) -> SimpleGraph:
    return SimpleGraph(cx.vertices, frozenset(f for f in cx.faces if len(f) == 2))
