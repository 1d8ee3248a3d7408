"""Seeded random and exhaustive generation of ear decompositions and
constructible graphs."""

import random
from dataclasses import dataclass
from itertools import combinations
from typing import Optional, Union

from .ears import BaseSphere, ComplexBuilder, EarA, EarB, EarDecomposition, EarE, EarF
from .errors import BoundExceeded, InfeasibleBudget, InvalidArguments
from .graphs import LabeledGraph

KINDS = "ABEF"
BACKTRACK_LIMIT = 1000
MAX_ENUM_EARS = 4


@dataclass(frozen=True)
class GenSpec:
    """``eta`` fixes the count of each ear type; otherwise ``total`` ears of
    any types are drawn. For graphs only the first three entries of ``eta``
    (A, B, E moves) are used."""

    seed: int = 0
    base: Union[BaseSphere, str] = BaseSphere.TETRAHEDRON
    eta: Optional[tuple] = None
    total: int = 0
    max_vertices: Optional[int] = None

    def __post_init__(self):
        if self.eta is not None:
            eta = tuple(int(v) for v in self.eta)
            if len(eta) != 4 or any(v < 0 for v in eta):
                raise InvalidArguments("eta needs four non-negative counts (A, B, E, F)")
            object.__setattr__(self, "eta", eta)
        if self.total < 0:
            raise InvalidArguments("total must be non-negative")
        if isinstance(self.base, str) and self.base != "any":
            object.__setattr__(self, "base", BaseSphere(self.base))


def _norm_cycle(c):
    """Rotate and reflect a cycle so its smallest vertex comes first and its
    second entry is smaller than its last."""
    k = c.index(min(c))
    c = c[k:] + c[:k]
    if c[1] > c[-1]:
        c = (c[0],) + tuple(reversed(c[1:]))
    return c


def legal_moves(b: ComplexBuilder, kind: str) -> list:
    """All ears of one type that can be glued to ``b`` now, in a fixed order."""
    n, adj = b.n, b.adj
    if kind == "A":
        return [EarA(n + 1, t) for t in _graph_triangles(b)]
    if kind == "F":
        return [EarF(t) for t in _graph_triangles(b) if t not in b.triangles]
    out = []
    seen = set()
    for u, w in combinations(range(1, n + 1), 2):
        common = sorted(adj[u] & adj[w])
        chord = w in adj[u]
        for p, q in combinations(common, 2):
            if kind == "B":
                c = _norm_cycle((u, p, w, q))
                if c not in seen:
                    seen.add(c)
                    out.append(EarB(n + 1, c))
            elif not chord:
                out.append(EarE((u, w), (u, p, w, q)))
    if kind == "B":
        out.sort(key=lambda e: e.cycle)
    return out


def _graph_triangles(b):
    adj = b.adj
    out = []
    for i in range(1, b.n + 1):
        for j in adj[i]:
            if j <= i:
                continue
            for k in adj[i] & adj[j]:
                if k > j:
                    out.append((i, j, k))
    return sorted(out)


def _choose_base(spec, rng):
    if spec.base == "any":
        return rng.choice(list(BaseSphere))
    return spec.base


def _vertex_room(b, spec):
    return spec.max_vertices is None or b.n < spec.max_vertices


def gen_decomposition(spec: GenSpec) -> EarDecomposition:
    rng = random.Random(spec.seed)
    base = _choose_base(spec, rng)
    if spec.eta is not None:
        remaining = list(spec.eta)
        target = sum(remaining)
    else:
        remaining = None
        target = spec.total
    if spec.max_vertices is not None and remaining is not None:
        if base.n_vertices + remaining[0] + remaining[1] > spec.max_vertices:
            raise InfeasibleBudget("the requested A- and B-ears exceed max_vertices")

    # explicit stack of (builder snapshot, ears, remaining, tried kinds)
    ears = []
    history = []
    b = ComplexBuilder(base)
    backtracks = 0
    while len(ears) < target:
        options = []
        for kind in KINDS:
            if remaining is not None and remaining[KINDS.index(kind)] == 0:
                continue
            if kind in "AB" and not _vertex_room(b, spec):
                continue
            moves = legal_moves(b, kind)
            if moves:
                weight = remaining[KINDS.index(kind)] if remaining is not None else 1
                options.append((kind, moves, weight))
        if not options:
            if not history or backtracks >= BACKTRACK_LIMIT:
                raise InfeasibleBudget(f"no legal ear for the remaining budget {remaining} after {backtracks} backtracks")
            backtracks += 1
            ears.pop()
            b, remaining = history.pop()
            continue
        kinds = [o[0] for o in options]
        kind = rng.choices(kinds, weights=[o[2] for o in options])[0]
        moves = options[kinds.index(kind)][1]
        ear = rng.choice(moves)
        history.append((_copy_builder(b), list(remaining) if remaining is not None else None))
        b.add(ear, len(ears))
        ears.append(ear)
        if remaining is not None:
            remaining[KINDS.index(kind)] -= 1
    return EarDecomposition(base, tuple(ears))


def _copy_builder(b) -> ComplexBuilder:
    c = ComplexBuilder.__new__(ComplexBuilder)
    c.base = b.base
    c.n = b.n
    c.faces = set(b.faces)
    c.adj = {v: set(s) for v, s in b.adj.items()}
    c.triangles = set(b.triangles)
    c.counts = list(b.counts)
    return c


def gen_constructible_graph(spec: GenSpec) -> LabeledGraph:
    """K4 followed by random A-vertex, B-vertex and unlabeled-edge moves."""
    rng = random.Random(spec.seed)
    order = [1, 2, 3, 4]
    types = {}
    labels = {e: 0 for e in combinations(range(1, 5), 2)}
    if spec.eta is not None:
        remaining = list(spec.eta[:3])
        steps = sum(remaining)
    else:
        remaining = None
        steps = spec.total
    for _ in range(steps):
        n = len(order)
        missing = [(i, j) for j in range(2, n + 1) for i in range(1, j) if (i, j) not in labels]
        room = spec.max_vertices is None or n < spec.max_vertices
        kinds = []
        for k, kind in enumerate("ABE"):
            if remaining is not None and remaining[k] == 0:
                continue
            if kind in "AB" and not room:
                continue
            if kind == "E" and not missing:
                continue
            kinds.append(kind)
        if not kinds:
            raise InfeasibleBudget(f"no legal graph move for the remaining budget {remaining}")
        weights = [remaining["ABE".index(k)] if remaining is not None else 1 for k in kinds]
        kind = rng.choices(kinds, weights=weights)[0]
        if remaining is not None:
            remaining["ABE".index(kind)] -= 1
        if kind == "E":
            labels[rng.choice(missing)] = None
            continue
        t = 3 if kind == "A" else 4
        v = n + 1
        for u in rng.sample(order, t):
            labels[(u, v)] = v
        order.append(v)
        types[v] = t
    return LabeledGraph(tuple(order), types, labels)


def enumerate_small(base: BaseSphere, max_ears: int, kinds: str = KINDS):
    """Every valid decomposition with at most ``max_ears`` ears whose ear
    types lie in ``kinds``, depth first in a fixed order."""
    if max_ears > MAX_ENUM_EARS:
        raise BoundExceeded(f"max_ears {max_ears} exceeds {MAX_ENUM_EARS}")
    if max_ears < 0:
        raise InvalidArguments("max_ears must be non-negative")

    def rec(b, ears):
        yield EarDecomposition(base, tuple(ears))
        if len(ears) == max_ears:
            return
        for kind in KINDS:
            if kind not in kinds:
                continue
            for ear in legal_moves(b, kind):
                nb = _copy_builder(b)
                nb.add(ear, len(ears))
                ears.append(ear)
                yield from rec(nb, ears)
                ears.pop()

    yield from rec(ComplexBuilder(base), [])
