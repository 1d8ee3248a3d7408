"""Compressed complexes and pure multicomplexes for each base sphere.

Every route ends with a decomposition C whose ears sit in canonical
positions and a pure multicomplex M on variables x4, x5, ... with
F(M) = h(input). Octahedral inputs with both E- and F-ears are first
rewritten onto a bipyramid or tetrahedron base.
"""

import json
from dataclasses import dataclass, field
from typing import List

from .complex import HVector, f_vector, h_vector, one_skeleton
from .ears import (
    BaseSphere,
    EarA,
    EarB,
    EarDecomposition,
    EarE,
    EarF,
    _labeled_graph,
    build,
    dec_to_dict,
    ear_counts,
    h_from_counts,
    realize,
    relabel,
)
from .errors import (
    CapacityExhausted,
    EtaFBoundViolation,
    GluingViolation,
    IdentityViolation,
    InternalInvariantError,
    NotConstructible,
    PreconditionViolation,
    PsearError,
    UnsupportedBase,
)
from .graphs import (
    LabeledGraph,
    binom,
    compress,
    is_constructible,
    profile_eta_e,
    shift,
    structure_profile,
    triangle_count,
)
from .multicomplex import ONE, Multicomplex, f_vec, is_pure, x

TETRA, BIPYR, OCTA = BaseSphere.TETRAHEDRON, BaseSphere.BIPYRAMID, BaseSphere.OCTAHEDRON


def _need(dec, base):
    if dec.base is not base:
        raise UnsupportedBase(f"expected a {base.value} base, got {dec.base.value}")


class _Run:
    """A compressed decomposition and its multicomplex, grown side by side."""

    def __init__(self, base, monomials):
        self.b = build(EarDecomposition(base))
        self.ears = []
        self.M = set(monomials)

    def ear(self, ear, *monos):
        try:
            self.b.add(ear, len(self.ears))
        except GluingViolation as exc:
            raise InternalInvariantError(f"canonical ear rejected: {exc}") from exc
        self.ears.append(ear)
        for m in monos:
            if m in self.M:
                raise InternalInvariantError(f"monomial {m} added twice")
            self.M.add(m)

    def next_missing_edge(self):
        e = next(self.b.missing_edges(), None)
        if e is None:
            raise CapacityExhausted("no missing edge left for an E-ear")
        return e

    def e_ear(self, i, j):
        """E-ear across the cycle v1-vi-v2-vj."""
        self.ear(EarE((i, j), (i, 1, j, 2)), x(i) * x(j), x(i, 2) * x(j))

    def fill_faces(self, k):
        for _ in range(k):
            t = next(self.b.missing_triangles(), None)
            if t is None:
                raise CapacityExhausted("no missing 2-face left for an F-ear")
            mu = smallest_addable(self.M)
            if mu is None:
                raise CapacityExhausted("no addable degree-3 monomial left")
            self.ear(EarF(t), mu)

    def result(self, base):
        return EarDecomposition(base, tuple(self.ears)), Multicomplex(frozenset(self.M))


def addable_cubics(M) -> list:
    """Degree-3 monomials outside M whose degree-2 divisors all lie in M, revlex ascending."""
    M = set(M)
    variables = sorted({m.factors[0] for m in M if m.degree == 1})
    seen = set()
    for m in M:
        if m.degree != 2:
            continue
        for v in variables:
            c = m * x(v)
            if c not in M and c not in seen and all(d in M for d in c.lower()):
                seen.add(c)
    return sorted(seen, key=lambda m: m.factors)


def smallest_addable(M):
    out = addable_cubics(M)
    return out[0] if out else None


# ---------------------------------------------------------------- tetrahedron


def _tetra_steps012(a, b, e) -> _Run:
    run = _Run(TETRA, {ONE, x(4), x(4, 2), x(4, 3)})
    v = 5
    for _ in range(b):
        run.ear(EarB(v, (1, 2, 3, 4)), x(v), x(4) * x(v), x(v, 2), x(4) * x(v, 2))
        v += 1
    for _ in range(a):
        run.ear(EarA(v, (1, 2, 3)), x(v), x(v, 2), x(v, 3))
        v += 1
    for _ in range(e):
        run.e_ear(*run.next_missing_edge())
    return run


def capacity_tetra(cdec: EarDecomposition, monomials=None) -> tuple:
    """(face capacity, monomial capacity) of a compressed tetrahedral
    decomposition before any F-ear is placed. Both are counted directly and
    checked against the profile formula."""
    _need(cdec, TETRA)
    c = ear_counts(cdec)
    if c.f:
        raise PreconditionViolation("capacity is measured before F-ears are placed")
    if monomials is None:
        monomials = _tetra_steps012(c.a, c.b, c.e).M
    g = _labeled_graph(cdec)
    prof = structure_profile(g)
    cx = realize(cdec)
    faces = len(cx.faces_of_dim(2))
    face_cap = triangle_count(g) - faces
    mono_cap = len(addable_cubics(monomials))
    m = binom(prof.p - 1, 3) + binom(prof.q - 1, 2) + prof.a2 + 3 * prof.b2
    chain = m - c.a - c.b - c.e - 1
    formula = binom(prof.p - 2, 3) + binom(prof.q - 2, 2) + prof.b1 + 2 * prof.b2
    if profile_eta_e(prof) != c.e:
        raise IdentityViolation(f"edge count identity fails: {profile_eta_e(prof)} != {c.e}")
    if not face_cap == mono_cap == chain == formula:
        raise IdentityViolation(
            f"capacities disagree: faces {face_cap}, monomials {mono_cap}, chain {chain}, formula {formula} ({prof})"
        )
    return face_cap, mono_cap


def compress_tetra(dec: EarDecomposition, check_capacity=True, log=None):
    _need(dec, TETRA)
    c = ear_counts(dec)
    return _tetra_from_counts(c, check_capacity, log)


def _tetra_from_counts(c, check_capacity=True, log=None):
    run = _tetra_steps012(c.a, c.b, c.e)
    if check_capacity:
        pre = EarDecomposition(TETRA, tuple(run.ears))
        face_cap, mono_cap = capacity_tetra(pre, run.M)
        if log is not None:
            log.append(f"capacity {face_cap} for {c.f} F-ears")
        if c.f > face_cap:
            raise CapacityExhausted(f"{c.f} F-ears requested, capacity {face_cap}")
    run.fill_faces(c.f)
    return run.result(TETRA)


# ---------------------------------------------------------------- bipyramid


def compress_bipyramid_F0(dec: EarDecomposition):
    _need(dec, BIPYR)
    c = ear_counts(dec)
    if c.f:
        raise PreconditionViolation("this route needs a decomposition without F-ears")
    run = _Run(BIPYR, {ONE, x(4), x(5), x(4, 2), x(4) * x(5), x(4, 2) * x(5)})
    v = 6
    for _ in range(c.b):
        run.ear(EarB(v, (1, 2, 3, 4)), x(v), x(4) * x(v), x(v, 2), x(4) * x(v, 2))
        v += 1
    for _ in range(c.a):
        run.ear(EarA(v, (1, 2, 3)), x(v), x(v, 2), x(v, 3))
        v += 1
    for _ in range(c.e):
        i, j = run.next_missing_edge()
        if (i, j) == (4, 5):
            run.ear(EarE((4, 5), (4, 1, 5, 2)), x(5, 2), x(5, 3))
        else:
            run.e_ear(i, j)
    return run.result(BIPYR)


def reduce_bipyramid_Fpos(dec: EarDecomposition) -> EarDecomposition:
    """Read the bipyramid as a tetrahedron on 1..4 plus an A-ear at 5; one
    F-ear is absorbed so that {1, 2, 3} is a face."""
    _need(dec, BIPYR)
    fs = [k for k, e in enumerate(dec.ears) if isinstance(e, EarF)]
    if not fs:
        raise PreconditionViolation("this route needs at least one F-ear")
    hit = [k for k in fs if tuple(sorted(dec.ears[k].face)) == (1, 2, 3)]
    drop = hit[0] if hit else fs[0]
    ears = (EarA(5, (1, 2, 3)),) + dec.ears[:drop] + dec.ears[drop + 1 :]
    return EarDecomposition(TETRA, ears)


# ---------------------------------------------------------------- octahedron

_OCTA_M0 = (ONE, x(4), x(5), x(6), x(4) * x(5), x(4) * x(6), x(5) * x(6), x(4) * x(5) * x(6))


def compress_octahedron_F0(dec: EarDecomposition):
    _need(dec, OCTA)
    c = ear_counts(dec)
    if c.f:
        raise PreconditionViolation("this route needs a decomposition without F-ears")
    run = _Run(OCTA, _OCTA_M0)
    v = 7
    for _ in range(c.b):
        run.ear(EarB(v, (1, 2, 4, 3)), x(v), x(4) * x(v), x(v, 2), x(4) * x(v, 2))
        v += 1
    for _ in range(c.a):
        run.ear(EarA(v, (1, 2, 3)), x(v), x(v, 2), x(v, 3))
        v += 1
    for _ in range(c.e):
        i, j = run.next_missing_edge()
        if (i, j) == (1, 4):
            run.ear(EarE((1, 4), (1, 2, 4, 5)), x(4, 2), x(4, 3))
        elif (i, j) == (2, 5):
            run.ear(EarE((2, 5), (2, 4, 5, 1)), x(5, 2), x(5, 3))
        elif (i, j) == (3, 6):
            run.ear(EarE((3, 6), (3, 4, 6, 1)), x(6, 2), x(6, 3))
        else:
            run.e_ear(i, j)
    return run.result(OCTA)


def eta_F_max_E0(eta_A: int, eta_B: int) -> int:
    if eta_B == 0:
        return 0
    return 2 * eta_B - 1 if eta_A == 0 else 2 * eta_B


def compress_octahedron_E0(dec: EarDecomposition):
    _need(dec, OCTA)
    c = ear_counts(dec)
    if c.e:
        raise PreconditionViolation("this route needs a decomposition without E-ears")
    bound = eta_F_max_E0(c.a, c.b)
    if c.f > bound:
        raise EtaFBoundViolation(f"{c.f} F-ears exceed the bound {bound} for A={c.a}, B={c.b}")
    run = _Run(OCTA, _OCTA_M0)
    S, F = [], []
    if c.a == 0 and c.b > 0:
        # The first B-ear's cycle 1-2-4-3 has diagonals {1,4} (absent) and
        # {2,3}, so its one new empty triangle is {2,3,7}.
        run.ear(EarB(7, (1, 2, 4, 3)), x(7), x(4) * x(7), x(7, 2), x(4) * x(7, 2))
        S.append(x(7, 3))
        F.append((2, 3, 7))
        first_b = 8
    else:
        for v in range(7, 7 + c.a):
            run.ear(EarA(v, (1, 2, 3)), x(v), x(v, 2), x(v, 3))
        first_b = 7 + c.a
    for v in range(first_b, 7 + c.a + c.b):
        run.ear(EarB(v, (1, 2, 3, 7)), x(v), x(v, 2), x(7) * x(v), x(7) * x(v, 2))
        S += [x(7, 2) * x(v), x(v, 3)]
        F += [(1, 3, v), (2, 7, v)]
    S.sort(key=lambda m: m.factors)
    F.sort(key=lambda t: (t[2], t[1], t[0]))
    for t, mu in zip(F[: c.f], S[: c.f]):
        run.ear(EarF(t), mu)
    return run.result(OCTA)


# Octahedral symmetries that carry a diagonal onto {1, 4}.
DIAGONAL_SWAPS = {
    (1, 4): {},
    (2, 5): {1: 2, 2: 1, 4: 5, 5: 4},
    (3, 6): {1: 3, 3: 1, 4: 6, 6: 4},
}

# Bipyramid with axis {2,5} over 1-3-4, renamed to the standard labels.
_BIPYR_RENAME = {1: 1, 2: 4, 3: 2, 4: 3, 5: 5}


def _chord_ear(dec):
    for k, e in enumerate(dec.ears):
        if isinstance(e, EarE) and set(e.chord) == {1, 4}:
            return k
    return None


def _swap_wing(dec, i, keep, r, t, log):
    """Rewire the {1,4} E-ear at position i so that its wing r becomes t,
    keeping wing ``keep``; the face {1,4,r} moves to {1,4,t}."""
    ears = list(dec.ears)
    ears[i] = EarE((1, 4), (1, keep, 4, t))
    tau = tuple(sorted((1, 4, t)))
    later = [k for k in range(i + 1, len(ears)) if isinstance(ears[k], EarF) and tuple(sorted(ears[k].face)) == tau]
    if later:
        j = later[0]
        ears[j] = EarF(tuple(sorted((1, 4, r))))
        log.append(f"swap wing {r}->{t}: F-ear {j} now fills {{1,4,{r}}}")
    else:
        log.append(f"swap wing {r}->{t}: face {{1,4,{r}}} replaced by {tau}")
    out = EarDecomposition(dec.base, tuple(ears))
    try:
        build(out)
    except GluingViolation as exc:
        raise InternalInvariantError(f"wing swap produced an invalid decomposition: {exc}") from exc
    return out


def reduce_octahedron_v1v4(dec: EarDecomposition, log=None) -> EarDecomposition:
    """Rewrite an octahedral decomposition containing the edge {1,4} onto a
    bipyramid base with one extra B-ear."""
    _need(dec, OCTA)
    log = [] if log is None else log
    i = _chord_ear(dec)
    if i is None:
        raise PreconditionViolation("edge {1,4} is not in the complex")
    u, w = dec.ears[i].wings
    if {u, w} != {2, 5}:
        if u in (2, 5) or w in (2, 5):
            keep, r = (u, w) if u in (2, 5) else (w, u)
            dec = _swap_wing(dec, i, keep, r, 7 - keep, log)
        else:
            dec = _swap_wing(dec, i, u, w, 2, log)
            dec = _swap_wing(dec, i, 2, u, 5, log)
    ears = dec.ears[:i] + dec.ears[i + 1 :]
    rest = relabel(EarDecomposition(BIPYR, ears), BIPYR, _BIPYR_RENAME)
    b6 = EarB(6, tuple(_BIPYR_RENAME[v] for v in (1, 2, 4, 5)))
    log.append("octahedron with {1,4} read as bipyramid plus B-ear at 6")
    return EarDecomposition(BIPYR, (b6,) + rest.ears)


def shift_constructible(g: LabeledGraph) -> LabeledGraph:
    """Apply S_{4,5} to the graph of an octahedral complex without {1,4}
    and relabel the result as a constructible graph.

    The shifted base is a K4 on 1..4, then v6 joined to 1, 2, 4, then v5
    joined to 3, 4, 6.
    """
    if (1, 4) in g.labels:
        raise PreconditionViolation("edge {1,4} must be absent")
    base = {(1, 2), (1, 3), (1, 5), (1, 6), (2, 3), (2, 4), (2, 6), (3, 4), (3, 5), (4, 5), (4, 6), (5, 6)}
    if not base <= set(g.labels) or tuple(g.order[:6]) != (1, 2, 3, 4, 5, 6):
        raise PreconditionViolation("graph does not start from the labeled octahedron")
    shifted = shift(g.simple(), 4, 5).edges
    labels = {e: 0 for e in [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]}
    labels.update({(1, 6): 6, (2, 6): 6, (4, 6): 6, (3, 5): 5, (4, 5): 5, (5, 6): 5})
    types = {6: 3, 5: 3}
    for v in g.order[6:]:
        t = g.types[v]
        types[v] = t
        N = {a if b == v else b for (a, b), lab in g.labels.items() if lab == v}
        if 5 in N and 4 not in N:
            N = (N - {5}) | {4}
        for a in N:
            labels[(a, v) if a < v else (v, a)] = v
    for e in shifted:
        labels.setdefault(e, None)
    out = LabeledGraph((1, 2, 3, 4, 6, 5) + tuple(g.order[6:]), types, labels)
    if out.edges != shifted:
        raise InternalInvariantError("relabeled graph does not match the shifted edge set")
    if not is_constructible(out):
        raise NotConstructible("shifted graph failed deconstruction")
    return out


def removal_case(n_b: int) -> int:
    """Which pair of cubics to drop, from the types at positions 5 and 6."""
    return min(n_b, 2) + 1


def reduce_octahedron_no_v1v4(dec: EarDecomposition, log=None):
    """Tetrahedral decomposition with h raised by (0,0,0,2), plus the
    removal case. Raises CapacityExhausted when the compressed graph has
    too few empty triangles for all F-ears."""
    _need(dec, OCTA)
    log = [] if log is None else log
    c = ear_counts(dec)
    if not (c.e > 0 and c.f > 0):
        raise PreconditionViolation("this route needs both E- and F-ears")
    g = _labeled_graph(dec)
    gs = shift_constructible(g)
    cg = compress(gs)
    a, b = cg.count_types()
    if (a, b) != (c.a + 2, c.b) or len(cg.unlabeled_edges()) != c.e:
        raise InternalInvariantError(f"shifted counts {(a, b)} do not match {(c.a + 2, c.b)}")
    run = _tetra_steps012(a, b, c.e)
    pre = EarDecomposition(TETRA, tuple(run.ears))
    room = triangle_count(cg) - len(realize(pre).faces_of_dim(2))
    tg = triangle_count(one_skeleton(realize(dec)))
    log.append(f"shift: triangles {tg} -> {triangle_count(gs)} -> {triangle_count(cg)}, room {room} for {c.f} F-ears")
    if room < c.f:
        raise CapacityExhausted(f"compressed shifted graph has room for {room} F-ears, {c.f} needed")
    b_ = build(pre)
    ears = list(pre.ears)
    for _ in range(c.f):
        t = next(b_.missing_triangles())
        ear = EarF(t)
        b_.add(ear, len(ears))
        ears.append(ear)
    return EarDecomposition(TETRA, tuple(ears)), removal_case(b)


_REMOVALS = {
    1: (x(4, 3), x(5, 3)),
    2: (x(4, 3), x(4, 2) * x(5)),
    3: (x(4, 3), x(4) * x(5, 2)),
}


def remove_two_monomials(m: Multicomplex, case: int) -> Multicomplex:
    if case not in _REMOVALS:
        raise PreconditionViolation(f"unknown removal case {case}")
    drop = _REMOVALS[case]
    for mu in drop:
        if mu not in m:
            raise InternalInvariantError(f"case {case}: monomial {mu} is absent")
    try:
        out = m.without(drop)
    except PsearError as exc:
        raise InternalInvariantError(f"case {case}: removal breaks closure") from exc
    if not is_pure(out):
        raise InternalInvariantError(f"case {case}: removal destroys purity")
    return out


# ---------------------------------------------------------------- dispatch


@dataclass
class WitnessReport:
    base: str
    counts: tuple
    h: tuple
    route: List[str] = field(default_factory=list)
    compressed: EarDecomposition = None
    multicomplex: Multicomplex = None
    flags: dict = field(default_factory=dict)
    diagnostics: str = ""

    @property
    def F(self):
        return f_vec(self.multicomplex) if self.multicomplex is not None else ()

    @property
    def ok(self) -> bool:
        return bool(self.flags) and all(self.flags.values()) and not self.diagnostics

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "base": self.base,
            "counts": list(self.counts),
            "h": list(self.h),
            "F": list(self.F),
            "route": list(self.route),
            "monomials": self.multicomplex.strings() if self.multicomplex is not None else [],
            "compressed": dec_to_dict(self.compressed) if self.compressed is not None else None,
            "flags": dict(self.flags),
            "diagnostics": self.diagnostics,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def to_text(self) -> str:
        lines = [
            f"base = {self.base}",
            f"counts (A,B,E,F) = {tuple(self.counts)}",
            f"h = {_tup(self.h)}",
            f"F = {_tup(self.F)}",
            "route: " + " | ".join(self.route),
            "monomials: " + " ".join(self.multicomplex.strings() if self.multicomplex is not None else []),
            "flags: " + ", ".join(f"{k}={'yes' if v else 'no'}" for k, v in self.flags.items()),
        ]
        if self.diagnostics:
            lines.append(f"diagnostics: {self.diagnostics}")
        lines.append("OK" if self.ok else "FAILED")
        return "\n".join(lines) + "\n"


def _tup(t):
    return "(" + ",".join(str(v) for v in t) + ")"


def _via_tetra(dec, route):
    route.append("tetra-compress")
    return compress_tetra(dec, log=route)


def _via_bipyramid(dec, route):
    c = ear_counts(dec)
    if c.f > 0:
        route.append("bipyramid-to-tetrahedron")
        return _via_tetra(reduce_bipyramid_Fpos(dec), route)
    route.append("bipyramid-F0-compress")
    return compress_bipyramid_F0(dec)


def _via_diagonal(dec, route):
    route.append("octahedron-diagonal-reduction")
    return _via_bipyramid(reduce_octahedron_v1v4(dec, route), route)


def _present_diagonals(dec):
    b = build(dec)
    return [d for d in ((1, 4), (2, 5), (3, 6)) if b.has_edge(*d)]


def _dispatch(dec, route):
    """Returns (C, M, h offset of C relative to the input)."""
    c = ear_counts(dec)
    if dec.base is TETRA:
        return _via_tetra(dec, route) + (0,)
    if dec.base is BIPYR:
        return _via_bipyramid(dec, route) + (0,)
    if c.f == 0:
        route.append("octahedron-F0-compress")
        return compress_octahedron_F0(dec) + (0,)
    if c.e == 0:
        route.append("octahedron-E0-compress")
        return compress_octahedron_E0(dec) + (0,)
    if (1, 4) in _present_diagonals(dec):
        return _via_diagonal(dec, route) + (0,)
    route.append("octahedron-shift-reduction")
    try:
        prime, case = reduce_octahedron_no_v1v4(dec, route)
    except CapacityExhausted as exc:
        diags = _present_diagonals(dec)
        if not diags:
            raise
        # The shift route can fall two triangles short; a present diagonal
        # is moved onto {1,4} by an octahedral symmetry instead.
        d = diags[0]
        route.append(f"shift route short ({exc}); diagonal {d} mapped onto (1, 4)")
        return _via_diagonal(relabel(dec, OCTA, DIAGONAL_SWAPS[d]), route) + (0,)
    route.append("tetra-compress")
    C, M = _tetra_from_counts(ear_counts(prime), log=route)
    route.append(f"remove-two-monomials case {case}")
    return C, remove_two_monomials(M, case), 2


def pure_witness(dec: EarDecomposition) -> WitnessReport:
    """Dispatch on the base sphere and the ear counts, then verify the result."""
    cx = realize(dec)
    h = h_vector(f_vector(cx))
    c = ear_counts(dec)
    rep = WitnessReport(dec.base.value, tuple(c), tuple(h))
    try:
        C, M, offset = _dispatch(dec, rep.route)
    except InternalInvariantError as exc:
        rep.diagnostics = f"{type(exc).__name__}: {exc}"
        rep.flags = {"compressed_valid": False, "pure": False, "F_equals_h": False}
        return rep
    rep.compressed, rep.multicomplex = C, M
    try:
        hc = h_vector(f_vector(realize(C)))
        valid = True
    except GluingViolation:
        hc, valid = None, False
    expect_c = tuple(HVector(*h) + HVector(0, 0, 0, offset))
    rep.flags = {
        "compressed_valid": valid and tuple(hc) == expect_c,
        "pure": is_pure(M),
        "F_equals_h": f_vec(M) == tuple(h),
        "h_matches_counts": tuple(h_from_counts(dec.base, c)) == tuple(h),
    }
    return rep

