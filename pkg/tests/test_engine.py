import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from psear.complex import f_vector, h_vector
from psear.ears import BaseSphere, EarA, EarB, EarDecomposition, EarE, EarF, _labeled_graph, ear_counts, is_valid, realize
from psear.engine import (
    addable_cubics,
    capacity_tetra,
    compress_bipyramid_F0,
    compress_octahedron_E0,
    compress_octahedron_F0,
    compress_tetra,
    eta_F_max_E0,
    pure_witness,
    reduce_bipyramid_Fpos,
    reduce_octahedron_no_v1v4,
    reduce_octahedron_v1v4,
    remove_two_monomials,
    removal_case,
    shift_constructible,
)
from psear.errors import CapacityExhausted, EtaFBoundViolation, InternalInvariantError, PreconditionViolation, UnsupportedBase
from psear.generate import GenSpec, gen_decomposition
from psear.graphs import StructureProfile, compress, structure_profile, triangle_count
from psear.multicomplex import divisor_closure, f_vec, is_pure, x

T, B, O = BaseSphere.TETRAHEDRON, BaseSphere.BIPYRAMID, BaseSphere.OCTAHEDRON


def h_of(dec):
    return tuple(h_vector(f_vector(realize(dec))))


TETRA_1111 = EarDecomposition(T, (EarB(5, (1, 2, 3, 4)), EarA(6, (1, 2, 3)), EarE((4, 6), (4, 1, 6, 2)), EarF((2, 4, 5))))


def test_tetra_trace_1111():
    C, M = compress_tetra(TETRA_1111)
    assert C.ears == (EarB(5, (1, 2, 3, 4)), EarA(6, (1, 2, 3)), EarE((4, 6), (4, 1, 6, 2)), EarF((1, 3, 5)))
    assert f_vec(M) == (1, 3, 5, 5) == h_of(TETRA_1111)
    assert " ".join(M.strings()) == "1 x4 x5 x6 x4^2 x4*x5 x5^2 x4*x6 x6^2 x4^3 x4^2*x5 x4*x5^2 x4^2*x6 x6^3"
    pre = C.prefix(3)
    assert capacity_tetra(pre) == (3, 3)
    assert structure_profile(_labeled_graph(pre)) == StructureProfile(5, 4, 1, 1, 0, 0)


def test_addable_cubics_of_tetra_1111():
    C, M = compress_tetra(TETRA_1111.prefix(3))
    assert [str(m) for m in addable_cubics(M)] == ["x4^2*x5", "x5^3", "x4*x6^2"]


def test_capacity_needs_f_free_input():
    C, _ = compress_tetra(TETRA_1111)
    with pytest.raises(PreconditionViolation):
        capacity_tetra(C)


def test_tetra_capacity_exhausted():
    # no valid input asks for this, but the engine must refuse rather than guess
    from psear.ears import EarCounts
    from psear.engine import _tetra_from_counts

    with pytest.raises(CapacityExhausted):
        _tetra_from_counts(EarCounts(1, 0, 0, 1))


def test_golden_bases():
    want = {T: "1 x4 x4^2 x4^3", B: "1 x4 x5 x4^2 x4*x5 x4^2*x5", O: "1 x4 x5 x6 x4*x5 x4*x6 x5*x6 x4*x5*x6"}
    for base, text in want.items():
        rep = pure_witness(EarDecomposition(base))
        assert rep.ok
        assert " ".join(rep.multicomplex.strings()) == text
        assert rep.multicomplex == divisor_closure(rep.multicomplex.maximal())


def test_bipyramid_axis_ear():
    C, M = compress_bipyramid_F0(EarDecomposition(B, (EarE((4, 5), (4, 1, 5, 2)),)))
    assert C.ears == (EarE((4, 5), (4, 1, 5, 2)),)
    assert M.strings() == ["1", "x4", "x5", "x4^2", "x4*x5", "x5^2", "x4^2*x5", "x5^3"]
    assert f_vec(M) == (1, 2, 3, 2)


def test_bipyramid_with_f_ear_becomes_tetrahedron():
    dec = EarDecomposition(B, (EarF((1, 2, 3)),))
    r = reduce_bipyramid_Fpos(dec)
    assert r == EarDecomposition(T, (EarA(5, (1, 2, 3)),))
    assert h_of(r) == h_of(dec)
    with pytest.raises(PreconditionViolation):
        reduce_bipyramid_Fpos(EarDecomposition(B))
    with pytest.raises(UnsupportedBase):
        reduce_bipyramid_Fpos(EarDecomposition(T))


def test_bipyramid_drops_first_f_ear_when_none_fills_123():
    dec = EarDecomposition(B, (EarB(6, (1, 2, 3, 4)), EarF((1, 3, 6))))
    assert is_valid(dec)
    r = reduce_bipyramid_Fpos(dec)
    assert r.ears == (EarA(5, (1, 2, 3)), EarB(6, (1, 2, 3, 4)))
    assert h_of(r) == h_of(dec)


@pytest.mark.parametrize("k,added", [
    (1, ("x4^2", "x4^3")),
    (2, ("x4^2", "x4^3", "x5^2", "x5^3")),
    (3, ("x4^2", "x4^3", "x5^2", "x5^3", "x6^2", "x6^3")),
])
def test_octahedron_diagonal_ears(k, added):
    # the input uses the diagonals in reverse; compression fills them revlex
    ears = [EarE((3, 6), (3, 4, 6, 1)), EarE((2, 5), (2, 4, 5, 1)), EarE((1, 4), (1, 2, 4, 5))][:k]
    dec = EarDecomposition(O, tuple(ears))
    assert is_valid(dec)
    C, M = compress_octahedron_F0(dec)
    chords = [e.chord for e in C.ears]
    assert chords == [(1, 4), (2, 5), (3, 6)][:k]
    assert set(M.strings()) - set(compress_octahedron_F0(EarDecomposition(O))[1].strings()) == set(added)
    assert f_vec(M) == h_of(dec) == (1, 3, 3 + k, 1 + k)


def test_octahedron_all_diagonals_then_more():
    ears = (EarA(7, (1, 2, 3)), EarE((1, 4), (1, 2, 4, 5)), EarE((2, 5), (2, 4, 5, 1)), EarE((3, 6), (3, 4, 6, 1)), EarE((4, 7), (4, 1, 7, 2)))
    dec = EarDecomposition(O, ears)
    assert is_valid(dec)
    C, M = compress_octahedron_F0(dec)
    assert is_valid(C) and is_pure(M) and f_vec(M) == h_of(dec)
    with pytest.raises(CapacityExhausted):
        compress_octahedron_F0(EarDecomposition(O, ears[1:4] + (EarE((4, 5), (4, 1, 5, 2)),)))


def test_octahedron_e0_first_b_ear():
    dec = EarDecomposition(O, (EarB(7, (1, 2, 4, 3)), EarF((2, 3, 7))))
    C, M = compress_octahedron_E0(dec)
    assert C.ears == dec.ears
    assert "x7^3" in M.strings()
    assert f_vec(M) == (1, 4, 5, 3) == h_of(dec)


@pytest.mark.parametrize("a,b,bound", [(0, 0, 0), (3, 0, 0), (0, 1, 1), (1, 1, 2), (0, 3, 5), (2, 3, 6)])
def test_eta_f_bound(a, b, bound):
    assert eta_F_max_E0(a, b) == bound


def test_octahedron_e0_bound_enforced():
    # the route reads counts only; this (invalid) input asks for one F-ear too many
    dec = EarDecomposition(O, (EarA(7, (1, 2, 3)), EarF((1, 2, 7))))
    with pytest.raises(EtaFBoundViolation):
        compress_octahedron_E0(dec)


def test_reduce_v1v4_plain():
    dec = EarDecomposition(O, (EarE((1, 4), (1, 2, 4, 5)), EarF((1, 3, 4))))
    log = []
    r = reduce_octahedron_v1v4(dec, log)
    assert r == EarDecomposition(B, (EarB(6, (1, 4, 3, 5)), EarF((1, 2, 3))))
    assert h_of(r) == h_of(dec) == (1, 3, 4, 3)


def test_reduce_v1v4_one_wing_swap():
    dec = EarDecomposition(O, (EarE((1, 4), (1, 2, 4, 3)), EarF((1, 4, 5))))
    log = []
    r = reduce_octahedron_v1v4(dec, log)
    assert r.ears == (EarB(6, (1, 4, 3, 5)), EarF((1, 2, 3)))
    assert any("swap wing 3->5" in line for line in log)
    assert h_of(r) == h_of(dec)


def test_reduce_v1v4_disjoint_wings():
    dec = EarDecomposition(O, (EarE((1, 4), (1, 3, 4, 6)), EarF((1, 2, 4)), EarF((1, 4, 5))))
    log = []
    r = reduce_octahedron_v1v4(dec, log)
    assert r.ears == (EarB(6, (1, 4, 3, 5)), EarF((1, 3, 6)), EarF((1, 2, 3)))
    assert [line.split(":")[0] for line in log[:2]] == ["swap wing 6->2", "swap wing 3->5"]
    assert h_of(r) == h_of(dec)


def test_reduce_v1v4_needs_the_edge():
    with pytest.raises(PreconditionViolation):
        reduce_octahedron_v1v4(EarDecomposition(O, (EarE((2, 5), (2, 4, 5, 1)),)))


def test_shift_constructible_relabels_neighbors():
    g = _labeled_graph(EarDecomposition(O, (EarA(7, (1, 3, 5)),)))
    s = shift_constructible(g)
    assert s.order == (1, 2, 3, 4, 6, 5, 7)
    assert sorted(e for e, lab in s.labels.items() if lab == 7) == [(1, 7), (3, 7), (4, 7)]
    assert s.types == {5: 3, 6: 3, 7: 3}
    assert triangle_count(s) >= triangle_count(g)


def test_reduce_no_v1v4_counts():
    dec = EarDecomposition(O, (EarE((2, 5), (2, 1, 5, 3)), EarF((2, 4, 5))))
    prime, case = reduce_octahedron_no_v1v4(dec)
    assert ear_counts(prime) == (2, 0, 1, 1)
    assert case == 1
    assert h_of(prime) == tuple(a + b for a, b in zip(h_of(dec), (0, 0, 0, 2)))
    rep = pure_witness(dec)
    assert rep.ok and rep.F == (1, 3, 4, 3)
    assert rep.route[-1] == "remove-two-monomials case 1"


def test_shift_route_shortfall_and_fallback():
    dec = EarDecomposition(O, (EarE((2, 5), (2, 4, 5, 1)), EarF((2, 3, 5)), EarF((2, 5, 6))))
    with pytest.raises(CapacityExhausted):
        reduce_octahedron_no_v1v4(dec)
    rep = pure_witness(dec)
    assert rep.ok and rep.F == rep.h == (1, 3, 4, 4)
    assert any("mapped onto (1, 4)" in r for r in rep.route)


@pytest.mark.parametrize("case,dropped", [(1, {"x4^3", "x5^3"}), (2, {"x4^3", "x4^2*x5"}), (3, {"x4^3", "x4*x5^2"})])
def test_remove_two_monomials(case, dropped):
    M = divisor_closure([x(4, 3), x(5, 3), x(4, 2) * x(5), x(4) * x(5, 2), x(4) * x(5) * x(6), x(4, 2) * x(6)])
    out = remove_two_monomials(M, case)
    assert set(M.strings()) - set(out.strings()) == dropped
    assert is_pure(out)
    assert tuple(a - b for a, b in zip(f_vec(M), f_vec(out))) == (0, 0, 0, 2)


def test_remove_two_monomials_errors():
    with pytest.raises(PreconditionViolation):
        remove_two_monomials(divisor_closure([x(4, 3)]), 4)
    with pytest.raises(InternalInvariantError):
        remove_two_monomials(divisor_closure([x(4, 3)]), 1)
    assert [removal_case(b) for b in (0, 1, 2, 5)] == [1, 2, 3, 3]


def test_report_serialization():
    rep = pure_witness(TETRA_1111)
    d = json.loads(rep.to_json())
    assert d["ok"] and d["F"] == [1, 3, 5, 5] and d["counts"] == [1, 1, 1, 1]
    assert set(d["flags"]) == {"compressed_valid", "pure", "F_equals_h", "h_matches_counts"}
    assert rep.to_text().endswith("OK\n")
    assert rep.to_json() == pure_witness(TETRA_1111).to_json()


@settings(max_examples=150, deadline=None)
@given(st.sampled_from(list(BaseSphere)), st.integers(0, 12), st.integers(0, 2**31))
def test_witness_property(base, total, seed):
    dec = gen_decomposition(GenSpec(seed=seed, base=base, total=total))
    rep = pure_witness(dec)
    assert rep.ok, rep.diagnostics
    assert rep.F == rep.h == h_of(dec)
    assert is_valid(rep.compressed)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**31))
def test_compression_depends_only_on_counts(seed):
    rng = random.Random(seed)
    eta = (rng.randint(0, 3), rng.randint(0, 3), rng.randint(0, 3), rng.randint(0, 2))
    decs = []
    for s in (seed, seed + 1):
        try:
            decs.append(gen_decomposition(GenSpec(seed=s, base=T, eta=eta)))
        except Exception:
            return
    c1, m1 = compress_tetra(decs[0])
    c2, m2 = compress_tetra(decs[1])
    assert c1 == c2 and m1 == m2
