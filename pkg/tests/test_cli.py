import io
import json
import subprocess
import sys

import pytest

from psear import cli
from psear.ears import BaseSphere, EarA, EarB, EarDecomposition, EarE, EarF, dumps_instance, loads_instance
from psear.errors import IdentityViolation


def run(*argv):
    out = io.StringIO()
    code = cli.run(list(argv), out)
    return code, out.getvalue()


@pytest.fixture
def inst(tmp_path):
    def write(dec, name="in.json"):
        p = tmp_path / name
        p.write_text(dumps_instance(dec))
        return str(p)

    return write


TETRA_1111 = EarDecomposition(BaseSphere.TETRAHEDRON, (EarB(5, (1, 2, 3, 4)), EarA(6, (1, 2, 3)), EarE((4, 6), (4, 1, 6, 2)), EarF((2, 4, 5))))


def test_hvec_octahedron(inst):
    code, out = run("hvec", inst(EarDecomposition(BaseSphere.OCTAHEDRON)))
    assert code == 0
    assert out == "f = (1,6,12,8)\nh = (1,3,3,1)\n"
    code, out = run("hvec", "--json", inst(EarDecomposition(BaseSphere.OCTAHEDRON)))
    assert json.loads(out) == {"f": [1, 6, 12, 8], "h": [1, 3, 3, 1]}


def test_check_oseq():
    code, out = run("check-oseq", "1,3,5,3")
    assert code == 0
    assert out.startswith("pure O-sequence: 12 monomials\n")
    assert len(out.splitlines()[1].split()) == 12
    code, out = run("check-oseq", "1,3,1")
    assert (code, out) == (1, "not a pure O-sequence\n")
    code, out = run("check-oseq", "--budget", "2", "1,5,12,8")
    assert code == 2 and out.startswith("budget exhausted")
    code, out = run("check-oseq", "--json", "1,2,2,1")
    d = json.loads(out)
    assert code == 0 and d["status"] == "witness" and len(d["monomials"]) == 6


def test_check_oseq_caps_and_parse():
    code, _ = run("check-oseq", "1,7,1")
    assert code == 1
    code, _ = run("check-oseq", "1,a,3")
    assert code == 64
    assert run("check-oseq", "--no-caps", "1,7,1")[0] == 1
    code, out = run("check-oseq", "--no-caps", "1,7,4")
    assert code == 0 and out.startswith("pure O-sequence: 12 monomials")


def test_witness(inst, tmp_path):
    code, out = run("witness", inst(TETRA_1111))
    assert code == 0
    assert "F = (1,3,5,5)" in out and out.endswith("OK\n")
    target = tmp_path / "rep.json"
    code, out = run("witness", "--json", "--out", str(target), inst(TETRA_1111))
    assert code == 0 and out == ""
    d = json.loads(target.read_text())
    assert d["ok"] and d["F"] == [1, 3, 5, 5]


def test_verify(inst):
    code, out = run("verify", inst(TETRA_1111))
    assert code == 0
    assert out == "valid: tetrahedron base, 4 ears, 6 vertices, counts (A,B,E,F) = (1,1,1,1)\n"
    bad = EarDecomposition(BaseSphere.TETRAHEDRON, (EarF((1, 2, 3)),))
    code, out = run("verify", inst(bad))
    assert code == 1 and out.startswith("invalid: ear 0:")
    code, out = run("verify", "--json", inst(bad))
    assert json.loads(out)["valid"] is False


def test_verify_dump_graph(inst):
    code, out = run("verify", "--dump-graph", inst(EarDecomposition(BaseSphere.BIPYRAMID)))
    assert code == 0 and "v 5 3\n" in out and "e 1 5 5\n" in out
    code, out = run("verify", "--dump-graph", inst(EarDecomposition(BaseSphere.OCTAHEDRON)))
    assert code == 0 and "# no labeled graph" in out


def test_parse_errors(tmp_path, capsys):
    p = tmp_path / "bad.json"
    p.write_text('{"base": "tetrahedron", "ears": [{"type": "A", "apex": 5}]}')
    assert run("verify", str(p))[0] == 64
    assert "ears[0].cycle" in capsys.readouterr().err
    assert run("hvec", str(tmp_path / "missing.json"))[0] == 64
    with pytest.raises(SystemExit) as info:
        cli.run(["frobnicate"])
    assert info.value.code == 64
    with pytest.raises(SystemExit) as info:
        cli.run(["gen", "--base", "cube"])
    assert info.value.code == 64


def test_internal_failure_maps_to_70(inst, monkeypatch, capsys):
    def boom(dec):
        raise IdentityViolation("forced")

    monkeypatch.setattr(cli, "pure_witness", boom)
    assert run("witness", inst(TETRA_1111))[0] == 70
    assert "forced" in capsys.readouterr().err


def test_gen_verify_compress_round_trip(tmp_path):
    p = tmp_path / "g.json"
    code, out = run("gen", "--base", "octahedron", "--eta", "1,1,2,2", "--seed", "5", "--out", str(p))
    assert code == 0 and out == ""
    assert run("verify", str(p))[0] == 0
    code, out = run("compress", str(p))
    assert code == 0
    q = tmp_path / "c.json"
    q.write_text(out)
    assert run("verify", str(q))[0] == 0
    assert loads_instance(out).base in BaseSphere


def test_gen_infeasible_and_determinism():
    assert run("gen", "--base", "octahedron", "--eta", "0,0,0,1")[0] == 1
    a = run("gen", "--base", "any", "--total", "7", "--seed", "11")
    b = run("gen", "--base", "any", "--total", "7", "--seed", "11")
    assert a == b and a[0] == 0
    code, out = run("gen", "--json", "--eta", "1,0,0,0")
    ears = json.loads(out)["ears"]
    assert code == 0 and len(ears) == 1 and ears[0]["type"] == "A" and ears[0]["apex"] == 5


def test_console_entry_point(tmp_path):
    p = tmp_path / "t.json"
    p.write_text(dumps_instance(EarDecomposition(BaseSphere.TETRAHEDRON)))
    res = subprocess.run([sys.executable, "-m", "psear.cli", "hvec", str(p)], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.endswith("h = (1,1,1,1)\n")
