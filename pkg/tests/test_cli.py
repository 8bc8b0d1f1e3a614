import json

import pytest

from approxreg import cli
from approxreg.cli import AssertStmt, parse, run_text

DEMO = """ring Q[x0,x1,x2];
ideal J = (x0) * ((x0) + (x1));
ideal K = (x0, x1) ^ (x1, x2);
random P = product(3);
arrangement A = {x0, x1, x0 + x1};
show betti J;
show reg K;
assert reg(J) <= 2;
verify systems J;
verify systems P;
verify derivation_bound A;
"""


def test_smoke_parse():
    s = parse("ring Q[x,y]; ideal J = (x)*((x)+(y)); show betti J;")
    assert len(s.statements) == 3
    s = parse("ring Q[x,y]; ideal J = (x); assert reg(J) <= 2;")
    assert isinstance(s.statements[-1], AssertStmt)


def test_round_trip():
    s = parse(DEMO)
    assert parse(str(s)) == s


def test_syntax_error_points_at_equals():
    code, out = run_text("ring Q[x,y];\nideal = ;")
    assert code == 2
    assert out.startswith("syntax error at 2:7")


def test_undeclared_name():
    code, out = run_text("ring Q[x,y];\nshow reg K;")
    assert code == 2 and "undeclared" in out


def test_module_error_names_statement():
    code, out = run_text("ring Q[x,y];\narrangement A = {x, 2*x};")
    assert code == 2


def test_reg_of_product():
    code, out = run_text("ring Q[x,y];\nideal J = (x)*((x)+(y));\nshow reg J;", fmt="text")
    assert code == 0 and "reg J = 2" in out


def test_derivation_bound_report():
    code, out = run_text("ring Q[x0,x1];\narrangement A = {x0, x1, x0+x1};\nverify derivation_bound A;")
    r = json.loads(out)["results"][0]
    assert code == 0 and r["ok"] and r["reg"] == 2 and r["bound"] == 2


def test_assertion_exit_codes():
    base = "ring Q[x,y];\nideal J = (x)*((x)+(y));\n"
    assert run_text(base + "assert reg(J) == 2;")[0] == 0
    assert run_text(base + "assert reg(J) < 2;")[0] == 1


def test_consistency_exit_code(monkeypatch):
    class Bad:
        ok = False

        def to_json_obj(self):
            return {"ok": False, "regularity": 9}

    monkeypatch.setattr(cli.comb, "verify_r_regularity", lambda e: Bad())
    code, out = run_text("ring Q[x,y];\nideal J = (x);\nverify systems J;")
    assert code == 3 and "consistency" in out


def test_deterministic_json():
    a = run_text(DEMO, seed=11)
    b = run_text(DEMO, seed=11)
    assert a == b and a[0] == 0
    assert json.loads(a[1])["seed"] == 11


def test_main_reads_file(tmp_path, capsys):
    path = tmp_path / "demo.ar"
    path.write_text(DEMO)
    assert cli.main([str(path), "--seed", "3", "--format", "json"]) == 0
    assert json.loads(capsys.readouterr().out)["status"] == 0
    assert cli.main([str(tmp_path / "missing.ar")]) == 2


def test_main_unseeded_prints_seed(tmp_path, capsys):
    path = tmp_path / "s.ar"
    path.write_text("ring Q[x,y];\nideal J = (x);\nshow reg J;\n")
    assert cli.main([str(path)]) == 0
    assert capsys.readouterr().out.splitlines()[-1].startswith("seed ")


@pytest.mark.parametrize("bad", ["GF(4)", "R"])
def test_bad_field_override(tmp_path, bad):
    path = tmp_path / "s.ar"
    path.write_text("ring Q[x];\n")
    assert cli.main([str(path), "--field-override", bad]) == 2
