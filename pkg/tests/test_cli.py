import csv
import io
import json

import pytest

from pi_codim import algebra as A
from pi_codim.algebra import EVEN, GradedAlgebra
from pi_codim.cli import main


@pytest.fixture
def s2_file(tmp_path):
    path = tmp_path / "s2.json"
    assert main(["build", "--algebra", "S(t=2,inv=orth)", "--out", str(path)]) == 0
    return path


def test_build_writes_loadable_algebra(s2_file):
    alg = A.loads(s2_file.read_text())
    assert alg.dim == 6
    assert alg.construction == {"family": "S", "t": 2, "inv": "orth"}


def test_build_rejects_bad_spec(capsys):
    assert main(["build", "--algebra", "S(t=3,inv=sympl)"]) == 2
    assert "symplectic" in capsys.readouterr().err


def test_verify_s_algebra(tmp_path, capsys):
    path = tmp_path / "s3.json"
    main(["build", "--algebra", "S(t=3,inv=orth)", "--out", str(path)])
    assert main(["verify", str(path), "--samples", "10"]) == 0
    res = json.loads(capsys.readouterr().out)
    assert res["ok"] and res["ad_b_cubed_zero"] and res["matches_construction"]
    assert res["ideal"]["codim"] == 5


def test_verify_generic_algebra_failure(tmp_path, capsys):
    bad = GradedAlgebra("nonjac", [EVEN] * 3, {(0, 1): [(1, 1)], (1, 0): [(1, -1)], (1, 2): [(0, 1)],
                                               (2, 1): [(0, -1)]}, super_lie=True, check=False)
    path = tmp_path / "bad.json"
    path.write_text(A.dumps(bad))
    # loading re-checks the identities and refuses the table
    assert main(["verify", str(path)]) == 2
    data = json.loads(path.read_text())
    data["is_super_lie"] = False
    path.write_text(json.dumps(data))
    assert main(["verify", str(path)]) == 1
    res = json.loads(capsys.readouterr().out)
    assert res["jacobi_violation"] is not None


def test_codim_json_and_csv(s2_file, capsys):
    assert main(["codim", str(s2_file), "--n-max", "4"]) == 0
    table = json.loads(capsys.readouterr().out)
    assert [r["c_gr"] for r in table["rows"]] == ["2", "4", "16", "93"]
    assert main(["codim", str(s2_file), "--n-max", "3", "--format", "csv"]) == 0
    rows = list(csv.DictReader(io.StringIO(capsys.readouterr().out)))
    assert len(rows) == 2 + 3 + 4
    assert rows[-1] == {"n": "3", "k": "3", "m": "0", "codim": "2", "c_gr": "16", "root": "2.519842"}


def test_cochar(s2_file, capsys):
    assert main(["cochar", str(s2_file), "--n", "3"]) == 0
    res = json.loads(capsys.readouterr().out)
    assert res["l_gr"] == "6"
    assert [s["colength"] for s in res["sectors"]] == ["1", "2", "2", "1"]


def test_witness(s2_file, capsys):
    assert main(["witness", str(s2_file), "--p", "1", "--q", "1"]) == 0
    res = json.loads(capsys.readouterr().out)
    assert res["nonzero"] and res["degree"] == 8 and res["sector"] == [3, 5]
    assert res["value"] == {"Y[1,2]": "16"}
    assert main(["witness", str(s2_file), "--pad", "1", "1", "--method", "formal"]) == 0
    assert json.loads(capsys.readouterr().out)["degree"] == 10


def test_report(s2_file, tmp_path):
    out = tmp_path / "report.json"
    assert main(["report", str(s2_file), "--n-max", "4", "--out", str(out)]) == 0
    res = json.loads(out.read_text())
    assert res["ok"]
    assert res["ideal_data"] == {"d0": 2, "d1": 2, "m_hat": 1, "index_all": 2, "index_left": 2}
    ids = [d["id"] for d in res["discrepancies"]]
    assert "yz_relation" in ids and "witness_value" in ids
    yz = next(d for d in res["discrepancies"] if d["id"] == "yz_relation")
    assert yz["computed_holds"] and not yz["stated_holds"]


def test_report_generic_algebra(tmp_path, capsys):
    h = GradedAlgebra("heis", [EVEN] * 3, {(0, 1): [(2, 1)], (1, 0): [(2, -1)]}, super_lie=True)
    path = tmp_path / "h.json"
    path.write_text(A.dumps(h))
    assert main(["report", str(path), "--n-max", "3"]) == 0
    res = json.loads(capsys.readouterr().out)
    assert res["discrepancies"] == [] and res["ok"]


def test_suite_command(tmp_path):
    out = tmp_path / "inv.json"
    assert main(["suite", "involution", "--out", str(out)]) == 0
    assert json.loads(out.read_text())["ok"]


def test_missing_file(capsys):
    assert main(["codim", "/nonexistent/alg.json"]) == 2
