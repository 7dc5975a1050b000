import json
import shutil
import subprocess
import sys

import pytest

from cpd.cli import main
from cpd.groupfile import dumps, spec_for_catalog


@pytest.fixture
def write_group(tmp_path):
    def _write(name, spec=None):
        path = tmp_path / f"{abs(hash(name))}.json"
        path.write_text(spec if spec is not None else dumps(spec_for_catalog(name)))
        return str(path)
    return _write


def run_json(capsys, argv):
    code = main(argv + ["--json"])
    return code, json.loads(capsys.readouterr().out)


def test_check_a4_both(capsys, write_group):
    code, out = run_json(capsys, ["check", write_group("A4"), "--p", "2", "--d", "1", "--method", "both"])
    assert code == 0
    assert out["verdict"] == "non-member" and out["theorem"]["verdict"] == "non-member"
    assert out["agreement"] is True
    unc = [w for w in out["witnesses"] if w["role"] == "uncomplemented"]
    assert [w["order"] for w in unc] == [2]
    for key in ("verdict", "nontrivial", "method", "case", "e", "t", "n", "d", "witnesses", "timings_ms"):
        assert key in out


def test_check_psl27_member(capsys, write_group):
    code, out = run_json(capsys, ["check", write_group("PSL(2,7)"), "--p", "2", "--d", "3"])
    assert code == 0 and out["verdict"] == "member" and out["nontrivial"]


def test_check_vacuous(capsys, write_group):
    code, out = run_json(capsys, ["check", write_group("PSL(2,7)"), "--p", "2", "--d", "5"])
    assert code == 0 and out["verdict"] == "member" and out["nontrivial"] is False


def test_check_order_48_both(capsys, write_group):
    code, out = run_json(capsys, ["check", write_group("singer(2,2,3,2)"), "--p", "2", "--d", "2",
                                  "--method", "both"])
    assert code == 0
    assert (out["case"], out["e"], out["t"], out["n"]) == ("HomogeneousCyclic", 2, 2, 4)
    assert out["agreement"] is True


def test_check_hypothesis_violation_exits_2(capsys, write_group):
    code, out = run_json(capsys, ["check", write_group("PSL(2,7)"), "--p", "7", "--d", "1",
                                  "--method", "theorem"])
    assert code == 2
    assert out["theorem"]["applicable"] is False


def test_check_cap_exceeded_exits_3(capsys, write_group):
    assert main(["check", write_group("M11"), "--p", "11", "--d", "1"]) == 3
    assert "CapExceeded" in capsys.readouterr().err


def test_check_small_cap_exits_3(capsys, write_group):
    assert main(["check", write_group("A5"), "--p", "2", "--d", "1", "--cap", "10"]) == 3


@pytest.mark.parametrize("argv", [
    ["check", "{file}", "--p", "4", "--d", "1"],
    ["check", "{file}", "--p", "2", "--d", "-1"],
    ["check", "{file}", "--p", "2"],
    ["check", "{missing}", "--p", "2", "--d", "1"],
    ["check", "{bad}", "--p", "2", "--d", "1"],
    ["frobnicate"],
    ["catalog", "PSL(2,9)"],
    ["module", "{file}", "end-dim"],
])
def test_bad_input_exits_1(argv, write_group, tmp_path, capsys):
    subs = {"file": write_group("A4"), "missing": str(tmp_path / "missing.json"),
            "bad": write_group("bad", '{"spec_version": 1, "type": "perm", "degree": 2, "gens": []}')}
    argv = [a.format(**subs) for a in argv]
    try:
        code = main(argv)
    except SystemExit as exc:
        code = exc.code
    assert code == 1


def test_module_commands(capsys, write_group):
    f = write_group("singer(2,2,3,2)")
    code, out = run_json(capsys, ["module", f, "decompose"])
    assert code == 0 and (out["e"], out["t"], out["homogeneous"]) == (2, 2, True)
    assert [c["dim"] for c in out["components"]] == [2, 2]
    _, out = run_json(capsys, ["module", f, "count-min"])
    assert out["count"] == 5 == out["formula"]
    _, out = run_json(capsys, ["module", write_group("singer(2,2,3)"), "end-dim"])
    assert out["end_dim"] == 2 and out["cyclic"] is True
    _, out = run_json(capsys, ["module", write_group("diag(5,2,3)"), "homogeneous"])
    assert out["homogeneous"] is False and out["e"] is None


def test_count_min_no_formula_for_noncyclic(capsys, tmp_path):
    spec = {"spec_version": 1, "type": "semidirect", "p": 3, "n": 4,
            "h_generators": [[[0, 1, 0, 0], [2, 0, 0, 0], [0, 0, 0, 1], [0, 0, 2, 0]],
                             [[1, 1, 0, 0], [1, 2, 0, 0], [0, 0, 1, 1], [0, 0, 1, 2]]]}
    path = tmp_path / "q8x2.json"
    path.write_text(json.dumps(spec))
    _, out = run_json(capsys, ["module", str(path), "count-min"])
    assert out["count"] == 4 and "formula" not in out


def test_module_rejects_non_pprime(capsys, tmp_path):
    path = tmp_path / "unip.json"
    path.write_text(json.dumps({"spec_version": 1, "type": "semidirect", "p": 2, "n": 2,
                                "h_generators": [[[1, 1], [0, 1]]]}))
    assert main(["module", str(path), "end-dim"]) == 2


def test_catalog_listing_and_emit(capsys, tmp_path):
    code, out = run_json(capsys, ["catalog"])
    assert code == 0 and "PSL(2,7)" in out["names"]
    target = tmp_path / "psl.json"
    code, out = run_json(capsys, ["catalog", "PSL(2,7)", "--emit", str(target)])
    assert code == 0 and out["order"] == 168
    assert {(m["p"], m["d"]) for m in out["members"]} == {(7, 1), (2, 3)}
    code, out = run_json(capsys, ["check", str(target), "--p", "7", "--d", "1"])
    assert out["verdict"] == "member"


def test_suite_empty_and_small(capsys):
    code, out = run_json(capsys, ["suite", "--corpus", "empty"])
    assert code == 0 and out["passed"] and out["items"] == 0
    code = main(["suite", "--corpus", "small", "--no-properties"])
    assert code == 0
    assert capsys.readouterr().out.strip().endswith("PASS")


def test_text_output(capsys, write_group):
    main(["check", write_group("A4"), "--p", "2", "--d", "1", "--method", "both"])
    text = capsys.readouterr().out
    assert "non-member" in text and "agreement=true" in text


@pytest.mark.skipif(shutil.which("cpd") is None, reason="console script not installed")
def test_console_script_exit_code(write_group):
    res = subprocess.run(["cpd", "check", write_group("A4"), "--p", "2", "--d", "1", "--json"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(res.stdout)["verdict"] == "non-member"


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "cpd.cli", "catalog", "PSL(2,9)"], capture_output=True, text=True)
    assert res.returncode == 1
