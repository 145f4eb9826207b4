import json
import os
import subprocess
import sys

import pytest

from nomsub.cli import main
from nomsub.errors import UnknownSuite
from nomsub.report import law, plain, skipped, to_json
from nomsub.suites import SUITES, SuiteConfig, _assemble, run_suite


def run_cli(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_unknown_suite_raises():
    with pytest.raises(UnknownSuite):
        run_suite("nope")


def test_law_status():
    assert law("x")["status"] == "pass"
    assert law("x", {"w": 1})["status"] == "fail"
    assert skipped("x", "why")["status"] == "skipped"


def test_plain_sorts_sets():
    assert plain({"s": {3, 1, 2}, "t": (1, frozenset({"b", "a"}))}) == {"s": [1, 2, 3], "t": [1, ["a", "b"]]}
    assert to_json({"b": 1, "a": 2}).index('"a"') < to_json({"b": 1, "a": 2}).index('"b"')


def test_duplicate_law_ids_rejected():
    with pytest.raises(ValueError):
        _assemble("s", [law("same"), law("same")])


@pytest.mark.parametrize("name,bound", [("lambda", 2), ("bridges", 3), ("renaming", 3)])
def test_small_suites_pass(name, bound):
    r = run_suite(name, SuiteConfig(bound=bound))
    assert r["summary"]["fail"] == 0 and r["summary"]["pass"] > 0
    ids = [e["id"] for e in r["laws"]]
    assert ids == sorted(ids) and len(ids) == len(set(ids))
    assert r["bounds"] == {name: bound} and "timing" not in r


def test_renaming_suite_reports_verified_counterexamples():
    r = run_suite("renaming", SuiteConfig(bound=3))
    ces = [e["counterexample"] for e in r["laws"] if e["law"].startswith("counterexample")]
    assert len(ces) == 2 and all(c["verified"] for c in ces)


def test_env_bound(monkeypatch):
    monkeypatch.setenv("NOMSUB_BOUND", "2")
    assert SuiteConfig().bound_for("lambda") == 2
    assert SuiteConfig(bound=1).bound_for("lambda") == 1
    monkeypatch.delenv("NOMSUB_BOUND")
    assert SuiteConfig().bound_for("bridges") == 4


def test_cli_run_and_out_file(tmp_path, capsys):
    out = tmp_path / "r.json"
    code, _, _ = run_cli(capsys, "run", "bridges", "--bound", "3", "--out", str(out), "--timing")
    r = json.loads(out.read_text())
    assert code == 0 and r["summary"]["fail"] == 0 and "bridges" in r["timing"]
    assert r["schema_version"] == 1


def test_cli_is_byte_identical_across_hash_seeds(tmp_path):
    outs = []
    for seed in ("1", "2"):
        env = {**os.environ, "PYTHONHASHSEED": seed}
        p = subprocess.run([sys.executable, "-m", "nomsub.cli", "run", "bridges", "--bound", "3"],
                           capture_output=True, env=env, check=True)
        outs.append(p.stdout)
    assert outs[0] == outs[1]


def test_cli_unknown_suite_exit_code(capsys):
    code, out, err = run_cli(capsys, "run", "nope")
    assert code == 2 and out == "" and "UnknownSuite" in err


def test_cli_unknown_object(capsys):
    code, _, err = run_cli(capsys, "tensor", "A", "Bogus")
    assert code == 2 and "UnknownObject" in err
    code, _, err = run_cli(capsys, "presheaf", "y1", "--cat", "Q")
    assert code == 2 and "UnknownObject" in err


def test_cli_tensor_dump(capsys):
    code, out, _ = run_cli(capsys, "tensor", "A", "A", "--stage", "3")
    r = json.loads(out)
    assert code == 0 and r["count"] == 3 and r["kind"] == "sub"
    code, out, _ = run_cli(capsys, "tensor", "--kind", "ren", "A^2", "A", "--stage", "2")
    assert json.loads(out)["count"] == len(json.loads(out)["classes"])


def test_cli_presheaf_dump(capsys):
    code, out, _ = run_cli(capsys, "presheaf", "I_star(PfA@2)", "--cat", "I", "--bound", "3")
    r = json.loads(out)
    assert code == 0 and [len(s["elems"]) for s in r["stages"]] == [1, 2, 4, 7]
    assert r["warnings"] == []


def test_cli_hom_tables(capsys):
    code, out, _ = run_cli(capsys, "hom", "y2", "--cat", "I", "--bound", "4")
    r = json.loads(out)
    assert [len(h["maps"]) for h in r["homs"]] == [0, 0, 2, 6, 12]
    assert r["homs"][2]["maps"][0] == [2, 2, [0, 1]]


def test_cli_orbits(capsys):
    code, out, _ = run_cli(capsys, "orbit", "PfA@2", "--stage", "2")
    assert json.loads(out)["count"] == 3


def test_cli_lambda_bind(capsys):
    code, out, _ = run_cli(capsys, "lambda", "bind", "λx. x y", "--sub", "y=x y")
    assert json.loads(out)["result"] == "λa2. a2 (x y)"


def test_cli_lambda_parse_error(capsys):
    code, _, err = run_cli(capsys, "lambda", "bind", "λ. x")
    assert code == 2 and "ParseError" in err


def test_cli_counterexamples(capsys):
    code, out, _ = run_cli(capsys, "counterexamples")
    r = json.loads(out)
    assert code == 0 and [c["name"] for c in r["counterexamples"]] == ["free-group-relevance", "hom-relevance"]


def test_every_suite_is_registered():
    assert set(SUITES) == {"presheaf-monoidal", "nom-substitution", "bridges", "sheaf", "renaming", "lambda"}
