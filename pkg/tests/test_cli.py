import json
import subprocess
import sys

import pytest

from peircegt.cli import main
from peircegt.fixtures import PARACONSISTENT_MODEL, DATA_DIR


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


@pytest.fixture
def model_file(tmp_path):
    path = tmp_path / "model.json"
    path.write_text(json.dumps(PARACONSISTENT_MODEL))
    return str(path)


def test_parse_formula(capsys):
    code, doc = run(capsys, "parse-formula", "p | q")
    assert code == 0
    assert doc["formula"] == "~p -> q" and doc["primitive"] == "(p -> -T) -> q"


def test_parse_graph(capsys):
    code, doc = run(capsys, "parse-graph", "q (p)")
    assert code == 0 and doc["canonical"] == "(p) q" and doc["size"] == 3


@pytest.mark.parametrize("argv, kind, offset", [
    (("parse-formula", "p ->"), "FormulaSyntaxError", 4),
    (("parse-graph", "(p}"), "GraphSyntaxError", 2),
])
def test_syntax_errors_exit_2(capsys, argv, kind, offset):
    code, doc = run(capsys, *argv)
    assert code == 2 and doc["kind"] == kind and doc["offset"] == offset


def test_translate(capsys):
    code, doc = run(capsys, "translate", "--to", "graph", "p -> q")
    assert (code, doc["output"]) == (0, "(p (q))")
    code, doc = run(capsys, "translate", "--to", "formula", "--report", "((p) (q))")
    assert doc["output"] == "~p -> q" and doc["roundtrip"]["syntactic_identity"]


def test_eval(capsys, model_file):
    code, doc = run(capsys, "eval", "--model", model_file, "--formula", "p -> (-p -> q)")
    assert code == 1 and doc["value"] is False and doc["world"] == "M"
    code, doc = run(capsys, "eval", "--model", model_file, "--formula", "-p & p")
    assert code == 0 and doc["value"] is True
    code, doc = run(capsys, "eval", "--model", model_file, "--formula", "p", "--world", "X")
    assert code == 2 and doc["kind"] == "UnknownWorld"


def test_bad_model_exits_2(capsys, tmp_path):
    path = tmp_path / "m.json"
    path.write_text(json.dumps({"worlds": ["M"], "actual": "M", "rel": []}))
    code, doc = run(capsys, "eval", "--model", str(path), "--formula", "p")
    assert code == 2 and doc["kind"] == "MissingReflexivity"


def test_valid(capsys):
    code, doc = run(capsys, "valid", "--formula", "+p -> p")
    assert code == 0 and doc["verdict"] == "valid" and doc["bound"] == 3
    code, doc = run(capsys, "valid", "--formula", "+p -> (-(+p & q) -> -q)", "--frame", "t")
    assert code == 1 and len(doc["model"]["worlds"]) == 3
    code, doc = run(capsys, "valid", "--formula", "+p -> (-(+p & q) -> -q)", "--frame", "s4")
    assert code == 0


def test_formula_from_file(capsys, tmp_path):
    path = tmp_path / "f.txt"
    path.write_text("p -> p\n")
    code, doc = run(capsys, "valid", "--formula", f"@{path}")
    assert code == 0 and doc["formula"] == "p -> p"


def test_check_proof(capsys):
    code, doc = run(capsys, "check-proof", str(DATA_DIR / "proofs" / "identity.json"))
    assert code == 0 and doc["accepted"] and doc["conclusion"] == "p -> p"
    code, doc = run(capsys, "check-proof", str(DATA_DIR / "proofs" / "mp_shape_mismatch.json"))
    assert code == 1 and "MP shape mismatch" in doc["reason"]
    code, doc = run(capsys, "check-proof", str(DATA_DIR / "proofs" / "syllogism.json"),
                    "--discharge", "p")
    assert code == 0 and doc["conclusion"] == "p -> r" and "proof" in doc


def test_check_derivation(capsys):
    code, doc = run(capsys, "check-derivation",
                    str(DATA_DIR / "derivations" / "scroll_identity.json"))
    assert code == 0 and doc["theorem"] and doc["final"] == "(p (p))"
    code, doc = run(capsys, "check-derivation", str(DATA_DIR / "derivations" / "sid_in_get.json"))
    assert code == 1 and doc["failed_step"] == 1


def test_unknown_rule_exits_2(capsys, tmp_path):
    path = tmp_path / "d.json"
    path.write_text(json.dumps({"start": "", "steps": [{"rule": "R5", "result": "p"}]}))
    code, doc = run(capsys, "check-derivation", str(path))
    assert code == 2 and doc["kind"] == "UnknownRule"


def test_soundness_suite(capsys):
    code, doc = run(capsys, "soundness-suite", "--max-size", "2", "--system", "get4")
    assert code == 0 and doc["sound"] and doc["frame"] == "s4"
    code, doc = run(capsys, "soundness-suite", "--max-size", "5", "--max-worlds", "3",
                    "--atoms", "p", "--rules", "SID_iterate", "--frame", "t")
    assert code == 1 and doc["violations"]


def test_correspondence(capsys):
    code, doc = run(capsys, "correspondence", "--max-worlds", "2")
    assert code == 0 and doc["equivalent"] and doc["frames_checked"] == 5


def test_corpus(capsys):
    code, doc = run(capsys, "corpus")
    assert code == 0 and doc["ok"]
    assert {r["kind"] for r in doc["results"]} >= {"proof", "derivation", "theorem_valid"}


def test_usage_errors_exit_2(capsys):
    assert main([]) == 2
    assert main(["valid"]) == 2
    assert main(["frobnicate"]) == 2
    capsys.readouterr()


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "peircegt", "translate", "--to", "graph", "+p"],
                         capture_output=True, text=True, check=True).stdout
    assert json.loads(out)["output"] == "({p})"
