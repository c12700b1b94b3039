import json
import subprocess
import sys

import jsonschema
import pytest

from indkit.cli import main, separation_report
from indkit.syntax import parse_proof, print_proof

from .mutants import drop_subtree

VERDICT = {
    "type": "object",
    "required": ["status"],
    "properties": {"status": {"enum": ["accept", "reject"]}},
}
DECIDE = {
    "type": "object",
    "required": ["value", "trace"],
    "additionalProperties": False,
    "properties": {
        "value": {"type": "boolean"},
        "trace": {"type": "array", "items": {
            "type": "object",
            "required": ["var", "case", "before", "after"],
            "additionalProperties": False,
            "properties": {"var": {"type": "string"},
                           "case": {"enum": ["1", "2.1", "2.2", "vacuous"]},
                           "before": {"type": "string"}, "after": {"type": "string"}},
        }},
    },
}
MEASURE = {
    "type": "object",
    "required": ["measure", "set"],
    "properties": {"measure": {"type": "string", "pattern": r"^\d+/\d+$"}, "set": {"type": "object"}},
}
PLAY = {
    "type": "object",
    "required": ["trace", "win"],
    "properties": {
        "trace": {"type": "array", "items": {"type": "array", "items": {"type": "integer"},
                                             "minItems": 2, "maxItems": 2}},
        "win": {"const": True},
    },
}
SEPARATION = {
    "type": "object",
    "required": ["cyclic_proof_accepted", "hydra_true_in_M", "axioms_true_in_M",
                 "le_lemma_accepted", "separated"],
    "properties": {"axioms_true_in_M": {"type": "object",
                                        "additionalProperties": {"type": "boolean"}}},
}


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, schema, *argv):
    code, out, _ = run(capsys, "--format", "json", *argv)
    data = json.loads(out)
    jsonschema.validate(data, schema)
    return code, data


def test_check_accepts_the_cyclic_proof(capsys, corpus_dir, tmp_path):
    graph = tmp_path / "g.json"
    code, out, _ = run(capsys, "check", "--system", "clkid", "--emit-trace-graph", str(graph),
                       str(corpus_dir / "clkid" / "hydra.proof"))
    assert code == 0 and out.strip() == "accept"
    assert set(json.loads(graph.read_text())) == {"root", "vertices", "edges"}


def test_check_lemma_and_its_mutant(capsys, corpus_dir, tmp_path):
    path = corpus_dir / "lkid" / "lemma_le_zero.proof"
    code, data = run_json(capsys, VERDICT, "check", "--system", "lkid", "--axiom", "zero-axiom", str(path))
    assert code == 0 and data["status"] == "accept"
    script = parse_proof(path.read_text())
    root = script.nodes[script.root]
    mutant = tmp_path / "mutant.proof"
    mutant.write_text(print_proof(drop_subtree(script, root.id, root.children[-1])))
    code, data = run_json(capsys, VERDICT, "check", "--system", "lkid", str(mutant))
    assert code == 1 and data["status"] == "reject"


def test_check_rejects_cyclic_proof_as_lkid(capsys, corpus_dir):
    code, out, _ = run(capsys, "check", "--system", "lkid", str(corpus_dir / "clkid" / "hydra.proof"))
    assert code == 1 and out.startswith("reject")


def test_check_parse_and_io_errors(capsys, tmp_path):
    bad = tmp_path / "bad.proof"
    bad.write_text("(root 0) (node 0")
    assert run(capsys, "check", "--system", "lkid", str(bad))[0] == 2
    assert run(capsys, "check", "--system", "lkid", str(tmp_path / "missing"))[0] == 2


def test_decide_text_and_json(capsys):
    code, out, _ = run(capsys, "decide", "(ex x (p x x))")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "true"
    for line in lines[1:]:
        jsonschema.validate(json.loads(line), DECIDE["properties"]["trace"]["items"])
    code, data = run_json(capsys, DECIDE, "decide", "(all x (all y (imp (and (N x) (N y)) (p x y))))")
    assert code == 0 and data["value"] is False and len(data["trace"]) >= 2


def test_decide_open_formula_is_an_error(capsys):
    assert run(capsys, "decide", "(N x)")[0] == 2
    assert run(capsys, "decide", "(N x")[0] == 2


def test_qe(capsys):
    code, out, _ = run(capsys, "qe", "(ex y (= x (s y)))")
    # x lies in the range of the successor
    assert code == 0 and out.strip() == "(rel s1.s1~ x x)"
    code, out, _ = run(capsys, "--format", "json", "qe", "(ex y (= x (s y)))")
    assert json.loads(out)["display"] == "s1.s1~(x,x)"


def test_measure(capsys, tmp_path):
    code, out, _ = run(capsys, "measure", "(N x)", "--var", "x")
    assert code == 0 and out.strip() == "1/1"
    dest = tmp_path / "s.json"
    code, data = run_json(capsys, MEASURE, "measure", "(= x 0)", "--var", "x", "--emit-set", str(dest))
    assert data["measure"] == "0/1" and json.loads(dest.read_text()) == data["set"]


def test_hydra_play(capsys):
    code, out, _ = run(capsys, "hydra", "play", "1", "4")
    assert code == 0 and out.strip() == "(1,4)(0,2)(1,0) WIN"
    code, data = run_json(capsys, PLAY, "hydra", "play", "5", "7")
    assert code == 0 and data["trace"][0] == [5, 7]
    assert run(capsys, "hydra", "play", "-1", "2")[0] == 2


def test_hydra_cert(capsys, tmp_path, corpus_dir):
    dest = tmp_path / "h.proof"
    code, out, _ = run(capsys, "hydra", "cert", "--out", str(dest))
    assert code == 0 and out.rstrip().endswith("accept")
    assert parse_proof(dest.read_text()) == parse_proof((corpus_dir / "clkid" / "hydra.proof").read_text())


def test_demo_separation(capsys):
    code, out, _ = run(capsys, "demo", "separation")
    assert code == 0
    assert "H in M: false" in out and "separation: yes" in out
    assert "not conservative" in out
    code, data = run_json(capsys, SEPARATION, "demo", "separation")
    assert data == separation_report()


def test_unknown_subcommand_exits_2(capsys):
    with pytest.raises(SystemExit) as e:
        main(["frobnicate"])
    assert e.value.code == 2
    with pytest.raises(SystemExit) as e:
        main([])
    assert e.value.code == 2


def test_window_scale_flag(capsys, monkeypatch):
    monkeypatch.delenv("INDKIT_WINDOW", raising=False)
    assert run(capsys, "--window-scale", "2", "decide", "(ex x (N x))")[0] == 0
    import os
    assert os.environ["INDKIT_WINDOW"] == "2"


def test_exit_codes_are_stable_in_a_subprocess(corpus_dir):
    cmd = [sys.executable, "-m", "indkit", "check", "--system", "clkid",
           str(corpus_dir / "clkid" / "hydra.proof")]
    codes = {subprocess.run(cmd, capture_output=True).returncode for _ in range(2)}
    assert codes == {0}
    bad = subprocess.run([sys.executable, "-m", "indkit", "nope"], capture_output=True)
    assert bad.returncode == 2
