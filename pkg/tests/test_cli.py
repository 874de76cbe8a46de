"""Command-line interface: verbs, output formats, exit codes."""

import json

import pytest

from cinfer import catalog
from cinfer.cli import main
from cinfer.structures import CIStructure


@pytest.fixture()
def ex1_file(tmp_path):
    path = tmp_path / "ex1.json"
    path.write_text(json.dumps(catalog.get("EX1").distribution.to_json_dict()))
    return str(path)


class TestCheckCI:
    def test_true_statement(self, ex1_file, capsys):
        assert main(["check-ci", ex1_file, "x _||_ y | "]) == 0
        assert capsys.readouterr().out.strip() == "true"

    def test_false_statement_exit_code(self, ex1_file, capsys):
        assert main(["check-ci", ex1_file, "z _||_ u | "]) == 1
        assert capsys.readouterr().out.strip() == "false"

    def test_compound_statement(self, ex1_file, capsys):
        assert main(["check-ci", ex1_file, "z u _||_ x | "]) == 1
        assert main(["check-ci", ex1_file, "z _||_ u | x y"]) == 0

    def test_json_output(self, ex1_file, capsys):
        assert main(["check-ci", "--json", ex1_file, "x _||_ y | "]) == 0
        assert json.loads(capsys.readouterr().out) == {"holds": True}

    def test_malformed_statement(self, ex1_file, capsys):
        assert main(["check-ci", ex1_file, "x indep y"]) == 2

    def test_unknown_variable(self, ex1_file):
        assert main(["check-ci", ex1_file, "x _||_ q | "]) == 2

    def test_missing_file(self, tmp_path):
        assert main(["check-ci", str(tmp_path / "nope.json"), "x _||_ y | "]) == 2


class TestStructure:
    def test_text_output(self, ex1_file, capsys):
        assert main(["structure", ex1_file]) == 0
        out = capsys.readouterr().out
        assert "(x,y|)" in out and "(z,u|xy)" in out

    def test_json_round_trip(self, ex1_file, capsys):
        assert main(["structure", "--json", ex1_file]) == 0
        parsed = CIStructure.from_json_dict(json.loads(capsys.readouterr().out))
        assert parsed.members == catalog.get("EX1").claimed_statements.members


class TestEntropyAndIngleton:
    def test_entropy_text(self, ex1_file, capsys):
        assert main(["entropy", ex1_file]) == 0
        out = capsys.readouterr().out
        assert "H({}) = 0.000000000000" in out
        assert "H(xyzu)" in out

    def test_ingleton_value(self, ex1_file, capsys):
        assert main(["ingleton", ex1_file, "--xyzu", "x,y,z,u"]) == 0
        value = float(capsys.readouterr().out)
        assert value == pytest.approx(-0.0849495, abs=1e-6)

    def test_ingleton_grouped_variables(self, ex1_file, capsys):
        # compound first group, empty last group: still a valid expression
        assert main(["ingleton", ex1_file, "--xyzu", "x+y,z,u,"]) == 0
        float(capsys.readouterr().out)

    def test_ingleton_wrong_group_count(self, ex1_file, capsys):
        assert main(["ingleton", ex1_file, "--xyzu", "x,y,z"]) == 2


class TestClosure:
    def test_single_statement_closure(self, tmp_path, capsys):
        from cinfer.sets import BasicSet

        base = BasicSet(("x", "y", "z", "u"))
        seed = CIStructure.from_statements(base, [("x", "y", ""), ("x", "z", "y")])
        path = tmp_path / "seed.json"
        path.write_text(seed.dumps())
        assert main(["closure", str(path)]) == 0
        out = capsys.readouterr().out
        assert "(x,z|)" in out and "(x,y|z)" in out

    def test_empty_closure(self, tmp_path, capsys):
        from cinfer.sets import BasicSet

        base = BasicSet(("x", "y", "z", "u"))
        path = tmp_path / "empty.json"
        path.write_text(CIStructure.empty(base).dumps())
        assert main(["closure", str(path)]) == 0
        assert capsys.readouterr().out.strip() == "(empty)"


class TestVerifyVerbs:
    def test_verify_paper_single_check(self, capsys):
        assert main(["verify-paper", "--only", "hxy"]) == 0
        out = capsys.readouterr().out
        assert out.startswith("[PASS] hxy")

    def test_verify_paper_json(self, capsys):
        assert main(["verify-paper", "--only", "example5-closed-form", "--json"]) == 0
        data = json.loads(capsys.readouterr().out)
        assert data[0]["check"] == "example5-closed-form"
        assert data[0]["ok"] is True

    def test_verify_paper_unknown_check(self, capsys):
        assert main(["verify-paper", "--only", "nonsense"]) == 2

    def test_verify_inequality(self, capsys):
        assert main(["verify-inequality", "3", "--samples", "20"]) == 0
        assert "rule 3" in capsys.readouterr().out

    def test_verify_inequality_bad_rule(self, capsys):
        assert main(["verify-inequality", "9"]) == 2


class TestIrreducibles:
    def test_listing(self, capsys):
        assert main(["irreducibles"]) == 0
        out = capsys.readouterr().out
        lines = out.strip().splitlines()
        assert len(lines) == 92
        assert lines[-1].startswith("ffffff")
