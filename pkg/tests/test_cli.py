"""
Tests for the orbichern command-line interface.
"""

import json

import pytest

from orbichern.cli import EXIT_BUDGET, EXIT_OK, EXIT_USAGE, create_parser, main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out.strip(), captured.err


class TestParser:
    """Argument parsing."""

    def test_parser_creation(self):
        parser = create_parser()
        args = parser.parse_args(["jseq", "--group", "Z", "--max", "3"])
        assert args.command == "jseq"
        assert args.format == "text"

    def test_version(self, capsys):
        code, out, _ = run(capsys, "--version")
        assert code == EXIT_OK
        assert out == "orbichern v0.1.0"

    def test_no_command(self, capsys):
        code, _, err = run(capsys)
        assert code == EXIT_USAGE
        assert "usage" in err

    def test_bad_choice(self, capsys):
        code, _, _ = run(capsys, "gf", "--theorem", "fermat", "--order", "2")
        assert code == EXIT_USAGE


class TestJSeq:
    """orbichern jseq"""

    def test_free_abelian(self, capsys):
        assert run(capsys, "jseq", "--group", "Z^2", "--max", "6")[:2] == (EXIT_OK, "1 3 4 7 6 12")

    def test_cyclic_and_trivial(self, capsys):
        assert run(capsys, "jseq", "--group", "Z/4", "--max", "4")[1] == "1 1 0 1"
        assert run(capsys, "jseq", "--group", "1", "--max", "3")[1] == "1 0 0"

    def test_conjugacy(self, capsys):
        code, out, _ = run(capsys, "jseq", "--group", "<a,b | a^2, b^3, abab>", "--max", "3",
                           "--conjugacy")
        assert code == EXIT_OK
        assert out.splitlines() == ["1 1 3", "1 1 1"]

    def test_json(self, capsys):
        code, out, _ = run(capsys, "jseq", "--group", "Z^2", "--max", "3", "--format", "json")
        obj = json.loads(out)
        assert obj["source"] == "Z^2"
        assert [e["value"] for e in obj["j"]] == [1, 3, 4]
        assert obj["j"][0]["provenance"] == "closed-form"

    def test_csv(self, capsys):
        out = run(capsys, "jseq", "--group", "Z", "--max", "2", "--format", "csv")[1]
        assert out.splitlines() == ["r,j", "1,1", "2,1"]

    def test_parse_error(self, capsys):
        code, _, err = run(capsys, "jseq", "--group", "Q^2", "--max", "3")
        assert code == EXIT_USAGE
        assert err.startswith("orbichern:")

    def test_budget(self, capsys):
        code, _, err = run(capsys, "jseq", "--group", "<a,b>", "--max", "4", "--budget", "10")
        assert code == EXIT_BUDGET
        assert "budget" in err

    def test_invalid_budget(self, capsys):
        code, _, _ = run(capsys, "jseq", "--group", "Z", "--max", "2", "--budget", "-5")
        assert code == EXIT_USAGE


class TestHomCount:
    """orbichern homcount"""

    def test_symmetric(self, capsys):
        code, out, _ = run(capsys, "homcount", "--group", "Z", "--n", "3")
        obj = json.loads(out)
        assert code == EXIT_OK
        assert obj["total"] == 6
        assert {tuple(e["type"]): e["count"] for e in obj["by_type"]} == {
            (3, 0, 0): 1, (1, 1, 0): 3, (0, 0, 1): 2}

    def test_wreath(self, capsys):
        obj = json.loads(run(capsys, "homcount", "--group", "Z^2", "--n", "2", "--target", "Z/2")[1])
        assert obj["total"] == 40
        assert obj["target"] == "Z/2 wr S2"

    def test_csv(self, capsys):
        out = run(capsys, "homcount", "--group", "Z", "--n", "2", "--format", "csv")[1]
        assert out.splitlines()[0] == "type,count"


class TestGeneratingFunctions:
    """orbichern gf"""

    def test_macdonald(self, capsys):
        assert run(capsys, "gf", "--theorem", "macdonald", "--chi", "2", "--order", "5")[1] == \
            "1,2,3,4,5,6"

    def test_macdonald_needs_chi(self, capsys):
        assert run(capsys, "gf", "--theorem", "macdonald", "--order", "3")[0] == EXIT_USAGE

    def test_muller(self, capsys):
        out = run(capsys, "gf", "--theorem", "muller", "--group", "Z", "--target", "Z/2",
                  "--order", "4")[1]
        assert out == "1,1,1,1,1"

    def test_dw_symbolic(self, capsys):
        out = run(capsys, "gf", "--theorem", "dw", "--group", "Z", "--order", "2", "--symbolic")[1]
        assert out == "1 + z·D1(c) + z^2·( 1/2·D1(c)^2 + 1/2·D2(c) )"

    def test_dw_specialized(self, capsys):
        assert run(capsys, "gf", "--theorem", "dw", "--group", "Z^2", "--order", "5")[1] == \
            "1,1,2,3,5,7"

    def test_bryan_fulman(self, capsys):
        out = run(capsys, "gf", "--theorem", "bryan-fulman", "--group", "Z^3", "--chi", "1",
                  "--order", "3")[1]
        assert out == "1,1,4,8"

    def test_tamanoi(self, capsys):
        out = run(capsys, "gf", "--theorem", "tamanoi", "--group", "Z^2", "--chi", "2",
                  "--order", "2")[1]
        assert out == "1,2,5"

    def test_tamanoi_needs_free_abelian(self, capsys):
        code = run(capsys, "gf", "--theorem", "tamanoi", "--group", "Z/2", "--chi", "1",
                   "--order", "2")[0]
        assert code == EXIT_USAGE

    def test_dw_wreath_matches_muller(self, capsys):
        wreath = run(capsys, "gf", "--theorem", "dw-wreath", "--group", "Z^2", "--target", "Z/2",
                     "--order", "3")[1]
        muller = run(capsys, "gf", "--theorem", "muller", "--group", "Z^2", "--target", "Z/2",
                     "--order", "3")[1]
        assert wreath == muller
        assert wreath.startswith("1,2,5,")

    def test_json(self, capsys):
        out = run(capsys, "gf", "--theorem", "macdonald", "--chi", "1/2", "--order", "1",
                  "--format", "json")[1]
        assert json.loads(out) == {"trunc": 1, "coeffs": [["1", "1"], ["1", "2"]]}


class TestExpand:
    """orbichern expand"""

    def test_inverse_binomial(self, capsys):
        out = run(capsys, "expand", "--coeffs=-1", "--exponent=-1", "--order", "2")[1]
        assert out == "1 + z·D1(c) + z^2·( 1/2·D1(c)^2 + 1/2·D2(c) )"

    def test_standard(self, capsys):
        out = run(capsys, "expand", "--coeffs", "1,1/2", "--base", "x", "--order", "2",
                  "--standard")[1]
        assert out == "z·D1(x) + z^2·1/2·D2(x)"

    def test_json(self, capsys):
        out = run(capsys, "expand", "--coeffs", "1", "--order", "1", "--format", "json")[1]
        obj = json.loads(out)
        assert obj["trunc"] == 1
        assert len(obj["terms"]) == 2


class TestVerify:
    """orbichern verify"""

    def test_lemma_dey(self, capsys):
        code, out, _ = run(capsys, "verify", "--suite", "lemma-dey", "--group", "Z",
                           "--max-order", "2")
        obj = json.loads(out)
        assert code == EXIT_OK
        assert obj["status"] == "pass"
        assert obj["cases"] == 2

    def test_vacuous(self, capsys):
        obj = json.loads(run(capsys, "verify", "--suite", "theorem1", "--group", "Z^9")[1])
        assert obj["vacuous"] is True

    def test_budget(self, capsys):
        code = run(capsys, "verify", "--suite", "theorem1", "--group", "Z^2", "--max-order", "3",
                   "--budget", "10")[0]
        assert code == EXIT_BUDGET


class TestModel:
    """orbichern model"""

    def test_natural_action(self, capsys):
        code, out, _ = run(capsys, "model", "--target", "Z/2", "--group", "Z/2")
        obj = json.loads(out)
        assert code == EXIT_OK
        assert obj["canonical_function"] == ["1/2", "1/2"]
        assert obj["orbit_pushforward"] == [{"orbit": [0, 1], "value": "1"}]

    def test_plain_set_with_report(self, capsys):
        code, out, _ = run(capsys, "model", "--points", "2", "--group", "Z", "--order", "3")
        obj = json.loads(out)
        assert code == EXIT_OK
        assert obj["report"]["status"] == "pass"
        assert obj["orbifold_euler_characteristic"] == "2"

    def test_gset_file(self, capsys, tmp_path):
        path = tmp_path / "swap.json"
        path.write_text(json.dumps({"points": 3, "group": "Z/2", "action": [[1, 0, 2]]}))
        code, out, _ = run(capsys, "model", "--gset", str(path), "--group", "Z", "--order", "2")
        obj = json.loads(out)
        assert code == EXIT_OK
        assert obj["canonical_function"] == ["1/2", "1/2", "1"]
        assert obj["report"]["status"] == "pass"

    def test_missing_file(self, capsys, tmp_path):
        code = run(capsys, "model", "--gset", str(tmp_path / "absent.json"), "--group", "Z")[0]
        assert code == EXIT_USAGE

    @pytest.mark.parametrize("flags", [["--target", "S3", "--points", "2"]])
    def test_exclusive_sources(self, capsys, flags):
        assert run(capsys, "model", "--group", "Z", *flags)[0] == EXIT_USAGE
