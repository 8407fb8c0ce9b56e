import json

import pytest

from cobcalc import cli
from cobcalc.criterion import CandidateFamily, stong_family
from cobcalc.symfun import BPoly


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestSnumbers:
    def test_json_rows(self, capsys):
        code, out, _ = run(capsys, "snumbers", "--prime", "3", "--max-d", "4")
        assert code == 0
        rows = json.loads(out)
        assert len(rows) == 4
        first = rows[0]
        assert first == {
            "d": 1,
            "factors": [1, 1, 1, 1],
            "s": "-48",
            "nu": 1,
            "expected": 1,
            "match": True,
        }

    def test_markdown_and_csv(self, capsys):
        code, out, _ = run(capsys, "snumbers", "--prime", "3", "--max-d", "2", "--format", "md")
        assert code == 0
        assert out.splitlines()[0].startswith("| d | factors | s |")
        code, out, _ = run(capsys, "snumbers", "--prime", "3", "--max-d", "2", "--format", "csv")
        assert code == 0
        assert out.splitlines()[0] == "d,factors,s,nu,expected,match"
        assert out.splitlines()[1] == "1,1x1x1x1,-48,1,1,true"

    def test_big_integers_as_decimal_strings(self, capsys):
        _, out, _ = run(capsys, "snumbers", "--prime", "3", "--max-d", "25")
        rows = json.loads(out)
        for row in rows:
            assert isinstance(row["s"], str)
            int(row["s"])

    def test_byte_stable(self, capsys):
        _, out1, _ = run(capsys, "snumbers", "--prime", "5", "--max-d", "6")
        _, out2, _ = run(capsys, "snumbers", "--prime", "5", "--max-d", "6")
        assert out1 == out2

    def test_rows_round_trip_as_family(self, capsys):
        _, out, _ = run(capsys, "snumbers", "--prime", "3", "--max-d", "8")
        fam = cli.family_from_snumbers_rows(json.loads(out))
        assert fam == stong_family(3, 8)


class TestVerifyGenerators:
    def test_default_family_passes(self, capsys):
        code, out, _ = run(capsys, "verify-generators", "--prime", "3", "--max-d", "4")
        assert code == 0
        report = json.loads(out)
        assert report["pass"] is True
        assert [r["d"] for r in report["rows"]] == [1, 2, 3, 4]

    def test_family_file(self, capsys, tmp_path):
        fam = CandidateFamily("msp", {1: 6, 2: 1})
        path = tmp_path / "family.json"
        path.write_text(json.dumps(cli.family_to_json(fam)))
        code, out, _ = run(
            capsys, "verify-generators", "--prime", "3", "--max-d", "2", "--family", str(path)
        )
        assert code == 0
        fam_bad = fam.with_entry(1, 9)
        path.write_text(json.dumps(cli.family_to_json(fam_bad)))
        code, out, _ = run(
            capsys, "verify-generators", "--prime", "3", "--max-d", "2", "--family", str(path)
        )
        assert code == 1
        report = json.loads(out)
        assert report["pass"] is False
        assert report["rows"][0]["reason"] == "valuation 2, required 1"

    def test_all_primes(self, capsys, tmp_path):
        fam = CandidateFamily("msp", {1: 3, 2: 5, 3: 1, 4: 3, 5: 1, 6: 1})
        path = tmp_path / "family.json"
        path.write_text(json.dumps(cli.family_to_json(fam)))
        code, out, _ = run(
            capsys,
            "verify-generators",
            "--all-primes-up-to",
            "5",
            "--max-d",
            "6",
            "--family",
            str(path),
        )
        assert code == 0
        report = json.loads(out)
        assert report["primes"] == [3, 5]
        assert report["pass"] is True

    def test_all_primes_default_construction(self, capsys):
        code, out, _ = run(
            capsys, "verify-generators", "--all-primes-up-to", "7", "--max-d", "6"
        )
        assert code == 0
        assert json.loads(out)["primes"] == [3, 5, 7]

    def test_family_round_trip(self):
        fam = stong_family(5, 9)
        assert cli.family_from_json(cli.family_to_json(fam)) == fam


class TestSteenrodCommand:
    def test_anchor_value(self, capsys):
        code, out, _ = run(capsys, "steenrod", "--prime", "3", "--op", "P2", "--class", "b1")
        assert code == 0
        got = cli.bpoly_from_json(json.loads(out), 3)
        assert got == BPoly({((1, 3),): 2, ((1, 1), (2, 1)): 1}, 3)

    def test_monomial_parsing(self, capsys):
        code, out, _ = run(
            capsys, "steenrod", "--prime", "3", "--op", "P0", "--class", "b1^2*b2"
        )
        assert code == 0
        got = cli.bpoly_from_json(json.loads(out), 3)
        assert got == BPoly({((1, 2), (2, 1)): 1}, 3)

    def test_untwisted_flag(self, capsys):
        code, out, _ = run(
            capsys, "steenrod", "--prime", "3", "--op", "P2", "--class", "b1", "--untwisted"
        )
        assert code == 0
        got = cli.bpoly_from_json(json.loads(out), 3)
        assert got == BPoly({((1, 3),): 1}, 3)

    def test_bad_class_is_usage_error(self, capsys):
        code, _, err = run(capsys, "steenrod", "--prime", "3", "--op", "P2", "--class", "q7")
        assert code == 2
        assert "error" in err

    def test_bpoly_json_round_trip(self):
        p = BPoly({((1, 2), (3, 1)): 2, ((2, 1),): 1}, 5)
        assert cli.bpoly_from_json(cli.bpoly_to_json(p), 5) == p


class TestDecompAndRanks:
    def test_decomp_check(self, capsys):
        code, out, _ = run(capsys, "decomp-check", "--prime", "3", "--max-weight", "20")
        assert code == 0
        rows = json.loads(out)
        assert all(r["equal"] for r in rows)
        assert rows[-1]["weight"] == 20

    def test_ranks(self, capsys):
        code, out, _ = run(capsys, "ranks", "--max-d", "8")
        assert code == 0
        rows = json.loads(out)
        assert [r["rank"] for r in rows][:5] == [1, 2, 3, 5, 7]
        assert all(r["equal"] for r in rows)


class TestPartitionTools:
    def test_enumeration(self, capsys):
        code, out, _ = run(
            capsys, "partition-tools", "--weight", "4", "--predicate", "even"
        )
        assert code == 0
        assert json.loads(out) == [[4], [2, 2]]

    def test_even_non_ladic(self, capsys):
        code, out, _ = run(
            capsys,
            "partition-tools",
            "--weight",
            "8",
            "--predicate",
            "even-non-ladic",
            "--prime",
            "3",
        )
        assert code == 0
        assert json.loads(out) == [[4, 4]]

    def test_predicates(self, capsys):
        code, out, _ = run(capsys, "partition-tools", "--is-even", "4,2")
        assert code == 0
        assert json.loads(out) == {"partition": [4, 2], "is_even": True}
        code, out, _ = run(capsys, "partition-tools", "--is-ladic", "8,4", "--prime", "3")
        assert code == 0
        assert json.loads(out)["is_ladic"] is True


class TestUToB:
    def test_output_schema(self, capsys):
        code, out, _ = run(capsys, "u-to-b", "--partition", "4,2")
        assert code == 0
        assert json.loads(out) == [
            {"exponents": {"1": 1, "2": 1}, "coeff": 1},
            {"exponents": {"3": 1}, "coeff": -3},
        ]

    def test_parity_usage_error(self, capsys):
        code, _, err = run(capsys, "u-to-b", "--partition", "3")
        assert code == 2


class TestChowCommand:
    def test_spec_expression(self, capsys, tmp_path):
        payload = {
            "space": [1, 1, 1, 1],
            "expr": {"op": "deg", "of": {"op": "pow", "base": "alpha", "n": 4}},
        }
        path = tmp_path / "expr.json"
        path.write_text(json.dumps(payload))
        code, out, _ = run(capsys, "chow", "--input", str(path))
        assert code == 0
        assert json.loads(out) == {"space": [1, 1, 1, 1], "deg": "24"}

    def test_newton_expression(self, capsys, tmp_path):
        payload = {
            "space": [1, 1],
            "expr": {"op": "newton", "bundle": "tangent", "n": 2},
        }
        path = tmp_path / "expr.json"
        path.write_text(json.dumps(payload))
        code, out, _ = run(capsys, "chow", "--input", str(path))
        assert code == 0
        assert json.loads(out) == {"space": [1, 1], "class": []}

    def test_cf_expression(self, capsys, tmp_path):
        payload = {
            "space": [3],
            "expr": {
                "op": "cf",
                "bundle": {"terms": [{"sign": -1, "twist": [1]}]},
                "partition": [2],
            },
        }
        path = tmp_path / "expr.json"
        path.write_text(json.dumps(payload))
        code, out, _ = run(capsys, "chow", "--input", str(path))
        assert code == 0
        assert json.loads(out) == {
            "space": [3],
            "class": [{"exponents": [2], "coeff": "-1"}],
        }

    def test_class_json_round_trip(self, capsys, tmp_path):
        from cobcalc.chow import ProjProduct, alpha

        space = ProjProduct((2, 3))
        value = alpha(space) ** 3
        payload = {
            "space": [2, 3],
            "expr": {"op": "pow", "base": "alpha", "n": 3},
        }
        path = tmp_path / "expr.json"
        path.write_text(json.dumps(payload))
        _, out, _ = run(capsys, "chow", "--input", str(path))
        rows = json.loads(out)["class"]
        assert cli.chow_class_from_json(space, rows) == value


class TestDispatch:
    def test_unknown_subcommand_exits_2(self, capsys):
        with pytest.raises(SystemExit) as exc:
            cli.main(["no-such-command"])
        assert exc.value.code == 2

    def test_missing_required_flag_exits_2(self, capsys):
        with pytest.raises(SystemExit) as exc:
            cli.main(["snumbers", "--max-d", "3"])
        assert exc.value.code == 2

    def test_output_file(self, capsys, tmp_path):
        path = tmp_path / "report.json"
        code, out, _ = run(
            capsys, "snumbers", "--prime", "3", "--max-d", "2", "--output", str(path)
        )
        assert code == 0
        assert out == ""
        assert json.loads(path.read_text())[0]["d"] == 1

    def test_self_test(self, capsys):
        code, out, err = run(capsys, "self-test")
        assert code == 0
        assert "all passed" in out
        assert "FAIL" not in err
