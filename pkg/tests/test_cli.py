import json

import pytest

from epsmult.cli import main
from epsmult.ideal_core import MonomialIdeal, parse_ideal


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


class TestH0Command:
    def test_counter_length(self, capsys):
        code, out = run(capsys, "h0", "--ideal", "x*y^2, x^2")
        assert code == 0
        assert json.loads(out) == {"length": 2, "method": "staircase-2d"}

    def test_methods_and_witnesses(self, capsys):
        code, out = run(capsys, "h0", "--ideal", "x*y^2, x^2",
                        "--method", "box", "--witnesses")
        payload = json.loads(out)
        assert code == 0
        assert payload["length"] == 2
        assert sorted(map(tuple, payload["witnesses"])) == [(1, 0), (1, 1)]

class TestExitCodes:
    def test_parse_error_is_1(self, capsys):
        assert main(["h0", "--ideal", "x ** 2"]) == 1

    def test_usage_error_is_1(self, capsys):
        assert main(["h0"]) == 1

    def test_precondition_error_is_2(self, capsys):
        assert main(["h0", "--ideal", "0", "--dim", "2"]) == 2

    def test_inconclusive_is_3(self, capsys, monkeypatch):
        from epsmult import cli as cli_mod
        from epsmult.errors import NoFitError

        def boom(args):
            raise NoFitError("nope", best_period=2, first_fail=(5,))
        monkeypatch.setitem(cli_mod._DISPATCH, "h0", boom)
        assert main(["h0", "--ideal", "x"]) == 3


class TestEpsilonCommand:
    def test_both_methods_agree(self, capsys):
        code, out = run(capsys, "epsilon", "--ideal", "x^2, y^2", "--method", "both")
        payload = json.loads(out)
        assert code == 0
        assert payload["epsilon"] == "4/1"
        assert payload["methods_agree"] is True

    def test_volume_only(self, capsys):
        code, out = run(capsys, "epsilon", "--ideal", "x*y^2, x^2", "--method", "volume")
        payload = json.loads(out)
        assert payload["epsilon_volume"] == "2/1" and payload["volume"] == "1/1"


class TestNewtonCommand:
    def test_full_report(self, capsys):
        code, out = run(capsys, "newton", "--ideal", "[[1,2],[2,0]]")
        payload = json.loads(out)
        assert code == 0
        assert {"normal": [2, 1], "offset": 4} in payload["facets"]
        assert payload["spread"] == 2
        assert payload["epsilon"] == "2/1"

    def test_single_flag(self, capsys):
        code, out = run(capsys, "newton", "--ideal", "x*y", "--spread")
        assert json.loads(out) == {"spread": 1}


class TestMixedCommand:
    def test_grid(self, capsys):
        code, out = run(capsys, "mixed", "--ideals", "x*y^2, x^2; x*y^2, x^2",
                        "--grid", "1:8", "--degree", "2")
        payload = json.loads(out)
        assert code == 0
        assert payload["mixed"] == {"0,2": "2/1", "1,1": "2/1", "2,0": "2/1"}


class TestFamilyCommands:
    @pytest.fixture
    def counter_spec(self, tmp_path):
        path = tmp_path / "counter.json"
        path.write_text('{"d": 2, "rule": {"type": "counter", "a": "n^2"}}')
        return str(path)

    def test_eval(self, capsys, counter_spec):
        code, out = run(capsys, "family", "eval", "--spec", counter_spec, "--n", "3")
        payload = json.loads(out)
        assert code == 0
        assert payload["ideal"] == [[1, 9], [2, 0]]
        assert parse_ideal(payload["text"]) == MonomialIdeal.from_gens(2, [(1, 9), (2, 0)])

    def test_check(self, capsys, counter_spec):
        code, out = run(capsys, "family", "check", "--spec", counter_spec,
                        "--N", "20", "--mode", "graded")
        payload = json.loads(out)
        assert code == 0 and payload["passed"] is True

    def test_growth(self, capsys, counter_spec):
        code, out = run(capsys, "family", "growth", "--spec", counter_spec, "--n", "6")
        payload = json.loads(out)
        assert payload["minimal_c_linear"] == 7

    def test_run_with_normalizer(self, capsys, counter_spec):
        code, out = run(capsys, "family", "run", "--spec", counter_spec,
                        "--range", "1:10", "--normalizer", "n^3")
        payload = json.loads(out)
        assert code == 0
        assert payload["trend"] == "decreasing"
        assert payload["entries"][0] == {"index": 1, "length": 1, "normalized": 1.0}

    def test_run_csv_output(self, capsys, counter_spec):
        code, out = run(capsys, "family", "run", "--spec", counter_spec,
                        "--range", "1:3", "--normalizer", "n^2", "--csv")
        lines = out.strip().splitlines()
        assert lines[0] == "index,length,normalized"
        assert lines[1] == "1,1,1.0"

    def test_csv_to_file(self, capsys, counter_spec, tmp_path):
        target = tmp_path / "out.csv"
        code, _ = run(capsys, "family", "run", "--spec", counter_spec,
                      "--range", "1:3", "--csv", str(target))
        assert code == 0
        assert target.read_text().splitlines()[0] == "index,length"

    def test_missing_spec_file(self, capsys):
        assert main(["family", "eval", "--spec", "/nonexistent.json", "--n", "1"]) == 1


class TestDeltaCommand:
    def test_faces_and_betti(self, capsys):
        code, out = run(capsys, "delta", "--ideal", "x*y^2, x^2", "--point", "0,5")
        payload = json.loads(out)
        assert code == 0
        assert payload["faces"] == [[], [2]]
        assert payload["betti"]["-1"] == 0

    def test_void(self, capsys):
        code, out = run(capsys, "delta", "--ideal", "x*y^2, x^2", "--point", "2,0")
        payload = json.loads(out)
        assert payload["void"] is True and payload["faces"] == []


class TestReproCommand:
    def test_irrational_case(self, capsys):
        code, out = run(capsys, "repro", "--case", "irrational")
        payload = json.loads(out)
        assert code == 0 and payload["pass"] is True

    def test_mixed_grid_case(self, capsys):
        code, out = run(capsys, "repro", "--case", "mixed-grid")
        assert code == 0


class TestDeterminism:
    def test_byte_identical_output(self, capsys):
        _, out1 = run(capsys, "newton", "--ideal", "x*y^2, x^2")
        _, out2 = run(capsys, "newton", "--ideal", "x*y^2, x^2")
        assert out1 == out2

    def test_rationals_are_canonical(self, capsys):
        _, out = run(capsys, "epsilon", "--ideal", "x^2, y^4", "--method", "volume")
        payload = json.loads(out)
        num, den = payload["epsilon"].split("/")
        from math import gcd
        assert gcd(int(num), int(den)) == 1 and int(den) > 0
