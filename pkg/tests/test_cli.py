import json
import subprocess
import sys
from fractions import Fraction

import pytest

from covercount.cli import run
from covercount.sab import CACHE_HEADER


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def as_json(out):
    data = json.loads(out)
    data.pop("timing", None)
    return data


def value_of(data):
    return Fraction(int(data["value"]["num"]), int(data["value"]["den"]))


def test_hurwitz_text(capsys):
    code, out, _ = call(capsys, "hurwitz", "--degree", "2", *["--profile", "2"] * 4, "--connected")
    assert (code, out) == (0, "1/2\n")


def test_hurwitz_marked_and_disconnected(capsys):
    code, out, _ = call(capsys, "hurwitz", "--degree", "4", *["--profile", "2,2"] * 3, "--marked")
    assert (code, out.strip()) == (0, "2")
    code, out, _ = call(capsys, "hurwitz", "--degree", "4", *["--profile", "3,1"] * 3, "--disconnected")
    assert (code, out.strip()) == (0, "4/3")


def test_s_json(capsys):
    code, out, _ = call(capsys, "s", "--a", "4,2,2", "--b", "", "--mu", "4", "--json")
    data = json.loads(out)
    assert code == 0
    assert data["value"] == {"num": "15", "den": "1"}
    assert data["key"] == "S|a=4,2,2|b=|mu=4" and data["invariant"] == "S"
    assert {"entries", "hits", "misses", "max_depth"} <= set(data["cache"])


def test_empty_s_key(capsys):
    code, out, _ = call(capsys, "s", "--mu", "", "--json")
    assert code == 0 and value_of(json.loads(out)) == 0


def test_verify_appendix(capsys):
    code, out, _ = call(capsys, "verify", "--suite", "appendix", "--max-degree", "6")
    assert code == 0
    assert out.strip().splitlines()[-1].endswith("checks passed")
    assert "FAIL" not in out


@pytest.mark.parametrize("argv", [
    ["verify", "--suite", "twos", "--k", "4"],
    ["verify", "--suite", "u", "--max-degree", "6"],
    ["verify", "--suite", "s"],
])
def test_verify_suites_pass(capsys, argv):
    code, out, _ = call(capsys, *argv)
    assert code == 0 and "FAIL" not in out


def test_verify_json_report(capsys):
    code, out, _ = call(capsys, "verify", "--suite", "s", "--json")
    data = json.loads(out)
    assert code == 0 and data["failed"] == 0 and data["passed"] == len(data["checks"])
    assert all({"expected", "computed", "passed"} <= set(c) for c in data["checks"])


@pytest.mark.parametrize("argv", [
    ["hurwitz", "--degree", "4", "--profile", "3,2"],
    ["hurwitz", "--degree", "4", "--profile", "0,4"],
    ["closed-form", "--lemma", "twos-cycles", "--k", "2", "--a", "2", "--b", "1"],
    ["closed-form", "--lemma", "twos-even"],
    ["s", "--a", "3,2,2", "--mu", "2,1"],
    ["n-twos", "--k", "2", "--mu", "3,2"],
    ["n-twos", "--k", "1", "--mu", "2", "--method", "closed"],
    ["frobnicate"],
    ["hurwitz", "--degree", "two"],
])
def test_invalid_input_exit_one(capsys, argv):
    code, out, err = call(capsys, *argv)
    assert code == 1
    assert err.startswith("covercount:")


def test_budget_exit_three(capsys):
    argv = ["hurwitz", "--degree", "6", *["--profile", "2,1,1,1,1"] * 4, "--max-work", "10"]
    code, out, err = call(capsys, *argv)
    assert code == 3 and out == ""
    code, out, _ = call(capsys, *argv, "--json")
    assert code == 3
    assert json.loads(out)["error"]["code"] == "budget_exceeded"


def test_json_error_shape(capsys):
    code, out, _ = call(capsys, "s", "--a", "3,2,2", "--mu", "2,1", "--json")
    data = json.loads(out)
    assert code == 1 and set(data) == {"error"} and set(data["error"]) == {"code", "message"}


@pytest.mark.parametrize("argv", [
    ["hurwitz", "--degree", "4", "--profile", "4", "--profile", "2,1,1", "--profile", "3,1", "--connected"],
    ["closed-form", "--lemma", "near-cycle-pair", "--degree", "4", "--n", "2", "--a", "2"],
    ["n-twos", "--k", "3", "--mu", "4,2", "--method", "recursive"],
    ["s", "--a", "3,2,2,2", "--b", "2", "--mu", "2,2"],
])
def test_text_and_json_agree(capsys, argv):
    _, text, _ = call(capsys, *argv)
    _, out, _ = call(capsys, *argv, "--json")
    assert Fraction(text.strip()) == value_of(json.loads(out))


def test_json_stable_apart_from_timing(capsys):
    argv = ["s", "--a", "3,3,2,2,2,2", "--mu", "1,1,1,1", "--json"]
    first = as_json(call(capsys, *argv)[1])
    second = as_json(call(capsys, *argv)[1])
    assert first == second
    assert value_of(first) == 38


def test_trace_sums_to_value(capsys):
    code, out, _ = call(capsys, "s", "--a", "3,2,2,2", "--b", "2", "--mu", "2,2", "--trace", "--json")
    data = json.loads(out)
    total = Fraction(int(data["trace"]["constant"]["num"]), int(data["trace"]["constant"]["den"]))
    for row in data["trace"]["terms"]:
        c = Fraction(int(row["coefficient"]["num"]), int(row["coefficient"]["den"]))
        v = Fraction(int(row["child_value"]["num"]), int(row["child_value"]["den"]))
        total += c * v
    assert code == 0 and total == value_of(data) == 10
    assert data["trace"]["rule"] == "reduce-a"   # two parts: merge first


def test_trace_text(capsys):
    code, out, _ = call(capsys, "s", "--a", "4,2,2", "--mu", "4", "--trace")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "15" and lines[1] == "rule: base"


def test_closed_form_oracle(capsys):
    code, out, _ = call(capsys, "closed-form", "--lemma", "twos-complete", "--k", "3", "--oracle", "--json")
    data = json.loads(out)
    assert code == 0 and data["oracle"]["match"] is True
    assert value_of(data) == Fraction(3, 2)


def test_n_twos_both(capsys):
    code, out, _ = call(capsys, "n-twos", "--k", "3", "--mu", "2,2,1,1")
    assert code == 0 and out.split() == ["closed:", "24", "recursive:", "24"]


def test_u_table_text(capsys):
    code, out, _ = call(capsys, "u-table", "--max-degree", "6")
    lines = out.splitlines()
    assert code == 0 and len(lines) == 6
    assert "✗" not in out
    assert lines[-1].split()[:6] == ["6", "255✓", "217✓", "116✓", "52✓", "16✓"]


def test_u_table_json(capsys):
    code, out, _ = call(capsys, "u-table", "--max-degree", "5", "--json")
    data = json.loads(out)
    assert code == 0 and data["ok"] is True
    assert [r["quartic"] for r in data["rows"]] == ["1", "9", "38", "110"]


def test_cache_flag_and_env(capsys, tmp_path, monkeypatch):
    path = tmp_path / "vals.cache"
    call(capsys, "s", "--a", "4,2,2", "--mu", "4", "--cache", str(path))
    assert path.read_text().splitlines() == [CACHE_HEADER, "S|a=4,2,2|b=|mu=4\t15/1"]

    monkeypatch.setenv("COVERCOUNT_CACHE", str(path))
    code, out, _ = call(capsys, "s", "--a", "4,2,2", "--mu", "4", "--json")
    data = json.loads(out)
    assert code == 0 and data["cache"]["hits"] == 1 and value_of(data) == 15
    assert path.read_text().count("\n") == 2


def test_bad_cache_file_is_invalid_input(capsys, tmp_path):
    path = tmp_path / "bad.cache"
    path.write_text("garbage\n")
    code, _, _ = call(capsys, "s", "--a", "4,2,2", "--mu", "4", "--cache", str(path))
    assert code == 1


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "covercount", "n-twos", "--k", "2", "--mu", "4"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout.split() == ["closed:", "3", "recursive:", "3"]
