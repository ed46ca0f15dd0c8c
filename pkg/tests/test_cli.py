import csv
import io
import json
import subprocess
import sys
from decimal import Decimal

import pytest

from cantordist import ensembles
from cantordist.cli import run_cli
from cantordist.exactnum import approximate, parse_exact


def invoke(capsys, *argv):
    code = run_cli(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def rows_of(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_moments_json_example(capsys):
    code, out, _ = invoke(capsys, "moments", "--kind", "solus", "--theta", "1/3", "--n", "10",
                          "--digits", "12", "--format", "json")
    assert code == 0
    record = json.loads(out)
    assert record["command"] == "moments"
    assert record["metadata"]["seed"] == 0
    mu1 = next(r for r in record["rows"] if r["index"] == "mu[1]")
    assert mu1["decimal"].startswith("0.338826")


def test_constants_example(capsys):
    code, out, _ = invoke(capsys, "constants", "--name", "cantor-min", "--digits", "10")
    assert code == 0
    assert rows_of(out)[0]["decimal"] == "1.9967049717"


def test_verify_example(capsys):
    code, out, err = invoke(capsys, "verify", "--suite", "oracle", "--max-len", "12")
    assert code == 0
    assert all(r["exact"] == "0" for r in rows_of(out))
    assert "FAILED" not in err


@pytest.mark.parametrize("argv", [
    ["moments", "--kind", "multus", "--n", "6"],
    ["moments", "--n", "5", "--method", "log"],
    ["moments", "--kind", "solus", "--n", "3", "--length", "8"],
    ["moments", "--kind", "solus", "--n", "3", "--empirical", "8"],
    ["order-stats", "--kind", "solus", "--n", "4"],
    ["order-stats", "--n", "20", "--method", "float"],
    ["bitsums", "--kind", "multus", "--n", "6"],
    ["bitsums", "--kind", "solus", "--density"],
    ["bitsums", "--kind", "solus", "--ratio", "--n", "50"],
    ["bitsums", "--kind", "multus", "--empirical", "9"],
    ["runs", "--kind", "multus", "--bit", "0", "--n", "8"],
    ["runs", "--kind", "solus", "--bit", "0", "--k", "2", "--n", "6"],
    ["runs", "--bit", "1", "--empirical", "8"],
    ["constants", "--name", "gamma", "--arg", "1/2"],
    ["constants", "--name", "phi"],
    ["sample", "--kind", "solus", "--m", "16", "--samples", "4", "--seed", "3"],
    ["enumerate", "--kind", "multus", "--m", "5"],
    ["enumerate", "--kind", "solus", "--m", "25", "--count-only"],
    ["fib-word", "--n", "1000"],
])
def test_rows_round_trip_and_decimals_consistent(capsys, argv):
    code, out, _ = invoke(capsys, *argv)
    assert code == 0
    rows = rows_of(out)
    assert rows
    for r in rows:
        if not r["exact"]:
            continue
        value = parse_exact(r["exact"])
        digits = len(r["decimal"].split(".")[1])
        ref = approximate(value, digits + 2)
        assert abs(Decimal(ref.value) - Decimal(r["decimal"])) <= Decimal(r["error_bound"]) + ref.error_bound


def test_monte_carlo_row(capsys):
    code, out, _ = invoke(capsys, "order-stats", "--method", "mc", "--n", "2", "--samples", "2000",
                          "--which", "max")
    assert code == 0
    row = rows_of(out)[0]
    assert row["index"] == "max[2]" and abs(float(row["decimal"]) - 0.7) < 0.02


def test_identical_invocations_identical_output(capsys):
    argv = ["sample", "--kind", "multus", "--m", "30", "--samples", "5", "--seed", "9", "--format", "json"]
    _, first, _ = invoke(capsys, *argv)
    _, second, _ = invoke(capsys, *argv)
    assert first == second
    mc = ["order-stats", "--method", "mc", "--samples", "3000", "--seed", "4"]
    _, a, _ = invoke(capsys, *mc, "--jobs", "1")
    _, b, _ = invoke(capsys, *mc, "--jobs", "3")
    assert json.dumps(rows_of(a)) == json.dumps(rows_of(b))


@pytest.mark.parametrize("argv,code", [
    (["moments", "--theta", "0.3"], 2),
    (["moments", "--theta", "2/3"], 2),
    (["nonsense"], 2),
    (["runs", "--kind", "solus", "--bit", "1"], 2),
    (["order-stats", "--kind", "multus"], 2),
    (["enumerate", "--m", "40"], 3),
    (["moments", "--empirical", "40"], 3),
])
def test_exit_codes(capsys, argv, code):
    assert run_cli(argv) == code
    assert capsys.readouterr().out == ""


def test_max_len_lifts_guard(capsys, monkeypatch):
    monkeypatch.setattr(ensembles, "MAX_ENUMERATION", 10)
    assert run_cli(["enumerate", "--m", "5"]) == 3
    assert capsys.readouterr().out == ""
    assert run_cli(["enumerate", "--m", "5", "--max-len", "5"]) == 0
    assert len(rows_of(capsys.readouterr().out)) == 32


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "cantordist.cli", "fib-word", "--n", "100"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout.startswith("index,exact,decimal,error_bound")
