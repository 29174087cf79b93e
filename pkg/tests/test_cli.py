import csv
import io
import json

import pytest

from polysep.cli import main
from polysep.sep import CSV_COLUMNS


def run(argv):
    out = io.StringIO()
    code = main(argv, out=out)
    return code, out.getvalue()


def test_gen():
    code, text = run(["gen", "-d", "4", "-a", "1"])
    obj = json.loads(text)
    assert code == 0
    assert obj["coeffs"] == ["1", "8", "20", "20", "18"]
    assert obj["degree"] == 4
    assert set(obj["prediction"]) >= {"x0_mid", "delta0", "sep_pred", "exp_pred"}
    assert obj["prediction"]["exp_pred"] == "13/6"


def test_analyze_json():
    code, text = run(["analyze", "-d", "3", "-a", "10", "--json"])
    obj = json.loads(text)
    assert code == 0
    assert abs(obj["e"] - 1.51) < 0.01 and obj["e_pred"] == "13/8"


def test_analyze_key_value():
    code, text = run(["analyze", "-d", "3", "-a", "10"])
    kv = dict(line.split("=", 1) for line in text.splitlines())
    assert json.loads(kv["e_pred"]) == "13/8"


def test_roots_json():
    code, text = run(["roots", "-d", "3", "-a", "10", "--prec", "200"])
    obj = json.loads(text)
    assert obj["converged"] and obj["prec_bits"] >= 200
    assert len(obj["roots"]) == 3
    assert all(set(r) == {"re", "im", "radius"} for r in obj["roots"])


def test_reciprocal_and_mignotte():
    code, text = run(["reciprocal", "-d", "4", "-a", "100"])
    assert code == 0 and json.loads(text)["monic_variant"] is True
    code, text = run(["mignotte", "-d", "4", "-a", "3"])
    assert json.loads(text)["coeffs"] == ["-2", "12", "-18", "0", "1"]


def test_scan_csv(tmp_path):
    argv = ["scan", "-d", "4", "--a-from", "10", "--a-to", "1000", "--a-factor", "10", "--no-timing"]
    code, text = run(argv)
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[0] == CSV_COLUMNS
    assert [r[1] for r in rows[1:]] == ["10", "100", "1000"]
    assert all(r[-1] == "" for r in rows[1:])
    # byte-identical reruns
    assert run(argv)[1] == text
    target = tmp_path / "scan.csv"
    code, out = run(argv + ["--out", str(target)])
    assert out == "" and target.read_text() == text


def test_verify_small():
    code, text = run(["verify", "--d-max", "6", "--a-max", "20"])
    assert code == 0
    assert text.strip().splitlines()[-1].startswith("ALL PASS")


@pytest.mark.parametrize("argv", [
    ["gen", "-d", "2", "-a", "1"],
    ["gen", "-d", "4"],
    ["scan", "-d", "4", "--a-from", "10", "--a-to", "5", "--a-factor", "2"],
    ["scan", "-d", "4", "--a-from", "1", "--a-to", "5", "--a-factor", "1"],
    ["bogus"],
])
def test_flag_errors_exit_2(argv):
    with pytest.raises(SystemExit) as exc:
        run(argv)
    assert exc.value.code == 2


def test_threshold_exit_code(monkeypatch):
    import polysep.cli as cli
    from polysep.errors import ThresholdError

    def boom(*a, **k):
        raise ThresholdError("too small")

    monkeypatch.setattr(cli, "analyze_reciprocal", boom)
    assert run(["reciprocal", "-d", "3", "-a", "1"])[0] == 3


def test_nonconvergence_exit_code(monkeypatch):
    monkeypatch.setenv("POLYSEP_PREC_CAP", "64")
    code, text = run(["roots", "-d", "6", "-a", "100"])
    assert code == 4 and text == ""
