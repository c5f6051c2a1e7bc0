import json
import subprocess
import sys

import numpy as np
import pytest

from sumrank_kit import golden
from sumrank_kit.cli import int_list, main
from sumrank_kit.io import elems_to_digits, word_from_dict, word_to_dict

SMALL = json.dumps({"q": 3, "m": 3, "s": 2, "k": 2, "n_partition": [3, 3]})


def test_int_list():
    assert int_list("3,4") == [3, 4]
    assert int_list("2..5") == [2, 3, 4, 5]
    assert int_list("1,3..4") == [1, 3, 4]


def test_selftest(capsys):
    assert main(["selftest"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines and all(line.startswith("PASS") for line in lines)


def test_bounds_table(capsys):
    params = json.dumps({"q": 3, "m": 4, "s": 4, "k": 3, "n_partition": [4, 4]})
    assert main(["bounds", "ilrs", "--params", params, "--t", "3..5"]) == 0
    out = capsys.readouterr().out
    assert "unique radius t <= 4" in out
    assert "4,0.0702518" in out
    assert "(out of radius)" in out.splitlines()[-1]


def test_lilrs_bounds_table(capsys):
    params = json.dumps({"q": 3, "m": 3, "s": 3, "k": 3, "n_partition": [3, 3]})
    assert main(["bounds", "lilrs", "--params", params, "--gamma", "6", "--delta", "1"]) == 0
    assert "6,1,0.210755" in capsys.readouterr().out


def test_simulate_writes_csv_and_plot(tmp_path):
    out, fig = tmp_path / "r.csv", tmp_path / "r.png"
    code = main(["simulate", "ilrs", "--params", SMALL, "--t", "1,2", "--trials", "20",
                 "--out", str(out), "--plot", str(fig)])
    assert code == 0
    assert out.read_text().startswith("family,decoder,q,m,ell")
    assert len(out.read_text().splitlines()) == 3
    assert fig.read_bytes()[:4] == b"\x89PNG"


def test_simulate_to_stdout(capsys):
    assert main(["simulate", "lilrs", "--params", SMALL, "--gamma", "1..2", "--delta", "0",
                 "--trials", "10", "--no-timing"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 3 and lines[1].endswith(",0")


def test_simulate_requires_sweep():
    with pytest.raises(SystemExit):
        main(["simulate", "ilrs", "--params", SMALL])


def test_decode_json(tmp_path, capsys):
    F = golden.F27
    code = golden.worked_code()
    (tmp_path / "code.json").write_text(json.dumps(code.to_dict()))
    (tmp_path / "word.json").write_text(
        json.dumps({"R": elems_to_digits(F, np.array(golden.RECEIVED))}))
    rc = main(["decode", "--family", "ilrs", "--code", str(tmp_path / "code.json"),
               "--word", str(tmp_path / "word.json"), "--decoder", "lo"])
    assert rc == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["kind"] == "unique"
    want = [[F.to_digits(c) for c in p.coeffs] for p in golden.MSG]
    assert doc["f"] == [want]


def test_console_entry_point():
    res = subprocess.run([sys.executable, "-m", "sumrank_kit.cli", "selftest"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and "FAIL" not in res.stdout


def test_decode_accepts_matrix_json_and_dumps(tmp_path, capsys):
    F = golden.F27
    code = golden.worked_code()
    (tmp_path / "code.json").write_text(json.dumps(code.to_dict()))
    (tmp_path / "word.json").write_text(
        json.dumps(word_to_dict(F, np.array(golden.RECEIVED), code.partition)))
    dump = tmp_path / "dump.json"
    rc = main(["decode", "--code", str(tmp_path / "code.json"), "--word",
               str(tmp_path / "word.json"), "--decoder", "interp-unique", "--dump", str(dump)])
    assert rc == 0
    assert json.loads(capsys.readouterr().out)["kind"] == "unique"
    doc = json.loads(dump.read_text())
    assert doc["s_prime"] == 2 and doc["D"] == 4
    assert len(doc["R_I"]) == code.n and len(doc["Q_R"]) > 0


def test_matrix_json_round_trip():
    F = golden.F27
    M = np.array(golden.RECEIVED)
    d = word_to_dict(F, M, (3, 3))
    assert (d["rows"], d["cols"], d["partition"]) == (2, 6, [3, 3])
    assert np.array_equal(word_from_dict(F, d, "ilrs"), M)
