import json
import subprocess
import sys

import pytest

from toeplitz_fredholm.cli import main

Q = '{"-2":[1,0],"-1":[0.5,0],"0":[0.06,0]}'


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_index_example(capsys):
    code, out, _ = run(capsys, "index", "--coeffs", Q)
    assert code == 0
    d = json.loads(out)
    assert d["status"] == "fredholm" and d["index"] == 2
    assert out.startswith('{"status": "fredholm", "index": 2')


def test_index_both_methods(capsys):
    code, out, _ = run(capsys, "index", "--method", "both", "--coeffs", '{"1":[1,0],"0":[0,2]}')
    d = json.loads(out)
    assert d["index"] == 0 and d["agree"]


def test_zero_symbol_exit_2(capsys):
    code, _, err = run(capsys, "index", "--coeffs", "{}")
    assert code == 2
    assert "zero symbol" in err
    assert len(err.strip().splitlines()) == 1


@pytest.mark.parametrize("argv", [
    ["index", "--coeffs", "not json"],
    ["truncate", "--coeffs", Q, "--N", "0"],
    ["portrait", "--window", "3:-3,0:1", "--out", "x.csv"],
    ["nosuch"],
    ["qhe", "lattice", "--beta", "-1", "--out", "x.csv"],
])
def test_validation_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_computation_error_exit_1(capsys):
    code, out, err = run(capsys, "wrap", "--eps", "0")
    assert code == 1 and out == ""
    assert json.loads(err)["error"] == "not_fredholm"


def test_roots_and_truncate(capsys):
    _, out, _ = run(capsys, "roots", "--coeffs", '{"2":[1,0],"1":[-5,0],"0":[6,0]}')
    assert json.loads(out)["outside"] == 2
    _, out, _ = run(capsys, "truncate", "--coeffs", '{"-1":[1,0]}', "--N", "64")
    d = json.loads(out)
    assert (d["N"], d["magnitude"], d["sign"]) == (64, 1, 1)
    assert len(d["sigmas"]) == 8


def test_shift_flag(capsys):
    # A = 2a + 1 has index 1
    _, out, _ = run(capsys, "index", "--shift", "--coeffs", '{"1":[2,0],"0":[1,0]}')
    assert json.loads(out)["index"] == 1


def test_portrait_and_config(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# small run\nres = 11\nwindow = -3:3,-3:3\n")
    out = tmp_path / "fig.csv"
    code, _, _ = run(capsys, "--config", str(cfg), "portrait", "--out", str(out))
    assert code == 0
    assert len(out.read_text().splitlines()) == 1 + 11 * 11
    # the flag wins over the file
    run(capsys, "--config", str(cfg), "portrait", "--out", str(out), "--res", "5")
    assert len(out.read_text().splitlines()) == 1 + 25


def test_config_unknown_key(tmp_path, capsys):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("resolution=11\n")
    code, _, err = run(capsys, "--config", str(cfg), "portrait", "--out", str(tmp_path / "f.csv"))
    assert code == 2 and "resolution" in err


def test_jumps_thread_invariant(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    base = ["jumps", "--ensemble", "complex", "--degree", "3", "--paths", "20", "--steps", "40"]
    run(capsys, *base, "--threads", "1", "--out", str(a))
    run(capsys, "--threads", "3", *base, "--out", str(b))
    assert a.read_bytes() == b.read_bytes()
    d = json.loads(a.read_text())
    assert set(d) >= {"ensemble", "degree", "counts", "unresolved", "seed"}


def test_qhe_landau(tmp_path, capsys):
    code, out, _ = run(capsys, "qhe", "landau", "--mmax", "3")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "m,w,asymptote,residual" and len(lines) == 4


def test_qhe_lattice(tmp_path, capsys):
    out = tmp_path / "steps.csv"
    code, _, _ = run(capsys, "qhe", "lattice", "--L", "10", "--flux", "1/7", "--emin", "-4",
                     "--emax", "0", "--esteps", "7", "--out", str(out))
    lines = out.read_text().splitlines()
    assert code == 0 and lines[0] == "E,estimate,nearest_int,deviation,flags"
    assert len(lines) == 8


@pytest.mark.parametrize("sub", [["index"], ["roots"], ["truncate"], ["portrait"], ["jumps"],
                                 ["wrap"], ["qhe", "landau"], ["qhe", "lattice"]])
def test_help(capsys, sub):
    code, out, _ = run(capsys, *sub, "--help")
    assert code == 0 and len(out) > 200


def test_console_entry_point():
    r = subprocess.run([sys.executable, "-m", "toeplitz_fredholm", "index", "--coeffs", "{}"],
                       capture_output=True, text=True)
    assert r.returncode == 2 and "zero symbol" in r.stderr
