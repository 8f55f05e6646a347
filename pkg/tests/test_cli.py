import json
import subprocess
import sys

import pytest

from qtop.cli import run
from qtop.scalar import field_init


def _json(capsys, argv):
    code = run(argv)
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip().startswith("{") else out)


def test_smatrix(capsys):
    code, data = _json(capsys, ["--r", "5", "smatrix"])
    assert code == 0
    assert data["colors"] == [0, 2]
    assert data["invertible"]
    ctx = field_init(5)
    assert ctx.from_json(data["matrix"][1][1]) == ctx.qint(9)


def test_verlinde(capsys):
    code, data = _json(capsys, ["--r", "5", "verlinde", "--genus", "1"])
    assert code == 0 and data["dimension"] == 2
    code, data = _json(capsys, ["--r", "5", "verlinde", "--genus", "2", "--graph", "theta"])
    assert data["dimension"] == 5


def test_lprime_fixture(capsys):
    code, data = _json(capsys, ["--r", "3", "lprime", "--diagram", "unknot_P0.tg"])
    assert code == 0
    assert data["surgery"]["ell"] == 0
    assert abs(complex(*data["value"]["approx"]) + 0.19245008972987526) < 1e-12


def test_lprime_explicit_cut(capsys):
    code, a = _json(capsys, ["--r", "3", "lprime", "--diagram", "hopf_P0_P0", "--cut", "2:1"])
    code2, b = _json(capsys, ["--r", "3", "lprime", "--diagram", "hopf_P0_P0"])
    assert code == code2 == 0
    assert a["value"] == b["value"]


def test_rt_and_hennings(capsys):
    code, data = _json(capsys, ["--r", "5", "hennings", "--diagram", "s2xs1"])
    assert code == 0 and data["value"]["approx"] == [0.0, 0.0]
    code, data = _json(capsys, ["--r", "5", "rt", "--diagram", "slide_before"])
    code2, data2 = _json(capsys, ["--r", "5", "rt", "--diagram", "slide_after"])
    assert data["value"] == data2["value"]


def test_table_format(capsys):
    code = run(["--r", "3", "--format", "table", "tables"])
    out = capsys.readouterr().out
    assert code == 0
    assert "modified_trace_of_identity:" in out
    assert "P0: -1+0i" in out


def test_inadmissible_exit_code(capsys):
    assert run(["--r", "3", "lprime", "--diagram", "s2xs1"]) == 2
    assert "inadmissible" in capsys.readouterr().err


def test_parse_error_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.tg"
    bad.write_text("lcoev(V1);\nrev(V2)\n")
    assert run(["--r", "3", "rt", "--diagram", str(bad)]) == 1
    assert "line 2" in capsys.readouterr().err
    assert run(["--r", "3", "rt", "--diagram", "no_such_file"]) == 1


def test_bad_r_and_usage(capsys):
    assert run(["--r", "4", "smatrix"]) == 1
    with pytest.raises(SystemExit) as e:
        run(["--r", "3", "frobnicate"])
    assert e.value.code == 1


def test_verify_r3(capsys):
    code, data = _json(capsys, ["--r", "3", "verify"])
    assert code == 0
    assert data["all_passed"]
    assert "semisimple stabilization vs closed forms" in data["notes"]


def test_console_script_module():
    proc = subprocess.run([sys.executable, "-m", "qtop.cli", "--r", "5", "verlinde", "--genus", "3"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["dimension"] == 15
