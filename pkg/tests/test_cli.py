import csv
import io
import json
import math
import subprocess
import sys

import pytest

from lattice_weyl.cli import COLUMNS, run


def invoke(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def read_csv(text):
    return list(csv.reader(io.StringIO(text)))


def test_count_example(capsys):
    code, out, _ = invoke(capsys, "count", "--tmin", "0", "--tmax", "40", "--steps", "2")
    assert code == 0
    rows = read_csv(out)
    assert rows[0] == COLUMNS["count"]
    assert rows[1] == ["0", "1", "1"]
    assert rows[2][:2] == ["40", "5"] and float(rows[2][2]) == pytest.approx(5 - 10 / math.pi, rel=1e-15)


def test_json_round_trips_csv(capsys):
    args = ["surfaces", "--tmin", "0", "--tmax", "500", "--steps", "7"]
    _, text_csv, _ = invoke(capsys, *args)
    _, text_json, _ = invoke(capsys, *args, "--format", "json")
    rows = read_csv(text_csv)
    records = json.loads(text_json)
    assert [list(r) for r in records][0] == rows[0]
    for rec, row in zip(records, rows[1:]):
        assert [float(v) for v in rec.values()] == [float(v) for v in row]


def test_average_columns(capsys):
    code, out, _ = invoke(capsys, "average", "--tmin", "100", "--tmax", "200", "--steps", "2", "--tol", "1e-4")
    rows = read_csv(out)
    assert code == 0 and rows[0] == COLUMNS["average"]
    for row in rows[1:]:
        exact, series = float(row[1]), float(row[2])
        assert abs(exact - series) <= 1e-3
    code, out, _ = invoke(capsys, "average", "--a1", "2", "--a2", "0.5", "--tmin", "100", "--tmax", "100",
                          "--steps", "1", "--tol", "1e-4")
    assert code == 0 and read_csv(out)[1][4] == ""


def test_figure_output(capsys, tmp_path):
    path = tmp_path / "fig3.csv"
    code, out, _ = invoke(capsys, "figures", "--figure", "3", "--tmin", "10", "--tmax", "39",
                          "--steps", "4", "--out", str(path))
    assert code == 0 and out == ""
    rows = read_csv(path.read_text())
    assert rows[0] == ["t", "A"]
    for t, a in rows[1:]:
        assert float(a) == pytest.approx(1 - float(t) / (8 * math.pi), rel=1e-14)


def test_config_file_with_override(capsys, tmp_path):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"form": {"a1": 1.0, "a2": 1.0}, "t_min": 0.0, "t_max": 40.0, "steps": 2}))
    code, out, _ = invoke(capsys, "count", "--config", str(cfg), "--steps", "3")
    assert code == 0 and len(read_csv(out)) == 4


@pytest.mark.parametrize("argv", [
    ["count", "--tmin", "5", "--tmax", "1"],
    ["count", "--tmin", "-1"],
    ["figures", "--figure", "13"],
    ["figures"],
    ["figures", "--figure", "2", "--tmin", "0"],
    ["count", "--a1", "-1"],
])
def test_usage_errors(capsys, argv):
    code, _, err = invoke(capsys, *argv)
    assert code == 2 and "error" in err


def test_unknown_config_field(capsys, tmp_path):
    cfg = tmp_path / "bad.json"
    cfg.write_text(json.dumps({"radius": 3}))
    assert invoke(capsys, "count", "--config", str(cfg))[0] == 2


def test_budget_exit_code(capsys, monkeypatch):
    monkeypatch.setenv("LATTICE_POINT_BUDGET", "10")
    code, _, err = invoke(capsys, "figures", "--figure", "8", "--tmin", "10", "--tmax", "10", "--steps", "1")
    assert code == 3 and "budget" in err


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "lattice_weyl", "count", "--tmin", "0", "--tmax", "0",
                           "--steps", "1"], capture_output=True, text=True, check=True)
    assert proc.stdout.splitlines() == ["t,N,D", "0,1,1"]
