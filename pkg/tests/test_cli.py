import csv
import io
import json

import pytest

from emulaser import cli_scan
from emulaser.cli_scan import EXIT_CONFIG, EXIT_MISMATCH, EXIT_OK, EXIT_PHYSICS, main


def _run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def _csv(text):
    lines = text.splitlines()
    assert lines[0].startswith("# schema=emulaser.")
    return lines[0], list(csv.DictReader(io.StringIO("\n".join(lines[1:]))))


def test_point_csv(capsys):
    code, out, _ = _run(capsys, "point", "--mode", "electron_dressed", "--e0", "1e6", "--smax", "3")
    assert code == EXIT_OK
    head, rows = _csv(out)
    assert "emulaser.point/1" in head
    assert tuple(rows[0]) == cli_scan.POINT_COLUMNS
    assert rows[0]["s_min"] == "-3" and rows[0]["s_max"] == "3"
    assert len(rows[0]["channels"].split(";")) == 7
    # 9 significant digits
    mant = rows[0]["sdcs_ev2"].split("e")[0]
    assert len(mant.replace(".", "").lstrip("-")) == 9


def test_point_json(capsys):
    code, out, _ = _run(capsys, "point", "--mode", "laser_free", "--format", "json")
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["schema"] == "emulaser.point/1"
    assert doc["result"]["sdcs_ev2"] == pytest.approx(2.5214866917012282e-14, rel=1e-12)
    assert doc["config"]["mode"] == "laser_free"


def test_config_file_and_flag_override(tmp_path, capsys):
    ini = tmp_path / "run.ini"
    ini.write_text("[run]\nmode = laser_free\n[geometry]\ntheta_f_deg = 30\n")
    code, out, _ = _run(capsys, "point", "--config", str(ini), "--theta-f-deg", "60")
    assert code == EXIT_OK
    _, rows = _csv(out)
    assert float(rows[0]["theta_f_deg"]) == 60.0


def test_output_file(tmp_path, capsys):
    dest = tmp_path / "out.csv"
    code, out, _ = _run(capsys, "point", "--mode", "laser_free", "--output", str(dest))
    assert code == EXIT_OK and out == ""
    assert dest.read_text().startswith("# schema=emulaser.point/1")


def test_sweep_excludes_forward_node(capsys):
    code, out, _ = _run(capsys, "sweep", "--preset", "angular-low-incidence", "--theta-i-deg", "0")
    assert code == EXIT_OK
    _, rows = _csv(out)
    # theta_i = 0 series: theta_f = 0 is dropped, -180 and 180 both kept
    series0 = [r for r in rows if float(r["series_value"]) == 0.0]
    assert len(series0) == 36
    assert all(float(r["dcs_ev2"]) > 0 for r in rows)


def test_s_sweep_rows(capsys):
    code, out, _ = _run(capsys, "sweep", "--preset", "envelope-photon-energy")
    assert code == EXIT_OK
    _, rows = _csv(out)
    assert len(rows) == 2 * 161
    assert {r["variable"] for r in rows} == {"s"}


def test_config_error_exit(tmp_path, capsys):
    ini = tmp_path / "bad.ini"
    ini.write_text("[run]\n[laser]\ne0 = -5\n")
    code, _, err = _run(capsys, "point", "--config", str(ini))
    assert code == EXIT_CONFIG
    assert "line 3" in err and "'e0'" in err


def test_bad_flag_value_exit(capsys):
    code, _, err = _run(capsys, "point", "--ekin-ev", "-1")
    assert code == EXIT_CONFIG


def test_sweep_without_variable(capsys):
    assert _run(capsys, "sweep")[0] == EXIT_CONFIG


def test_forward_point_is_physics_error(capsys):
    code, _, err = _run(capsys, "point", "--mode", "laser_free", "--theta-i-deg", "0",
                        "--theta-f-deg", "0")
    assert code == EXIT_PHYSICS
    assert "forward" in err


def test_table1_mismatch_exit(tmp_path, capsys):
    ini = tmp_path / "t.ini"
    ini.write_text("[table1]\ne0_values = 1e5\nmodes = electron_dressed\n"
                   "electron_dressed = 1e-13\ntolerance = 0.02\n")
    code, out, err = _run(capsys, "table1", "--config", str(ini))
    assert code == EXIT_MISMATCH
    assert "MISMATCH" in err
    _, rows = _csv(out)
    assert rows[0]["pass"] == "0"


def test_table1_row_preset(capsys):
    code, out, _ = _run(capsys, "point", "--preset", "golden-point", "--format", "json")
    assert code == EXIT_OK
    assert json.loads(out)["result"]["sdcs_ev2"] == pytest.approx(2.52149e-14, rel=0.02)


def test_threads_do_not_change_bytes(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    args = ["sweep", "--preset", "field-scan-detail"]
    assert main(args + ["--threads", "1", "--output", str(a)]) == EXIT_OK
    assert main(args + ["--threads", "3", "--output", str(b)]) == EXIT_OK
    assert a.read_bytes() == b.read_bytes()


def test_selftest_quick(capsys):
    code, out, _ = _run(capsys, "selftest", "--quick")
    assert code == EXIT_OK
    lines = out.strip().splitlines()
    assert lines and all(line.startswith("PASS") for line in lines)
