import csv
import io
import math
import subprocess
import sys
import xml.etree.ElementTree as ET

import pytest

from fracheb import verify
from fracheb.cli import main, parse_grid


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows_of(text):
    return list(csv.reader(io.StringIO(text)))


def test_ggf_csv_format(capsys):
    code, out, _ = run(capsys, "ggf", "--lambda", "0", "--nu", "0.5,2", "--grid", "-1:1:5")
    assert code == 0
    assert "\r" not in out and out.endswith("\n")
    rows = rows_of(out)
    assert rows[0] == ["x", "nu", "value"]
    assert len(rows) == 1 + 2 * 5
    by_key = {(float(r[0]), float(r[1])): float(r[2]) for r in rows[1:]}
    assert by_key[(0.5, 2.0)] == pytest.approx(2 * 0.25 - 1)
    assert by_key[(-1.0, 0.5)] == pytest.approx(0.0, abs=1e-15)


def test_ggf_values_use_seventeen_digits(capsys):
    _, out, _ = run(capsys, "ggf", "--lambda", "0.3", "--nu", "1.7", "--grid", "0.1:0.1:1")
    value = rows_of(out)[1][2]
    assert float(value) == float(repr(float(value)))
    assert len(value.replace("-", "").replace(".", "").lstrip("0").split("e")[0]) >= 15


def test_ggf_near_endpoint_example(capsys):
    _, out, _ = run(capsys, "ggf", "--lambda", "0", "--nu", "0.5", "--grid", "-0.999999999999:-0.999999999999:1")
    assert abs(float(rows_of(out)[1][2])) < 1e-5


def test_ggf_legendre_curve(capsys):
    _, out, _ = run(capsys, "ggf", "--lambda", "0.5", "--nu", "2", "--grid", "-1:1:9")
    for x, _, v in rows_of(out)[1:]:
        x = float(x)
        assert float(v) == pytest.approx(1.5 * x * x - 0.5, abs=1e-14)


def test_ggf_left_log_trend(capsys):
    _, out, _ = run(capsys, "ggf", "--side", "l", "--lambda", "0.5", "--nu", "1.5", "--grid", "0.9:0.999999:5")
    vals = [abs(float(r[2])) for r in rows_of(out)[1:]]
    assert all(b > a for a, b in zip(vals, vals[1:]))
    _, out, _ = run(capsys, "ggf", "--side", "l", "--lambda", "0.5", "--nu", "1.5", "--grid", "1:1:1")
    assert math.isinf(float(rows_of(out)[1][2]))


def test_ggf_weighted(capsys):
    _, out, _ = run(capsys, "ggf", "--lambda", "1", "--nu", "0", "--grid", "0:0:1", "--weighted")
    assert float(rows_of(out)[1][2]) == pytest.approx(1.0)


@pytest.mark.parametrize("argv", [
    ("ggf", "--lambda", "-0.7"),
    ("ggf", "--grid", "1:0"),
    ("ggf", "--nu", "a,b"),
    ("ggf", "--side", "x"),
    ("coeff", "--family", "power-interior"),
    ("coeff", "--family", "power-endpoint", "--alpha", "0.5", "--theta", "0.1"),
    ("coeff", "--family", "power-interior", "--alpha", "0.5", "--end", "1"),
    ("coeff", "--family", "nonsense", "--alpha", "1"),
    ("verify", "--tol", "0"),
    ("verify", "--suite", "unknown"),
    ("figure",),
    ("figure", "--id", "3"),
    (),
])
def test_usage_errors_exit_two(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == 2


def test_help_exits_zero(capsys):
    code, out, _ = run(capsys, "--help")
    assert code == 0 and "ggf" in out


def test_coeff_examples(capsys):
    code, out, _ = run(capsys, "coeff", "--family", "power-endpoint", "--alpha", "0.5", "--n-max", "4")
    assert code == 0
    rows = rows_of(out)
    assert rows[0] == ["n", "method", "value"]
    assert float(rows[3][2]) == pytest.approx(-4 * math.sqrt(2) / (15 * math.pi), rel=1e-14)

    _, out, _ = run(capsys, "coeff", "--family", "power-interior", "--alpha", "1", "--theta", "0",
                    "--n-max", "6", "--method", "all")
    rows = rows_of(out)[1:]
    assert len(rows) == 7 * 3
    exact = {int(n): float(v) for n, m, v in rows if m == "exact"}
    quad = {int(n): float(v) for n, m, v in rows if m == "quadrature"}
    for n in range(7):
        assert abs(exact[n]) == pytest.approx(abs(quad[n]), rel=1e-10, abs=1e-14)
        if n % 2:
            assert exact[n] == 0.0


def test_coeff_all_marks_unsupported_with_nan(capsys):
    _, out, _ = run(capsys, "coeff", "--family", "power-interior", "--alpha", "2.5", "--theta", "0.3",
                    "--n-max", "4", "--method", "all")
    exact = [float(v) for n, m, v in rows_of(out)[1:] if m == "exact"]
    assert math.isnan(exact[0]) and math.isfinite(exact[4])


def test_coeff_power_smooth(capsys):
    code, out, _ = run(capsys, "coeff", "--family", "power-smooth", "--alpha", "0.5", "--end", "-1",
                       "--taylor", "1,2", "--n-max", "3")
    assert code == 0 and len(rows_of(out)) == 5


def test_coeff_refused_closed_form_is_usage_error(capsys):
    code, _, err = run(capsys, "coeff", "--family", "power-interior", "--alpha", "1", "--theta", "-0.5")
    assert code == 2 and "alpha + 1" in err


def test_verify_suite_table_and_csv(capsys, tmp_path):
    report = tmp_path / "report.csv"
    code, out, _ = run(capsys, "verify", "--suite", "decay-rates", "--out", str(report))
    assert code == 0
    assert out.strip().splitlines()[-1].endswith("checks passed")
    assert all(line.startswith("PASS") for line in out.strip().splitlines()[:-1])
    rows = rows_of(report.read_text())
    assert rows[0] == ["suite", "check", "case", "value", "limit", "status", "note"]
    assert {r[5] for r in rows[1:]} == {"pass"}


def test_verify_coeff_oracle_reports_sign_notes(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "coeff-oracle")
    assert code == 0
    assert "opposite sign" in out


def test_verify_failure_exit_code(capsys, monkeypatch):
    failing = [verify.Check("special", "forced", "case", 2.0, 1.0, False, "")]
    monkeypatch.setattr(verify, "run", lambda suite, tol=None: failing)
    code, out, _ = run(capsys, "verify", "--suite", "special")
    assert code == 1 and out.startswith("FAIL")


def test_verify_is_deterministic_across_worker_counts(capsys, monkeypatch, tmp_path):
    outputs = []
    for threads in ("1", "4"):
        monkeypatch.setenv("FRACHEB_THREADS", threads)
        path = tmp_path / f"r{threads}.csv"
        run(capsys, "verify", "--suite", "ggf-bounds", "--out", str(path))
        outputs.append(path.read_bytes())
    assert outputs[0] == outputs[1]


def test_csv_output_is_byte_identical(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for path in (a, b):
        run(capsys, "coeff", "--family", "power-log-endpoint", "--alpha", "0.5", "--end", "1",
            "--n-max", "20", "--method", "all", "--out", str(path))
    assert a.read_bytes() == b.read_bytes()


def test_figure1_files(tmp_path, capsys):
    code, _, _ = run(capsys, "figure", "--id", "1", "--out", str(tmp_path))
    assert code == 0
    names = sorted(p.name for p in tmp_path.iterdir())
    assert names == ["figure1_lambda0.csv", "figure1_lambda0.svg", "figure1_lambda0p5.csv", "figure1_lambda0p5.svg"]
    root = ET.parse(tmp_path / "figure1_lambda0.svg").getroot()
    assert root.tag.endswith("svg")
    assert len([el for el in root.iter() if el.tag.endswith("polyline")]) >= 8
    rows = rows_of((tmp_path / "figure1_lambda0.csv").read_text())[1:]
    for x, nu, v in rows:
        if float(nu) in (1.0, 2.0, 3.0):
            assert float(v) == pytest.approx(math.cos(float(nu) * math.acos(float(x))), abs=1e-12)


def test_figure1_through_ggf_flag(tmp_path, capsys):
    code, _, _ = run(capsys, "ggf", "--figure", "1", "--out", str(tmp_path))
    assert code == 0 and (tmp_path / "figure1_lambda0p5.svg").exists()


def test_figure2_files(tmp_path, capsys):
    code, _, _ = run(capsys, "figure", "--id", "2", "--out", str(tmp_path))
    assert code == 0
    for stem in ("figure2_theta0p5", "figure2_theta0p8"):
        rows = rows_of((tmp_path / f"{stem}.csv").read_text())
        assert rows[0] == ["n", "improved", "trefethen", "majidian", "ratio1", "ratio2"]
        assert len(rows) - 1 == 99
        assert all(float(r[4]) > 1 and float(r[5]) > 1 for r in rows[1:])
        ET.parse(tmp_path / f"{stem}.svg")


def test_config_presets_and_overrides(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# preset\ncommand = ggf\nlambda = 0.5\nnu = 2\ngrid = 0:1:3\n", encoding="utf-8")
    code, out, _ = run(capsys, "--config", str(cfg))
    assert code == 0
    vals = [float(r[2]) for r in rows_of(out)[1:]]
    assert vals == pytest.approx([-0.5, -0.125, 1.0])
    _, out, _ = run(capsys, "--config", str(cfg), "ggf", "--nu", "1")
    assert [float(r[2]) for r in rows_of(out)[1:]] == pytest.approx([0.0, 0.5, 1.0])


def test_config_errors(tmp_path, capsys):
    bad = tmp_path / "bad.cfg"
    bad.write_text("no equals sign here\n", encoding="utf-8")
    assert run(capsys, "--config", str(bad), "ggf")[0] == 2
    assert run(capsys, "--config", str(tmp_path / "missing.cfg"), "ggf")[0] == 2


def test_parse_grid():
    assert list(parse_grid("-1:1:3")) == [-1.0, 0.0, 1.0]


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "fracheb.cli", "coeff", "--family", "power-interior",
                           "--alpha", "1", "--n-max", "2"], capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert float(proc.stdout.splitlines()[3].split(",")[2]) == pytest.approx(4 / (3 * math.pi))
