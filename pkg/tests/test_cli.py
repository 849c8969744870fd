import csv
import io

import pytest

from trigmie import cli
from trigmie import mie_exact


def rows(path):
    with open(path) as fh:
        return list(csv.reader(fh))


def test_coeffs_m_equal_one(tmp_path, capsys):
    out = tmp_path / "c.csv"
    assert cli.run(["coeffs", "--x", "10", "--m", "1.0", "--n", "3", "--out", str(out)]) == 0
    r = rows(out)
    assert r[0][:5] == ["n", "a_real", "a_imag", "b_real", "b_imag"]
    assert len(r) == 4
    for row in r[1:]:
        assert [float(v) for v in row[1:5]] == [0.0] * 4
    assert "coeffs" in capsys.readouterr().out


def test_verify_circular(tmp_path, capsys):
    out = tmp_path / "v.csv"
    assert cli.run(["verify", "--law", "circular", "--samples", "10000", "--seed", "7",
                    "--out", str(out)]) == 0
    line = capsys.readouterr().out.strip()
    assert line.count("\n") == 0 and "ok" in line
    assert max(float(r[3]) for r in rows(out)[1:]) < 1e-9


def test_verify_failure_exit_code(tmp_path):
    assert cli.run(["verify", "--samples", "50", "--tol", "-1", "--out", str(tmp_path / "v.csv")]) == 3


def test_integrate_both(tmp_path, capsys):
    out = tmp_path / "i.csv"
    assert cli.run(["integrate", "--dist", "uniform", "--model", "homogeneous", "--x", "10:20",
                    "--m", "1.2:1.8", "--grid", "64x64", "--evaluator", "both", "--out", str(out)]) == 0
    r = rows(out)
    assert r[0] == ["evaluator", "n_x", "n_m", "n_points", "value", "seconds"]
    vals = {row[0]: float(row[4]) for row in r[1:]}
    assert abs(vals["approx"] - vals["exact"]) / vals["exact"] < 0.01


def test_integrate_bimodal_flags(tmp_path):
    out = tmp_path / "b.csv"
    assert cli.run(["integrate", "--dist", "bimodal", "--components", "13,1,1.4,0.06;17,1,1.6,0.06",
                    "--grid", "16x16", "--evaluator", "approx", "--out", str(out)]) == 0
    assert cli.run(["integrate", "--dist", "bimodal", "--out", str(out)]) == 1


def test_deterministic_csv(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    args = ["verify", "--samples", "300", "--seed", "5"]
    cli.run(args + ["--out", str(a)])
    cli.run(args + ["--out", str(b)])
    assert a.read_bytes() == b.read_bytes()
    c = tmp_path / "c.csv"
    cli.run(["verify", "--samples", "300", "--seed", "6", "--out", str(c)])
    assert c.read_bytes() != a.read_bytes()


def test_config_file_and_override(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# cross-section run\ncommand = cross-section\nx = 12\nm = 1.4\nn-max = 3\n")
    out1, out2 = tmp_path / "1.csv", tmp_path / "2.csv"
    assert cli.run(["--config", str(cfg), "--out", str(out1)]) == 0
    assert cli.run(["--config", str(cfg), "cross-section", "--m", "1.6", "--out", str(out2)]) == 0
    c1 = float(rows(out1)[1][2])
    c2 = float(rows(out2)[1][2])
    ref = mie_exact.cross_sections(mie_exact.HomogeneousSphere(12.0, 1.6), 1.0, 3).c_sca
    assert c2 == ref and c1 != c2


def test_config_errors(tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("x = 1\nnot_an_option = 3\n")
    assert cli.run(["--config", str(cfg), "coeffs", "--m", "1.5"]) == 1
    cfg.write_text("just words\n")
    assert cli.run(["--config", str(cfg), "coeffs"]) == 1
    assert cli.run(["--config", str(tmp_path / "missing.cfg"), "coeffs"]) == 1


@pytest.mark.parametrize("argv", [
    ["bogus"],
    [],
    ["coeffs", "--x", "-3", "--m", "1.5"],
    ["coeffs", "--m", "1.5"],
    ["integrate", "--grid", "abc"],
    ["coeffs", "--x", "1", "--m", "1.5", "--out", "/nonexistent/dir/out.csv"],
])
def test_config_error_exit(argv):
    assert cli.run(argv) == 1


def test_degeneracy_exit(monkeypatch, tmp_path):
    monkeypatch.setattr(mie_exact, "DEGENERATE_DENOMINATOR", 1e300)
    assert cli.run(["coeffs", "--x", "3", "--m", "1.5", "--out", str(tmp_path / "d.csv")]) == 2


def test_csv_to_stdout(capsys):
    assert cli.run(["sweep", "--c", "20", "--x", "5:20", "--points", "11"]) == 0
    cap = capsys.readouterr()
    r = list(csv.reader(io.StringIO(cap.out)))
    assert r[0][0] == "x" and len(r) == 12
    assert cap.err.startswith("sweep:")


def test_errors_and_layered_commands(tmp_path):
    out = tmp_path / "e.csv"
    assert cli.run(["errors", "--family", "layered", "--x", "40:100", "--points", "2000",
                    "--out", str(out)]) == 0
    assert rows(out)[0] == ["y", "error", "factorized_error", "cumulative"]
    assert cli.run(["errors", "--study", "per-mode", "--modes", "2:4", "--out", str(out)]) == 0
    assert len(rows(out)) == 4
    assert cli.run(["coeffs", "--model", "layered", "--x", "20", "--m1", "1.3", "--y", "30",
                    "--m2", "1.5", "--n", "2", "--out", str(out)]) == 0


def test_bench_command_writes_histogram(tmp_path):
    out = tmp_path / "b.csv"
    assert cli.run(["bench", "--grid", "2x3", "--bins", "4", "--out", str(out)]) == 0
    assert len(rows(out)) == 7
    hist = rows(str(out) + ".hist.csv")
    assert sum(int(r[2]) for r in hist[1:]) == 6


@pytest.mark.parametrize("fig", ["1", "2b", "6"])
def test_reference_figures(fig, tmp_path, capsys):
    out = tmp_path / f"fig{fig}.csv"
    assert cli.run(["--paper-figure", fig, "--out", str(out)]) == 0
    assert len(rows(out)) > 2
    assert capsys.readouterr().out.startswith(f"figure {fig}:")


def test_reference_figure_8(tmp_path):
    out = tmp_path / "fig8.csv"
    assert cli.run(["--paper-figure", "8", "--out", str(out)]) == 0
    r = rows(out)
    assert r[0][:2] == ["model", "evaluator"]
    assert {row[0] for row in r[1:]} == {"homogeneous", "layered"}
