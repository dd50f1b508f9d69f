"""Command-line interface: flags, formats, exit codes, determinism."""

import json
import subprocess
import sys

import gmpy2
import pytest

from anharm.cli import default_precision, main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_default_precision_tiers():
    assert default_precision(1) == 128
    assert default_precision(15) == 128
    assert default_precision(16) == 256
    assert default_precision(40) == 256
    assert default_precision(41) == 384


def test_solve_table_single_basis_function(capsys):
    code, out, _ = run_cli(capsys, "solve", "--k", "4", "--N", "1",
                           "--length-rule", "op2", "--precision", "64")
    assert code == 0
    assert "E=1.2305387" in out
    assert "rule=op2" in out


def test_solve_json_fields_and_roundtrip(capsys):
    code, out, _ = run_cli(capsys, "solve", "--k", "2", "--N", "8",
                           "--length-rule", "schwartz", "--precision", "128",
                           "--levels", "2", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["meta"]["rule"] == "schwartz"
    assert doc["meta"]["precision"] == 128
    vals = [gmpy2.mpfr(s) for s in doc["eigenvalues"]]
    assert abs(float(vals[0]) - 1.0) < 1e-6
    assert abs(float(vals[1]) - 5.0) < 1e-4
    # decimal strings must reparse to full precision, not float64
    assert len(doc["eigenvalues"][0]) > 25


def test_solve_csv_levels_are_physical(capsys):
    code, out, _ = run_cli(capsys, "solve", "--k", "2", "--N", "6", "--parity", "odd",
                           "--precision", "96", "--levels", "2", "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "level,energy,relative_error"
    assert lines[1].startswith("1,3.000")
    assert lines[2].startswith("3,7.000")


def test_solve_both_parities(capsys):
    code, out, _ = run_cli(capsys, "solve", "--k", "2", "--N", "6", "--parity", "both",
                           "--precision", "96", "--levels", "2")
    assert code == 0
    assert "parity=even" in out and "parity=odd" in out
    assert "n=0" in out and "n=1" in out


def test_solve_sextic_closed_form_ground(capsys):
    code, out, _ = run_cli(capsys, "solve", "--potential", "[[2,-2],[4,2],[6,1]]",
                           "--N", "16", "--length-rule", "op", "--precision", "192",
                           "--levels", "1", "--format", "json")
    assert code == 0
    e0 = gmpy2.mpfr(json.loads(out)["eigenvalues"][0])
    with gmpy2.context(precision=192):
        assert abs(e0 - 1) < gmpy2.mpfr("1e-14")


def test_solve_ho_method(capsys):
    code, out, _ = run_cli(capsys, "solve", "--method", "ho", "--N", "12",
                           "--omega2", "0", "--lambda", "1", "--freq-rule", "pms",
                           "--precision", "128", "--levels", "1", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    # ground state of (1/2)p^2 + x^4
    assert abs(float(gmpy2.mpfr(doc["eigenvalues"][0])) - 0.667986259155777) < 1e-9
    assert doc["meta"]["rule"] == "pms"


def test_solve_sinc_method(capsys):
    code, out, _ = run_cli(capsys, "solve", "--method", "sinc", "--k", "2",
                           "--mesh-N", "10", "--precision", "128", "--levels", "2",
                           "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[1].startswith("0,0.9999") or lines[1].startswith("0,1.000")


def test_compare_emits_one_column_per_rule(capsys):
    code, out, _ = run_cli(capsys, "compare", "--k", "4", "--N", "8",
                           "--rules", "schwartz,op", "--precision", "128", "--levels", "2")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "level,schwartz,op"
    assert len(lines) == 3


def test_compare_rejects_single_rule(capsys):
    code, _, err = run_cli(capsys, "compare", "--k", "4", "--N", "8", "--rules", "op")
    assert code == 2
    assert "two rules" in err


def test_compare_rejects_unknown_rule(capsys):
    code, _, err = run_cli(capsys, "compare", "--k", "4", "--N", "8", "--rules", "op,bogus")
    assert code == 2


def test_scan_reports_closed_rules(capsys):
    code, out, _ = run_cli(capsys, "scan", "--k", "2", "--N", "8", "--precision", "53")
    assert code == 0
    doc = json.loads(out)
    assert doc["rule"] == "scan"
    assert set(doc["closed_rules"]) == {"schwartz", "op", "op1", "op2", "trace", "trace-asym"}
    # harmonic: scan optimum sits near the closed-form lengths
    assert abs(float(doc["L"]) - float(doc["closed_rules"]["schwartz"])) < 0.5


def test_scan_degenerate_bracket_exits_2(capsys):
    code, _, err = run_cli(capsys, "scan", "--k", "2", "--N", "8",
                           "--precision", "53", "--bracket", "0.05:0.2")
    assert code == 2
    assert "error" in err


def test_convergence_series_and_slope(capsys):
    code, out, _ = run_cli(capsys, "convergence", "--k", "4", "--rule", "op",
                           "--N-range", "6:12:2", "--precision", "128")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "N,energy,eps"
    assert len(lines) == 6  # header + 4 rows + slope comment
    assert lines[-1].startswith("# slope_log10_eps_per_N")
    slope = float(lines[-1].split("=")[1])
    assert slope < -0.8


def test_convergence_requires_n_spec(capsys):
    code, _, err = run_cli(capsys, "convergence", "--k", "4")
    assert code == 2


def test_figure_unknown_name_exits_2(capsys):
    code, _, err = run_cli(capsys, "figure", "fig99")
    assert code == 2
    assert "unknown figure" in err


def test_figure_alpha_table(capsys):
    code, out, _ = run_cli(capsys, "figure", "fig5")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "k,alpha_schwartz,alpha_op,alpha_op1,alpha_op2,alpha_trace"
    assert len(lines) == 21  # header + k = 2..40 step 2
    first = lines[1].split(",")
    assert first[0] == "2"
    assert all(abs(float(x) - 1) < 1e-12 for x in first[1:])


def test_figure_frequency_ratio_columns(capsys):
    code, out, _ = run_cli(capsys, "figure", "fig8")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "twoN,omega2_0,omega2_12,omega2_20"
    row = lines[1].split(",")
    assert row[0] == "2"
    assert abs(float(row[1]) - (9 ** (1 / 3) / 2)) < 1e-12


def test_dump_matrix_header_and_symmetry(tmp_path, capsys):
    out_file = tmp_path / "mat.txt"
    code, _, _ = run_cli(capsys, "solve", "--k", "4", "--N", "3",
                         "--length-rule", "op", "--precision", "96",
                         "--dump-matrix", str(out_file))
    assert code == 0
    lines = out_file.read_text().strip().splitlines()
    head = lines[0].split()
    assert head[0] == "#"
    assert head[1] == "even"
    assert head[2] == "4"
    assert head[3] == "3"
    assert float(head[4]) > 1  # the box length
    assert head[5] == "96"
    rows = [[gmpy2.mpfr(tok) for tok in line.split()] for line in lines[1:]]
    assert len(rows) == 3
    assert rows[0][1] == rows[1][0]


def test_output_file_option(tmp_path, capsys):
    out_file = tmp_path / "res.json"
    code, out, _ = run_cli(capsys, "solve", "--k", "2", "--N", "4", "--precision", "64",
                           "--format", "json", "--output", str(out_file))
    assert code == 0
    assert out == ""
    doc = json.loads(out_file.read_text())
    assert "eigenvalues" in doc


def test_deterministic_output_modulo_walltime(capsys):
    argv = ["solve", "--k", "4", "--N", "6", "--precision", "128", "--format", "json"]
    _, out1, _ = run_cli(capsys, *argv)
    _, out2, _ = run_cli(capsys, *argv)
    d1, d2 = json.loads(out1), json.loads(out2)
    d1["meta"].pop("wall_time_s")
    d2["meta"].pop("wall_time_s")
    assert d1 == d2


def test_nonconvergence_exit_code(monkeypatch, capsys):
    monkeypatch.setenv("ANHARM_MAX_SWEEPS", "0")
    code, _, err = run_cli(capsys, "solve", "--k", "4", "--N", "5", "--precision", "64")
    assert code == 3
    assert "converge" in err


def test_conflicting_flags_rejected(capsys):
    code, _, _ = run_cli(capsys, "solve", "--k", "4", "--potential", "x^6", "--N", "4")
    assert code == 2
    code, _, _ = run_cli(capsys, "solve", "--method", "ho", "--N", "4", "--length-rule", "op")
    assert code == 2
    code, _, _ = run_cli(capsys, "solve", "--k", "4", "--N", "4", "--freq-rule", "pms")
    assert code == 2
    code, _, _ = run_cli(capsys, "solve", "--method", "ho", "--N", "4",
                         "--freq-rule", "value")  # missing --omega
    assert code == 2


def test_missing_n_rejected(capsys):
    code, _, err = run_cli(capsys, "solve", "--k", "4")
    assert code == 2
    assert "--N" in err


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "anharm.cli", "--help"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "solve" in proc.stdout
