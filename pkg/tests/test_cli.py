"""Command-line interface: outputs, exit codes, config files, units toggle."""

import json
import math
import subprocess
import sys

import numpy as np
import pytest

from fermient.cli import main, parse_pi


def _run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_parse_pi():
    assert parse_pi("0.5pi") == 0.5 * math.pi
    assert parse_pi("pi") == math.pi
    assert parse_pi("2*pi") == 2 * math.pi
    assert parse_pi("1.25") == 1.25
    with pytest.raises(ValueError):
        parse_pi("two")


def test_entropy_json(capsys):
    code, out, _ = _run(
        capsys, "entropy", "--model", "sine1d", "--kf", "0.5pi", "--length", "100"
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["units"] == "nats"
    assert payload["length"] == 100
    assert payload["bound_variance_ok"] is True
    assert abs(payload["S_res"] - (payload["S_A"] - payload["S_m"])) < 1e-12


def test_entropy_bits_toggle(capsys):
    _, out_nats, _ = _run(
        capsys, "entropy", "--model", "sine1d", "--kf", "0.5pi", "--length", "20"
    )
    _, out_bits, _ = _run(
        capsys, "entropy", "--model", "sine1d", "--kf", "0.5pi", "--length", "20", "--bits"
    )
    nats = json.loads(out_nats)
    bits = json.loads(out_bits)
    assert bits["units"] == "bits"
    assert bits["S_A"] == pytest.approx(nats["S_A"] / math.log(2.0), rel=1e-12)
    assert bits["C_2"] == nats["C_2"]  # dimensionless, not rescaled


def test_entropy_ring_model(capsys):
    code, out, _ = _run(
        capsys,
        "entropy", "--model", "ring", "--ring-sites", "8", "--ring-filled", "4",
        "--length", "2",
    )
    assert code == 0
    assert json.loads(out)["S_A"] > 0


def test_model_flag_mismatch_is_usage_error(capsys):
    code, _, err = _run(capsys, "entropy", "--model", "sine1d", "--length", "10")
    assert code == 2
    assert "kf" in err
    code, _, _ = _run(
        capsys, "entropy", "--model", "ring", "--kf", "0.5pi", "--length", "4",
        "--ring-sites", "8", "--ring-filled", "4",
    )
    assert code == 2


def test_unknown_flag_exits_2():
    with pytest.raises(SystemExit) as excinfo:
        main(["entropy", "--model", "sine1d", "--kf", "0.5pi", "--length", "4", "--frobnicate"])
    assert excinfo.value.code == 2


def test_fcs_output(capsys):
    code, out, _ = _run(capsys, "fcs", "--model", "sine1d", "--kf", "0.5pi", "--length", "8")
    assert code == 0
    payload = json.loads(out)
    p = np.array(payload["p"])
    assert p.size == 9
    assert abs(p.sum() - 1) < 1e-10
    assert payload["S_m"] > 0


def test_oracle_check_pass_and_reproducible(capsys):
    code_a, out_a, _ = _run(capsys, "oracle-check", "--modes", "6", "--trials", "30", "--seed", "7")
    code_b, out_b, _ = _run(capsys, "oracle-check", "--modes", "6", "--trials", "30", "--seed", "7")
    assert code_a == code_b == 0
    assert out_a == out_b
    assert "PASS" in out_a


def test_oracle_check_fail_exit_code(capsys):
    code, out, _ = _run(
        capsys,
        "oracle-check", "--modes", "4", "--trials", "5", "--seed", "1",
        "--threshold", "1e-30",
    )
    assert code == 1
    assert "FAIL" in out


def test_analytic_binomial(capsys):
    code, out, _ = _run(capsys, "analytic", "binomial", "--N", "10", "--D", "0.5")
    assert code == 0
    payload = json.loads(out)
    assert payload["S_A"] == pytest.approx(10 * math.log(2.0), rel=1e-12)
    assert payload["S_m"] == pytest.approx(1.87595, abs=5e-6)
    assert payload["S_m_asymptotic"] == pytest.approx(1.87708, abs=5e-6)


def test_analytic_qpc_switch(capsys):
    code, out, _ = _run(capsys, "analytic", "qpc-switch", "--D", "1.0", "--ratio", "1e4")
    assert code == 0
    payload = json.loads(out)
    assert payload["C_2"] == pytest.approx(math.log(1e4) / math.pi**2, rel=1e-12)


def test_analytic_luttinger_rejects_bad_args(capsys):
    code, _, _ = _run(capsys, "analytic", "luttinger", "--g", "0", "--kfl", "10")
    assert code == 2


def test_sweep_config_file_with_override(capsys, tmp_path):
    config = tmp_path / "sweep.cfg"
    config.write_text(
        "# half-filled interval sweep\n"
        "model = sine1d\n"
        "kf = 0.5pi\n"
        "scales = 8,16,32\n"
        "format = csv\n",
        encoding="utf-8",
    )
    out_file = tmp_path / "rows.csv"
    code, _, _ = _run(
        capsys,
        "sweep", "--config", str(config), "--scales", "8,16,32,64",
        "--output", str(out_file),
    )
    assert code == 0
    lines = out_file.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "L,S_A,S_m,S_res,C_1,C_2,delta_S"
    assert len(lines) == 5  # CLI --scales overrode the three-point file value


def test_sweep_stdout_and_fit(capsys):
    code, out, err = _run(
        capsys,
        "sweep", "--model", "sine1d", "--kf", "0.5pi",
        "--scales", "16,32,64,128", "--fit", "S_A",
    )
    assert code == 0
    assert out.splitlines()[0] == "L,S_A,S_m,S_res,C_1,C_2,delta_S"
    assert "fit S_A ~ lnL" in err


def test_sweep_unknown_config_key(capsys, tmp_path):
    config = tmp_path / "sweep.cfg"
    config.write_text("model = sine1d\nwibble = 3\n", encoding="utf-8")
    code, _, err = _run(capsys, "sweep", "--config", str(config))
    assert code == 2
    assert "wibble" in err


def test_sweep_svg(capsys, tmp_path):
    svg = tmp_path / "chart.svg"
    code, _, _ = _run(
        capsys,
        "sweep", "--model", "sine1d", "--kf", "0.5pi", "--scales", "8,16,32",
        "--quantities", "S_A,S_m", "--output", str(tmp_path / "rows.csv"),
        "--svg", str(svg),
    )
    assert code == 0
    assert svg.read_text(encoding="utf-8").startswith("<svg")


def test_widom_cli(capsys):
    code, out, _ = _run(
        capsys,
        "widom", "--dim", "1", "--region-size", "1", "--sea-size", "pi", "--lam", "1.0",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["c1"] == pytest.approx(0.5)
    assert payload["c2"] == pytest.approx(1 / math.pi**2)
    assert payload["U_quadrature"] == pytest.approx(-0.5, abs=1e-10)
    assert payload["U_closed_form"] == -0.5


def test_module_entry_point():
    result = subprocess.run(
        [sys.executable, "-m", "fermient", "entropy", "--model", "sine1d",
         "--kf", "0.5pi", "--length", "10"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert result.returncode == 0
    assert json.loads(result.stdout)["S_A"] > 0
