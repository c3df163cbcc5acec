import json
import os

import pytest

from keplevin import cli
from keplevin.errors import ConfigurationError


def run_main(argv):
    return cli.main(argv)


def test_run_config_validation(tmp_path):
    cfg = cli.RunConfig(120, "json", str(tmp_path / "x.json"))
    assert cfg.precision_digits == 120
    with pytest.raises(ConfigurationError):
        cli.RunConfig(49)
    with pytest.raises(ConfigurationError):
        cli.RunConfig(100, "xml")
    with pytest.raises(ConfigurationError):
        cli.RunConfig(100, "csv", "/no/such/dir/out.csv")


def test_unknown_target_is_usage_error():
    with pytest.raises(SystemExit) as info:
        run_main(["reproduce", "--target", "table99"])
    assert info.value.code == 2


def test_reproduce_writes_deterministic_artifact(tmp_path, capsys):
    out = tmp_path / "t2.csv"
    assert run_main(["reproduce", "--target", "table2", "--out", str(out)]) == 0
    text = capsys.readouterr().out
    assert "table2 at precision 250" in text
    assert "0 mismatched" in text
    first = out.read_bytes()
    assert run_main(["reproduce", "--target", "table2", "--out", str(out)]) == 0
    assert out.read_bytes() == first
    header = first.decode().splitlines()[0]
    assert header == "column,row,computed,golden,match"


def test_reproduce_json_artifact(tmp_path):
    out = tmp_path / "t3.json"
    assert run_main(["reproduce", "--target", "table3", "--format", "json", "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["target"] == "table3"
    assert doc["precision_digits"] == 250
    assert all(c["ok"] for c in doc["checks"])
    assert any(r["column"] == "delta" for r in doc["rows"])


def test_reproduce_unknown_target_via_api(tmp_path):
    cfg = cli.RunConfig(output_path=str(tmp_path / "x.csv"))
    with pytest.raises(ConfigurationError):
        cli.reproduce("table99", cfg)


def test_selfcheck_passes(capsys):
    assert run_main(["selfcheck"]) == 0
    text = capsys.readouterr().out
    assert "0 failed" in text
    assert "debye/ratio-law: ok" in text


def test_selfcheck_corrupt_hook_fails(capsys):
    assert run_main(["selfcheck", "--corrupt-debye-row", "5"]) == 1
    text = capsys.readouterr().out
    assert "debye/ratio-law: FAIL" in text
    assert "ratio law violated between rows 4 and 5" in text


def test_selfcheck_low_precision_passes(capsys):
    assert run_main(["--precision", "50", "selfcheck"]) == 0
    text = capsys.readouterr().out
    assert "0 failed" in text


def test_precision_flag_minimum():
    with pytest.raises(SystemExit) as info:
        run_main(["--precision", "30", "selfcheck"])
    assert info.value.code == 2


def test_env_var_overrides_flag(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("KEPLEVIN_PRECISION", "80")
    out = tmp_path / "t2.csv"
    assert run_main(["--precision", "200", "reproduce", "--target", "table2", "--out", str(out)]) == 0
    assert "table2 at precision 80" in capsys.readouterr().out
    monkeypatch.setenv("KEPLEVIN_PRECISION", "oops")
    with pytest.raises(SystemExit) as info:
        run_main(["selfcheck"])
    assert info.value.code == 2


def test_fig_target_artifact(tmp_path, capsys):
    out = tmp_path / "fig2.csv"
    assert run_main(["reproduce", "--target", "fig2", "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "k,abs_term_eps_1_2,abs_term_eps_9_10"
    assert len(lines) == 42


def test_u_scan_csv(tmp_path, capsys):
    out = tmp_path / "scan.csv"
    assert run_main(["u-scan", "--eps", "1/2", "--order", "8", "--grid", "6", "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "t,x,u_value,order,eps"
    assert len(lines) == 7
    assert lines[-1].startswith("1.0,0.0,0.0")


def test_bessel_csv(tmp_path, capsys):
    out = tmp_path / "b.csv"
    assert run_main(["bessel", "--n", "10", "--eps", "1/2", "--k-max", "6", "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "order,partial_sum,d,delta"
    assert len(lines) == 7


def test_kepler_solve_output(capsys):
    assert run_main(["kepler", "solve", "--eps", "9/10", "--M", "pi/4", "--digits", "21"]) == 0
    text = capsys.readouterr().out
    assert "psi = 1.68003373578804552913" in text
    assert run_main(["kepler", "solve", "--eps", "1/2", "--M", "2pi/3", "--method", "weniger", "--order", "20"]) == 0
    text = capsys.readouterr().out
    assert "weniger, order 20" in text


def test_debye_eval_output(capsys):
    assert run_main(["debye", "--k", "1", "--t", "1/2", "--digits", "10"]) == 0
    text = capsys.readouterr().out
    # U_1(1/2) = 7/192
    assert "0.03645833333" in text


def test_artifact_default_name_in_cwd(tmp_path, monkeypatch, capsys):
    monkeypatch.chdir(tmp_path)
    assert run_main(["reproduce", "--target", "fig3"]) == 0
    assert (tmp_path / "fig3.csv").exists()
