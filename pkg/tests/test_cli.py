import json

import pytest

from schwym.cli import main


def run(tmp_path, *argv):
    return main([*argv, "--out", str(tmp_path)])


def test_solve_finite_action(tmp_path):
    code = run(tmp_path, "solve", "--kappa", "-2.5", "--rmax", "200",
               "--no-figures")
    assert code == 0
    report = json.loads((tmp_path / "report.json").read_text())
    assert report["class"] == "FiniteAction"
    assert report["S"] == pytest.approx(1.7578, abs=5e-3)
    lines = (tmp_path / "profile.csv").read_text().splitlines()
    assert lines[0].startswith("# config:")
    assert lines[2] == "r,phi,dphi,alpha,lagrangian_density"
    assert not (tmp_path / "profile.png").exists()


def test_solve_renders_figure(tmp_path):
    code = run(tmp_path, "solve", "--kappa", "-2.5", "--rmax", "100")
    assert code == 0
    assert (tmp_path / "profile.png").stat().st_size > 0


def test_solve_exit_codes(tmp_path):
    assert run(tmp_path, "solve", "--kappa", "-3.5", "--no-figures") == 2
    assert run(tmp_path, "solve", "--kappa", "-1.5", "--no-figures") == 3


def test_solve_deterministic(tmp_path):
    d1, d2 = tmp_path / "a", tmp_path / "b"
    for d in (d1, d2):
        main(["solve", "--kappa", "-2.5", "--rmax", "100", "--no-figures",
              "--out", str(d)])
    assert (d1 / "profile.csv").read_bytes() == (d2 / "profile.csv").read_bytes()
    assert (d1 / "report.json").read_bytes() == (d2 / "report.json").read_bytes()


def test_scan(tmp_path):
    code = run(tmp_path, "scan", "--kappa-range=-3:-2:3", "--rmax", "500",
               "--no-figures")
    assert code == 0
    lines = (tmp_path / "scan.csv").read_text().splitlines()
    assert lines[2] == "kappa,class,S,S_lo,S_hi,C,q_e"
    assert len(lines) == 6
    assert all("FiniteAction" in ln for ln in lines[3:])


def test_scan_range_validation(tmp_path):
    with pytest.raises(SystemExit):
        run(tmp_path, "scan", "--kappa-range=-5:-2:3")
    with pytest.raises(SystemExit):
        run(tmp_path, "scan", "--kappa-range=bogus")


def test_map(tmp_path):
    code = run(tmp_path, "map", "--kappa", "-2.5", "--map-order", "400",
               "--rmax", "100", "--no-figures")
    assert code == 0
    summary = json.loads((tmp_path / "map_summary.json").read_text())
    assert summary["series_reliable"] is True
    assert summary["max_abs_dev_mapped_vs_numeric"] < 1e-6
    assert (tmp_path / "coefficients.csv").exists()
    assert (tmp_path / "comparison.csv").exists()


def test_map_unreliable_series_flagged(tmp_path):
    code = run(tmp_path, "map", "--kappa", "-3.5", "--map-order", "200",
               "--rmax", "100", "--no-figures")
    assert code == 4


def test_check_pair(tmp_path):
    code = run(tmp_path, "check", "--pairs=-2.7,-2.3", "--no-figures")
    assert code == 0
    reports = json.loads((tmp_path / "properties.json").read_text())["reports"]
    assert all(r["passed"] for r in reports)


def test_check_fault_injection(tmp_path):
    code = run(tmp_path, "check", "--pairs=-2.7,-2.3", "--inject-dphi",
               "1e-6", "--no-figures")
    assert code == 4


def test_config_file_and_flag_precedence(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("rmax = 100\ntol = 1e-10\n")
    out = tmp_path / "o"
    code = main(["solve", "--kappa", "-2.5", "--config", str(cfg),
                 "--rmax", "150", "--no-figures", "--out", str(out)])
    assert code == 0
    header = (out / "profile.csv").read_text().splitlines()[0]
    assert "rmax=150.0" in header   # flag wins
    assert "tol=1e-10" in header    # config file beats the default


def test_config_unknown_key(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("bogus = 1\n")
    with pytest.raises(SystemExit):
        main(["solve", "--kappa", "-2.5", "--config", str(cfg),
              "--out", str(tmp_path)])


def test_usage_error_exit_code(tmp_path):
    # domain errors surface as exit 1, not tracebacks
    assert run(tmp_path, "solve", "--kappa", "-2.5", "--tol", "1") == 1
