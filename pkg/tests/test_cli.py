import json

import pytest

from fracbdf.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_coeffs_csv_classical_bdf2(capsys):
    code, out = run_cli(capsys, "coeffs", "--k", "2", "--alpha", "1", "--n", "4")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].startswith("# fracbdf-csv-v1 coeffs")
    assert lines[1] == "j,l_j,g_j"
    values = [float(line.split(",")[1]) for line in lines[2:]]
    assert values[:3] == [1.5, -2.0, 0.5]
    assert abs(values[3]) < 1e-14 and abs(values[4]) < 1e-14


def test_cli_output_is_deterministic(capsys):
    args = ("coeffs", "--k", "5", "--alpha", "0.37", "--sigma", "0.2",
            "--tau", "0.05", "--n", "64")
    _, first = run_cli(capsys, *args)
    _, second = run_cli(capsys, *args)
    assert first == second


def test_coeffs_json(capsys):
    code, out = run_cli(capsys, "coeffs", "--k", "1", "--alpha", "0.5",
                        "--n", "2", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["l"] == pytest.approx([1.0, -0.5, -0.125])


def test_multipliers_json_with_q(capsys):
    code, out = run_cli(capsys, "multipliers", "--k", "6", "--alpha", "0.5",
                        "--n", "8", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["mu"] == pytest.approx([43.0 / 30.0, -2.0 / 3.0, 0.1])
    assert payload["c"][1] == pytest.approx(43.0 / 30.0)
    assert len(payload["q"]) == 9


def test_multipliers_csv_without_alpha(capsys):
    code, out = run_cli(capsys, "multipliers", "--k", "3", "--n", "4")
    assert code == 0
    header = out.strip().splitlines()[1]
    assert header == "m,mu_m,c_m"


def test_check_positivity(capsys):
    code, out = run_cli(capsys, "check-positivity", "--k", "6", "--N", "10,50")
    assert code == 0
    payload = json.loads(out)
    assert payload["verdict"] == "PASS"
    assert payload["property_p"]["f_min"] > 0.004785


def test_check_astability(capsys, tmp_path):
    csv_path = tmp_path / "sweep.csv"
    code, out = run_cli(capsys, "check-astability", "--k", "6", "--alpha", "0.99",
                        "--grid", "2048", "--csv-out", str(csv_path))
    assert code == 0
    payload = json.loads(out)
    assert payload["verdict"] == "PASS"
    assert payload["property_a"]["max_abs_arg"] <= 1.5707963277
    lines = csv_path.read_text().splitlines()
    assert lines[1] == "x,arg_q,theta1,theta2,reciprocal_sum"
    assert len(lines) == 2050


def test_toeplitz(capsys):
    code, out = run_cli(capsys, "toeplitz", "--k", "4", "--N", "32")
    assert code == 0
    payload = json.loads(out)
    assert payload["verdict"] == "PASS"
    assert payload["lambda_min"] >= payload["f_min"] - 1e-10


def test_solve_scalar_config(capsys, tmp_path):
    cfg = tmp_path / "prob.json"
    cfg.write_text(json.dumps({
        "operator": {"variant": "single_term", "alpha": 0.5},
        "spatial": {"variant": "scalar", "value": 1.0},
        "rho": 1.0, "T": 1.0}))
    code, out = run_cli(capsys, "solve", "--config", str(cfg), "--k", "2", "--n", "8")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[1] == "n,t,u0"
    assert len(lines) == 11
    last = lines[-1].split(",")
    assert float(last[0]) == 8 and float(last[1]) == 1.0
    assert abs(float(last[2]) - 0.4275835761558073) < 1e-2


def test_solve_norms_mode(capsys, tmp_path):
    cfg = tmp_path / "prob.json"
    cfg.write_text(json.dumps({
        "operator": {"variant": "multi_term", "terms": [[1.0, 0.7], [1.0, 0.2]]},
        "spatial": {"variant": "tridiagonal", "size": 24},
        "rho": {"profile": "sin"}, "T": 1.0}))
    code, out = run_cli(capsys, "solve", "--config", str(cfg), "--k", "3",
                        "--n", "6", "--norms")
    assert code == 0
    assert out.strip().splitlines()[1] == "n,t,norm_l2,norm_energy"


def test_converge_json(capsys):
    code, out = run_cli(capsys, "converge", "--k", "2", "--alpha", "0.5",
                        "--n-list", "32,64,128", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["observed_order"] == pytest.approx(2.0, abs=0.35)


def test_stability_command(capsys, tmp_path):
    cfg = tmp_path / "prob.json"
    cfg.write_text(json.dumps({
        "operator": {"variant": "single_term", "alpha": 0.5},
        "spatial": {"variant": "tridiagonal", "size": 16},
        "rho": {"profile": "sin"}, "T": 1.0}))
    code, out = run_cli(capsys, "stability", "--config", str(cfg), "--k", "6",
                        "--trials", "3", "--n-list", "16,32", "--seed", "4")
    assert code == 0
    payload = json.loads(out)
    assert payload["verdict"] == "PASS"
    assert len(payload["max_ratio_sq"]) == 2


def test_error_reporting(capsys):
    code = main(["coeffs", "--k", "9", "--alpha", "0.5", "--n", "4"])
    captured = capsys.readouterr()
    assert code == 2
    payload = json.loads(captured.err)
    assert "BDF order" in payload["error"]
