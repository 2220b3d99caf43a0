import json
import math

import pytest

from lagstate.cli import (CSV_HEADER, RunConfig, main, parse_csv, render_csv,
                          render_json, run, tolerance_breaches,
                          verify_identities)

CIRCLE_K2_ENTROPY = 0.8675632284814612


def test_config_defaults_and_overrides():
    sphere_cfg = RunConfig(model="sphere", k_min=1, k_max=2)
    assert sphere_cfg.entropy_tolerance == 1e-9
    assert sphere_cfg.gram_tolerance == 1e-12
    torus_cfg = RunConfig(model="torus", k_min=3, k_max=4)
    assert torus_cfg.entropy_tolerance == 1e-6
    assert torus_cfg.gram_tolerance == 1e-7
    custom = RunConfig(model="sphere", k_min=1, k_max=2, tol_entropy=1e-3)
    assert custom.entropy_tolerance == 1e-3


def test_config_validation():
    with pytest.raises(ValueError, match="unknown model"):
        RunConfig(model="plane", k_min=1, k_max=2)
    with pytest.raises(ValueError, match="circle"):
        RunConfig(model="torus", k_min=3, k_max=4, submanifold="circle")
    with pytest.raises(ValueError, match="k >= 3"):
        RunConfig(model="torus", k_min=2, k_max=4)
    with pytest.raises(ValueError, match="empty k range"):
        RunConfig(model="sphere", k_min=5, k_max=4)


def test_run_sphere_antidiagonal():
    config = RunConfig(model="sphere", k_min=1, k_max=10)
    rows = run(config)
    assert [row.k for row in rows] == list(range(1, 11))
    for row in rows:
        assert row.d_k == row.k + 1
        assert row.entropy_residual <= 1e-9
        assert abs(row.ln_d_k - math.log(row.k + 1.0)) <= 1e-15
        assert abs(row.raw_norm - math.sqrt(row.d_k)) <= 1e-10
        assert abs(row.separable_distance - row.corollary_rhs) <= 1e-9
        assert row.gram_residual <= 1e-12
    assert not tolerance_breaches(config, rows)


def test_run_torus_antidiagonal():
    config = RunConfig(model="torus", k_min=3, k_max=8, mu=0.37)
    rows = run(config)
    for row in rows:
        assert row.d_k == row.k
        assert row.entropy_residual <= 1e-6
        assert row.gram_residual <= 1e-7
    assert not tolerance_breaches(config, rows)


def test_run_circle():
    config = RunConfig(model="sphere", k_min=1, k_max=6, submanifold="circle")
    rows = run(config)
    for row in rows:
        assert row.entropy_residual <= 1e-10
    assert abs(rows[0].entropy - math.log(2.0)) <= 1e-12
    assert abs(rows[1].entropy - CIRCLE_K2_ENTROPY) <= 1e-10


def test_tolerance_breaches_reported():
    config = RunConfig(model="sphere", k_min=1, k_max=3, tol_entropy=1e-18,
                       tol_gram=1e-18)
    rows = run(config)
    messages = tolerance_breaches(config, rows)
    assert messages
    assert any("entropy_residual" in m for m in messages)


def test_csv_round_trip_is_exact():
    config = RunConfig(model="sphere", k_min=1, k_max=5, reproducible=True)
    rows = run(config)
    text = render_csv(rows)
    assert text.splitlines()[0] == CSV_HEADER
    parsed = parse_csv(text)
    assert parsed == rows
    assert render_csv(parsed) == text


def test_parse_csv_rejects_bad_header():
    with pytest.raises(ValueError, match="header"):
        parse_csv("k,entropy\n1,0.0\n")


def test_render_json_keys():
    config = RunConfig(model="sphere", k_min=1, k_max=2, reproducible=True)
    payload = json.loads(render_json(run(config)))
    assert len(payload) == 2
    assert set(payload[0]) == set(CSV_HEADER.split(","))


def test_reproducible_runs_are_identical():
    config = RunConfig(model="torus", k_min=3, k_max=5, reproducible=True)
    first = render_csv(run(config))
    second = render_csv(run(config))
    assert first == second
    assert all(line.endswith(",0") for line in first.strip().splitlines()[1:])


def test_verify_identities_sphere():
    config = RunConfig(model="sphere", k_min=1, k_max=5)
    checks = verify_identities(config)
    assert all(check.passed for check in checks)
    names = {check.name for check in checks}
    assert names == {"distance_vs_entropy", "binomial_square_sum"}


def test_verify_identities_circle():
    config = RunConfig(model="sphere", k_min=1, k_max=7, submanifold="circle")
    checks = verify_identities(config)
    assert all(check.passed for check in checks)
    assert any(check.name == "circle_quadrature_vs_closed_form"
               for check in checks)
    exact = [c for c in checks if c.name == "binomial_square_sum"]
    assert all("exact integers" in c.detail for c in exact)


def test_verify_identities_binomial_log_space():
    from lagstate.cli import _binomial_square_sum_check
    check = _binomial_square_sum_check(45)
    assert check.passed
    assert "log-space" in check.detail


def test_main_report_ok(capsys):
    code = main(["report", "--k-min", "1", "--k-max", "3", "--reproducible"])
    captured = capsys.readouterr()
    assert code == 0
    assert captured.out.splitlines()[0] == CSV_HEADER
    assert len(captured.out.strip().splitlines()) == 4


def test_main_report_tolerance_exit(capsys):
    code = main(["report", "--k-min", "1", "--k-max", "2",
                 "--tol-entropy", "1e-18"])
    captured = capsys.readouterr()
    assert code == 1
    assert "TOLERANCE BREACH" in captured.err


def test_main_usage_errors(capsys):
    code = main(["report", "--model", "torus", "--submanifold", "circle",
                 "--k-min", "3", "--k-max", "4"])
    captured = capsys.readouterr()
    assert code == 2
    assert captured.err.startswith("error:")

    code = main(["report", "--model", "torus", "--k-min", "2", "--k-max", "4"])
    captured = capsys.readouterr()
    assert code == 2
    assert "k >= 3" in captured.err


def test_main_verify(capsys):
    code = main(["verify", "--k-min", "1", "--k-max", "4"])
    captured = capsys.readouterr()
    assert code == 0
    lines = captured.out.strip().splitlines()
    assert lines
    assert all(line.startswith("PASS") for line in lines)


def test_main_out_files_reproducible(tmp_path):
    a = tmp_path / "a.csv"
    b = tmp_path / "b.csv"
    for path in (a, b):
        code = main(["report", "--model", "torus", "--k-min", "3",
                     "--k-max", "5", "--reproducible", "--out", str(path)])
        assert code == 0
    assert a.read_bytes() == b.read_bytes()


def test_main_state_json(capsys):
    code = main(["state", "--k", "3", "--format", "json"])
    captured = capsys.readouterr()
    assert code == 0
    payload = json.loads(captured.out)
    assert payload["d"] == 4
    assert payload["maximally_entangled"] is True
    assert len(payload["schmidt_spectrum"]) == 4
    assert abs(math.fsum(payload["schmidt_spectrum"]) - 1.0) <= 1e-12
    assert len(payload["coeffs_real"]) == 4


def test_main_state_csv(capsys):
    code = main(["state", "--k", "2", "--submanifold", "circle"])
    captured = capsys.readouterr()
    assert code == 0
    lines = captured.out.splitlines()
    assert lines[0] == "j,l,re,im"
    assert "j,alpha" in lines


def test_main_gram_json(capsys):
    code = main(["gram", "--k", "4", "--format", "json"])
    captured = capsys.readouterr()
    assert code == 0
    payload = json.loads(captured.out)
    assert payload["normalized_residual"] <= 1e-12
    assert len(payload["gram_real"]) == 5


def test_main_gram_torus(capsys):
    code = main(["gram", "--model", "torus", "--k", "3", "--format", "json"])
    captured = capsys.readouterr()
    assert code == 0
    payload = json.loads(captured.out)
    assert payload["normalized_residual"] <= 1e-7
    assert len(payload["gram_real"]) == 3


def test_main_gram_csv(capsys):
    code = main(["gram", "--k", "2"])
    captured = capsys.readouterr()
    assert code == 0
    assert captured.out.splitlines()[0] == "j,l,re,im"
