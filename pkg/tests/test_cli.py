from __future__ import annotations

import csv
import io
import json
import math
import subprocess
import sys

import pytest

import fracspec.cli as cli
import fracspec.verify as verify
from fracspec import ConfigError, SpectralSolution
from fracspec.reference import TABLE2


def run(capsys, *argv: str) -> tuple[int, str, str]:
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows(text: str) -> list[dict[str, str]]:
    return list(csv.DictReader(io.StringIO(text)))


# ---------------------------------------------------------------------------
# configuration


def test_defaults():
    cfg = cli.build_config([], env={})
    assert cfg.mode == "table1"
    assert cfg.alpha_list == cli.DEFAULT_ALPHAS
    assert cfg.dims == (3, 4, 5)


def test_flags_repeatable():
    cfg = cli.build_config(["--mode", "table2", "--alpha", "0.9", "--alpha", "1.0", "--dim", "4", "--n", "0"], env={})
    assert cfg.alpha_list == (0.9, 1.0)
    assert cfg.dims == (4,)
    assert cfg.n_list == (0,)


def test_config_file_and_precedence(tmp_path):
    conf = tmp_path / "run.conf"
    conf.write_text("# molecule\nmode = table2\nalpha = 0.9, 1.0\nmass=0.5\ngrid_step = 0.002\n")
    cfg = cli.build_config(["--config", str(conf), "--mass", "0.7"], env={})
    assert cfg.mode == "table2"
    assert cfg.alpha_list == (0.9, 1.0)
    assert cfg.grid_step == 0.002
    assert cfg.mass == 0.7


def test_env_config(tmp_path):
    conf = tmp_path / "env.conf"
    conf.write_text("mode = potential\npoints = 7\n")
    cfg = cli.build_config([], env={cli.ENV_CONFIG: str(conf)})
    assert cfg.mode == "potential"
    assert cfg.r_points == 7
    cfg = cli.build_config(["--points", "9"], env={cli.ENV_CONFIG: str(conf)})
    assert cfg.r_points == 9


@pytest.mark.parametrize(
    "text",
    ["mode table2\n", "colour = red\n", "points = many\n"],
)
def test_bad_config_file(tmp_path, text):
    conf = tmp_path / "bad.conf"
    conf.write_text(text)
    with pytest.raises(ConfigError):
        cli.build_config(["--config", str(conf)], env={})


@pytest.mark.parametrize(
    "kwargs",
    [
        {"mode": "plot"},
        {"alpha_list": ()},
        {"alpha_list": (1.2,)},
        {"dims": (1,)},
        {"n_list": (-1,)},
        {"ell": -1},
        {"mass": 0.0},
        {"delta": 0.5},
        {"mode": "potential", "r_min": 5.0, "r_max": 1.0},
        {"mode": "wavefunction", "r_points": 1},
        {"k_max": 0.0},
        {"format": "xml"},
        {"workers": 0},
    ],
)
def test_run_config_validation(kwargs):
    with pytest.raises(ConfigError):
        cli.RunConfig(**kwargs)


def test_rmin_rmax_only_checked_where_used():
    cli.RunConfig(mode="table1", r_min=5.0, r_max=1.0)


def test_format_value():
    assert cli.format_value(1.70130, 4) == "1.701"
    assert cli.format_value(-4.0e-4, 4) == "-4.000e-04"
    assert cli.format_value(2.5e6, 4) == "2.500e+06"
    assert cli.format_value(20.0, 4) == "20.00"
    assert cli.format_value(0.0, 4) == "0"
    assert cli.format_value(float("nan"), 4) == "nan"
    assert cli.format_value(3, 4) == "3"
    assert cli.format_value(True, 4) == "true"
    assert float(cli.format_value(0.1, 17)) == 0.1


def test_branch_file(tmp_path):
    ref = cli.load_branch_file("reference")
    assert len(ref) == 21
    assert ref[(3, 1.0)] == 0
    path = tmp_path / "b.txt"
    path.write_text("# N alpha index\n3 0.9 2\n")
    assert cli.load_branch_file(str(path)) == {(3, 0.9): 2}
    path.write_text("3 0.9\n")
    with pytest.raises(ConfigError):
        cli.load_branch_file(str(path))
    with pytest.raises(ConfigError):
        cli.load_branch_file(str(tmp_path / "missing.txt"))
    assert cli.load_branch_file(None) == {}


# ---------------------------------------------------------------------------
# modes


def test_table1_output(capsys):
    code, out, _ = run(capsys, "--mode", "table1")
    assert code == 0
    table = {r["alpha"]: r for r in rows(out)}
    assert table["0.8000"]["A"] == "0.2000"
    assert table["0.8000"]["B"] == "-4.000e-05"
    assert table["0.8000"]["tau"] == "1.236"
    assert table["1.000"]["A"] == "20.00"
    assert table["1.000"]["tau"] == "1.000"
    assert table["0.7000"]["A"] == "0.02000"
    assert table["0.7000"]["B"] == "-1.265e-05"
    assert float(table["0.7000"]["tau"]) == pytest.approx(1.7013, abs=1e-3)


def test_table2_reference_branches(capsys):
    code, out, _ = run(capsys, "--mode", "table2", "--branch-file", "reference", "--format", "json")
    assert code == 0
    recs = {(r["N"], r["alpha"]): r for r in json.loads(out)}
    for row in TABLE2:
        rec = recs[(row.dim_N, row.alpha)]
        assert rec["k_star"] == pytest.approx(row.k_star, abs=1e-4)
        assert rec["status"] == "ok"
    assert recs[(3, 1.0)]["Q1"] == pytest.approx(-6.6551, abs=1e-4)
    assert recs[(3, 1.0)]["gamma_alpha"] == pytest.approx(8.6551, abs=1e-4)
    assert recs[(5, 0.95)]["Q1"] == pytest.approx(-5.6611, abs=1e-4)
    assert recs[(5, 0.95)]["gamma_alpha"] == pytest.approx(7.4561, abs=2e-3)
    assert recs[(3, 1.0)]["E_n1_eV"] == pytest.approx(-0.8456, rel=0.05)


def test_table2_no_root_row_is_nan_and_exit3(capsys):
    code, out, err = run(capsys, "--mode", "table2", "--alpha", "1.0", "--dim", "3", "--kmax", "1.0")
    assert code == 3
    (rec,) = rows(out)
    assert rec["status"] == "NoRootError"
    assert rec["k_star"] == "nan"
    assert "failed" in err


def test_spectrum_json_round_trip(capsys):
    code, out, _ = run(capsys, "--mode", "spectrum", "--alpha", "0.9", "--alpha", "1.0", "--format", "json")
    assert code == 0
    recs = json.loads(out)
    assert len(recs) == 2 * 3 * 2
    from fracspec import ModelParams, QuantumNumbers, solve_state

    for rec in recs:
        sol = SpectralSolution.from_dict(rec)
        direct = solve_state(
            sol.alpha,
            QuantumNumbers(sol.n, sol.ell, sol.dim_N),
            ModelParams.kratzer_fues(sol.alpha),
            k_star=sol.k_star,
        )
        # bit-for-bit equality after the JSON trip
        assert sol == direct
        assert rec["energy_ev"] == sol.energy_ev


def test_spectrum_csv_17_digits_round_trip(capsys):
    code, out, _ = run(capsys, "--mode", "spectrum", "--alpha", "0.85", "--dim", "4")
    assert code == 0
    js_code, js, _ = run(capsys, "--mode", "spectrum", "--alpha", "0.85", "--dim", "4", "--format", "json")
    for rec_csv, rec_json in zip(rows(out), json.loads(js)):
        for key in ("k_star", "gamma_alpha", "energy", "epsilon_alpha"):
            assert float(rec_csv[key]) == rec_json[key]


def test_roots_mode(capsys):
    code, out, _ = run(capsys, "--mode", "roots", "--alpha", "1.0", "--dim", "3")
    assert code == 0
    recs = rows(out)
    assert sum(r["selected"] == "true" for r in recs) == 1
    ks = [float(r["k"]) for r in recs]
    assert min(abs(k - 4.327531) for k in ks) < 1e-6
    assert all(abs(float(r["q2_residual"])) < 1e-10 for r in recs)


def test_potential_mode(capsys):
    code, out, _ = run(capsys, "--mode", "potential", "--rmin", "5e4", "--rmax", "2e5", "--points", "1501")
    assert code == 0
    recs = rows(out)
    by_alpha: dict[str, list[dict[str, str]]] = {}
    for r in recs:
        by_alpha.setdefault(r["alpha"], []).append(r)
    assert len(by_alpha) == 7
    step = (2e5 - 5e4) / 1500
    curv_at_r0 = []
    for a, curve in by_alpha.items():
        best = min(curve, key=lambda r: float(r["V"]))
        assert float(best["V"]) == pytest.approx(-2e-9, rel=1e-9)
        assert abs(float(best["r"]) - 1e5) <= step
        curv_at_r0.append((float(a), float(min(curve, key=lambda r: abs(float(r["r"]) - 1e5))["d2V"])))
    curv_at_r0.sort()
    assert [c for _, c in curv_at_r0] == sorted(c for _, c in curv_at_r0)


def test_potential_tends_to_c(capsys):
    code, out, _ = run(capsys, "--mode", "potential", "--alpha", "0.8", "--rmin", "1e12", "--rmax", "1e13", "--points", "3")
    assert code == 0
    assert all(abs(float(r["V"])) < 1e-13 for r in rows(out))


def test_wavefunction_files(tmp_path, capsys):
    out_dir = tmp_path / "wf"
    code, _, err = run(
        capsys, "--mode", "wavefunction", "--alpha", "1.0", "--alpha", "0.9", "--dim", "3", "--n", "0", "--n", "1",
        "--out", str(out_dir),
    )
    assert code == 0
    assert "0 failed" in err
    files = sorted(p.name for p in out_dir.iterdir())
    assert files == sorted(
        cli.wavefunction_filename(3, a, n) for a in (0.9, 1.0) for n in (0, 1)
    )
    data = rows((out_dir / cli.wavefunction_filename(3, 1.0, 1)).read_text())
    assert len(data) == 500
    R = [float(r["R"]) for r in data]
    signs = [math.copysign(1.0, v) for v in R if v != 0.0]
    assert sum(s1 != s2 for s1, s2 in zip(signs, signs[1:])) == 1
    r = [float(x["r"]) for x in data]
    assert r == sorted(r)
    assert r[0] == 1e3 and r[-1] == 5e5


def test_wavefunction_stdout(capsys):
    code, out, _ = run(capsys, "--mode", "wavefunction", "--alpha", "1.0", "--dim", "3", "--n", "2", "--points", "50")
    assert code == 0
    recs = rows(out)
    assert len(recs) == 50
    assert set(recs[0]) == {"N", "alpha", "n", "r", "R"}


def test_wavefunction_summary_counts(capsys):
    cfg = cli.RunConfig(mode="wavefunction", alpha_list=(0.8,), dims=(3,), n_list=(0, 1), r_points=20)
    tables, summary = cli.run_wavefunction(cfg)
    assert summary == {"tuples": 2, "failed": 0, "dropped_points": 0}
    assert set(tables) == {(3, 0.8, 0), (3, 0.8, 1)}


def test_determinism_byte_identical(capsys):
    args = ("--mode", "table2", "--alpha", "0.8", "--alpha", "1.0")
    _, first, _ = run(capsys, *args)
    _, second, _ = run(capsys, *args)
    assert first == second
    _, s1, _ = run(capsys, "--mode", "spectrum", "--alpha", "0.9")
    _, s2, _ = run(capsys, "--mode", "spectrum", "--alpha", "0.9")
    assert s1 == s2


def test_workers_do_not_change_output(capsys):
    args = ("--mode", "table2", "--alpha", "0.9", "--alpha", "1.0")
    _, serial, _ = run(capsys, *args)
    _, parallel, _ = run(capsys, *args, "--workers", "2")
    assert serial == parallel


def test_output_file(tmp_path, capsys):
    target = tmp_path / "sub" / "t1.csv"
    code, out, _ = run(capsys, "--out", str(target))
    assert code == 0
    assert out == ""
    assert target.read_text().startswith("alpha,A,B,tau\n")


# ---------------------------------------------------------------------------
# exit codes


def test_exit_config_errors(capsys, tmp_path):
    assert run(capsys, "--mode", "plot")[0] == 2
    assert run(capsys, "--alpha", "1.5")[0] == 2
    assert run(capsys, "--branch-file", str(tmp_path / "none"))[0] == 2
    assert run(capsys, "--config", str(tmp_path / "none"))[0] == 2


def test_exit_unwritable_output(capsys, tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("x")
    assert run(capsys, "--out", str(blocker / "t.csv"))[0] == 2


def test_help_exits_zero(capsys):
    assert run(capsys, "--help")[0] == 0


def test_verify_exit_code_on_failure(monkeypatch, capsys):
    bad = verify.CheckResult("tables", "injected", 1.0, 0.0, False)
    monkeypatch.setattr(cli, "run_checks", lambda: [bad])
    code, out, err = run(capsys, "--mode", "verify")
    assert code == 4
    assert "verification failed" in err


def test_verify_known_discrepancy_does_not_fail(monkeypatch, capsys):
    known = verify.CheckResult("tables", "printed value", 1.0, 0.0, False, known_discrepancy=True)
    monkeypatch.setattr(cli, "run_checks", lambda: [known])
    assert run(capsys, "--mode", "verify")[0] == 0


# ---------------------------------------------------------------------------
# verify suites


def test_tau_fault_injection(monkeypatch):
    real = verify.tau_factor
    monkeypatch.setattr(verify, "tau_factor", lambda a, d=-0.5: 1.01 * real(a, d))
    results = verify.run_checks(["tables"])
    tau_checks = [r for r in results if r.name.endswith("tau")]
    assert len(tau_checks) == 7
    assert all(not r.passed for r in tau_checks)
    assert not verify.all_passed(results)


def test_tables_suite_clean():
    results = verify.run_checks(["tables"])
    assert verify.all_passed(results)
    known = {r.name for r in results if r.known_discrepancy}
    assert "table1 alpha=0.85 tau" in known


def test_spectrum_suite_reports_residual():
    results = {r.name: r for r in verify.run_checks(["spectrum"])}
    res = results["alpha=1 radial equation residual"]
    assert res.passed and res.error < 1e-5


@pytest.mark.slow
def test_verify_mode_end_to_end(capsys):
    code, out, _ = run(capsys, "--mode", "verify", "--format", "json")
    assert code == 0
    recs = json.loads(out)
    assert {r["suite"] for r in recs} == set(verify.SUITES)
    assert all(r["passed"] or r["known_discrepancy"] for r in recs)


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "fracspec", "--mode", "table1", "--alpha", "1.0"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert proc.stdout == "alpha,A,B,tau\n1.000,20.00,-4.000e-04,1.000\n"
