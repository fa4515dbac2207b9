import json

import pytest

from tascap import ExperimentSpec, GaussianApprox, SystemConfig
from tascap import asymptotics
from tascap.cli import main
from tascap.experiments import (
    default_spec,
    run_cdf_experiment,
    run_ergodic_sweep,
    run_outage_sweep,
    run_validation_suite,
)


def _base(seed=5, **kw):
    fields = dict(n_t=32, n_r=2, l_t=2, rho=1.0, seed=seed)
    fields.update(kw)
    return SystemConfig(**fields)


def _cdf_spec(tmp_path, name="a.csv", trials=150, seed=5):
    return ExperimentSpec(
        kind="cdf",
        base=_base(seed=seed),
        sweep={"n_t": [8, 16]},
        trials=trials,
        output_path=str(tmp_path / name),
    )


# --- determinism -------------------------------------------------------------

def test_cdf_rerun_and_thread_count_leave_bytes_unchanged(tmp_path):
    spec_a = _cdf_spec(tmp_path, "a.csv")
    spec_b = _cdf_spec(tmp_path, "b.csv")
    run_cdf_experiment(spec_a, threads=1, render=False)
    run_cdf_experiment(spec_b, threads=3, render=False)
    a = (tmp_path / "a.csv").read_bytes()
    b = (tmp_path / "b.csv").read_bytes()
    assert a.replace(b"a.csv", b"x.csv") == b.replace(b"b.csv", b"x.csv")
    a_sum = (tmp_path / "a_summary.csv").read_bytes()
    b_sum = (tmp_path / "b_summary.csv").read_bytes()
    assert a_sum.replace(b"a.csv", b"x.csv") == b_sum.replace(b"b.csv", b"x.csv")


def test_ergodic_outage_validate_rerun_determinism(tmp_path):
    erg = ExperimentSpec(
        kind="ergodic",
        base=_base(),
        sweep={"l_t": [2, 4], "rho_db": [0.0, 10.0]},
        trials=120,
        output_path=str(tmp_path / "e.csv"),
    )
    run_ergodic_sweep(erg, threads=1, render=False)
    first = (tmp_path / "e.csv").read_bytes()
    run_ergodic_sweep(erg, threads=4, render=False)
    assert (tmp_path / "e.csv").read_bytes() == first

    out = ExperimentSpec(
        kind="outage",
        base=_base(),
        sweep={"n_r": [2, 3], "l_t": [2, 4]},
        trials=120,
        output_path=str(tmp_path / "o.csv"),
    )
    run_outage_sweep(out, threads=1, render=False)
    first = (tmp_path / "o.csv").read_bytes()
    run_outage_sweep(out, threads=4, render=False)
    assert (tmp_path / "o.csv").read_bytes() == first

    val = ExperimentSpec(
        kind="validate",
        base=_base(n_t=256, n_r=8, l_t=16),
        sweep={"checks": ["det_expansion", "trimmed_sum"]},
        trials=150,
        output_path=str(tmp_path / "v.json"),
    )
    run_validation_suite(val, threads=1)
    first = (tmp_path / "v.json").read_bytes()
    run_validation_suite(val, threads=4)
    assert (tmp_path / "v.json").read_bytes() == first


# --- spec plumbing ------------------------------------------------------------

def test_spec_round_trip_and_unknown_keys():
    spec = default_spec("outage", seed=3, trials=500)
    clone = ExperimentSpec.from_dict(spec.to_dict())
    assert clone == spec
    with pytest.raises(ValueError, match="unknown"):
        ExperimentSpec.from_dict({"kind": "cdf", "base": _base().to_dict(), "bogus": 1})


def test_empty_sweep_is_an_error(tmp_path):
    spec = ExperimentSpec(
        kind="cdf", base=_base(), sweep={"n_t": []}, trials=10,
        output_path=str(tmp_path / "x.csv"),
    )
    with pytest.raises(ValueError, match="nothing to run"):
        run_cdf_experiment(spec, render=False)
    bad = ExperimentSpec(
        kind="validate", base=_base(), sweep={"checks": ["no_such_check"]}, trials=10,
        output_path=str(tmp_path / "x.json"),
    )
    with pytest.raises(ValueError, match="unknown validation checks"):
        run_validation_suite(bad)


def test_single_trial_degenerate_cdf(tmp_path):
    spec = _cdf_spec(tmp_path, "one.csv", trials=1)
    result = run_cdf_experiment(spec, render=False)
    assert (tmp_path / "one.csv").exists()
    for row in result["summary"]:
        assert row[4] == 0.0  # variance column collapses, no crash


def test_kind_mismatch_rejected(tmp_path):
    spec = _cdf_spec(tmp_path)
    with pytest.raises(ValueError, match="expected kind"):
        run_ergodic_sweep(spec, render=False)


# --- cross-experiment consistency ----------------------------------------------

def test_cdf_and_ergodic_share_realizations(tmp_path):
    seed, trials = 99, 400
    cdf_spec = ExperimentSpec(
        kind="cdf",
        base=SystemConfig(n_t=64, n_r=8, l_t=16, rho=1.0, seed=seed),
        sweep={"n_t": [64]},
        trials=trials,
        output_path=str(tmp_path / "c.csv"),
    )
    erg_spec = ExperimentSpec(
        kind="ergodic",
        base=SystemConfig(n_t=64, n_r=8, l_t=16, rho=1.0, seed=seed),
        sweep={"l_t": [16], "rho_db": [0.0]},
        trials=trials,
        output_path=str(tmp_path / "g.csv"),
    )
    cdf_mean = run_cdf_experiment(cdf_spec, render=False)["summary"][0][3]
    erg_mean = run_ergodic_sweep(erg_spec, render=False)["rows"][0][3]
    assert cdf_mean == erg_mean  # identical per-trial streams, identical reduction


# --- artifact format -------------------------------------------------------------

def test_csv_embeds_spec_and_uses_10_digit_floats(tmp_path):
    spec = _cdf_spec(tmp_path, "fmt.csv")
    run_cdf_experiment(spec, render=False)
    lines = (tmp_path / "fmt.csv").read_text().splitlines()
    assert lines[0].startswith("# artifact=tascap ")
    assert lines[1].startswith("# spec=")
    echo = json.loads(lines[1].split("=", 1)[1])
    assert echo["trials"] == 150 and echo["sweep"]["n_t"] == [8, 16]
    header = lines[2].split(",")
    assert header == ["n_t", "x", "empirical_cdf", "gaussian_cdf", "ks_distance"]
    cell = lines[3].split(",")[1]
    assert cell == f"{float(cell):.10g}"  # canonical 10-significant-digit form


def test_outage_reports_matching_convention(tmp_path):
    spec = ExperimentSpec(
        kind="outage",
        base=SystemConfig(n_t=64, n_r=4, l_t=8, rho=1.0, seed=11),
        sweep={"n_r": [4], "l_t": [4, 8]},
        trials=2000,
        output_path=str(tmp_path / "conv.csv"),
    )
    result = run_outage_sweep(spec, render=False)
    assert result["matched_convention"] in ("paper", "standard")
    text = (tmp_path / "conv.csv").read_text()
    assert f"# matched_convention={result['matched_convention']}" in text


# --- validation canary ------------------------------------------------------------

def test_corrupted_variance_mapping_trips_hardening(tmp_path, monkeypatch):
    real = asymptotics.capacity_gaussian_approx

    def corrupted(cfg):
        honest = real(cfg)
        return GaussianApprox(eta=honest.eta, sigma_sq=0.0, xi=0.0)

    monkeypatch.setattr(asymptotics, "capacity_gaussian_approx", corrupted)
    spec = ExperimentSpec(
        kind="validate",
        base=_base(n_t=256, n_r=8, l_t=16),
        sweep={"checks": ["hardening"]},
        trials=300,
        output_path=str(tmp_path / "canary.json"),
    )
    report = run_validation_suite(spec)
    assert report["all_passed"] is False
    assert report["checks"][0]["name"] == "hardening"
    assert report["checks"][0]["passed"] is False


# --- CLI ----------------------------------------------------------------------

def test_cli_cdf_writes_artifacts(tmp_path, capsys):
    out = tmp_path / "cli.csv"
    rc = main(
        [
            "cdf",
            "--n-t-grid", "16,32",
            "--trials", "60",
            "--seed", "3",
            "--threads", "2",
            "--out", str(out),
        ]
    )
    assert rc == 0
    assert out.exists() and out.with_name("cli_summary.csv").exists()
    assert out.with_suffix(".png").exists()
    assert capsys.readouterr().out == ""  # data never goes to stdout


def test_cli_no_plot_skips_figure(tmp_path):
    out = tmp_path / "noplot.csv"
    rc = main(["cdf", "--n-t-grid", "16", "--trials", "40", "--out", str(out), "--no-plot"])
    assert rc == 0
    assert not out.with_suffix(".png").exists()


def test_cli_invalid_config_yields_error_json(tmp_path, capsys):
    rc = main(["cdf", "--n-t-grid", "4", "--trials", "10", "--out", str(tmp_path / "x.csv")])
    assert rc == 1
    err = capsys.readouterr().err.strip().splitlines()[-1]
    payload = json.loads(err)
    assert payload["error"] == "ValueError"
    assert "l_t > n_t" in payload["message"]


def test_cli_config_file_system_shape(tmp_path):
    cfg_path = tmp_path / "cfg.json"
    cfg_path.write_text(json.dumps({"n_t": 16, "n_r": 2, "l_t": 2, "rho_db": 0.0, "seed": 4}))
    out = tmp_path / "from_cfg.csv"
    rc = main(
        ["cdf", "--config", str(cfg_path), "--n-t-grid", "8,16", "--trials", "50", "--out", str(out)]
    )
    assert rc == 0
    echo = json.loads(out.read_text().splitlines()[1].split("=", 1)[1])
    assert echo["base"]["seed"] == 4 and echo["base"]["n_r"] == 2


def test_cli_config_file_experiment_shape(tmp_path):
    spec = ExperimentSpec(
        kind="ergodic",
        base=_base(seed=8),
        sweep={"l_t": [2], "rho_db": [0.0]},
        trials=40,
        output_path=str(tmp_path / "spec_out.csv"),
    )
    spec_path = tmp_path / "spec.json"
    spec_path.write_text(json.dumps(spec.to_dict()))
    rc = main(["ergodic", "--config", str(spec_path), "--no-plot"])
    assert rc == 0
    assert (tmp_path / "spec_out.csv").exists()
    # kind mismatch between file and subcommand is refused
    rc = main(["outage", "--config", str(spec_path), "--no-plot"])
    assert rc == 1


def test_cli_unknown_config_keys_rejected(tmp_path, capsys):
    cfg_path = tmp_path / "bad.json"
    cfg_path.write_text(json.dumps({"n_t": 16, "n_r": 2, "l_t": 2, "rho": 1.0}))
    rc = main(["cdf", "--config", str(cfg_path), "--trials", "10", "--no-plot",
               "--out", str(tmp_path / "y.csv")])
    assert rc == 1
    assert "unknown" in capsys.readouterr().err
