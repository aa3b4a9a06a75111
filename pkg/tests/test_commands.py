import orjson
import pandas as pd
import pytest

from click.testing import CliRunner

from seeu_bench import cli


@pytest.fixture
def runner():
    return CliRunner()


def _pairs(output: str) -> dict[str, str]:
    return dict(line.split("=", 1) for line in output.splitlines() if "=" in line and not line.startswith("slope["))


def test_all_commands_are_registered():
    assert {"simulate", "estimate", "plan", "seeu", "baseline", "bench", "slope", "bound"} <= set(cli.commands)


def test_simulate(runner, model_file, tmp_path):
    out = tmp_path / "trajectory.csv"
    beliefs = tmp_path / "beliefs.csv"
    args = ["simulate", "--model", str(model_file), "--T", "50", "--seed", "3", "--out", str(out), "--beliefs", str(beliefs)]
    result = runner.invoke(cli, args)
    assert result.exit_code == 0, result.output
    assert len(pd.read_csv(out)) == 50
    assert len(pd.read_csv(beliefs)) == 51

    first = out.read_bytes()
    assert runner.invoke(cli, args).exit_code == 0
    assert out.read_bytes() == first


def test_simulate_rejects_unknown_arm(runner, model_file, tmp_path):
    result = runner.invoke(cli, ["simulate", "--model", str(model_file), "--arm", "3", "--out", str(tmp_path / "t.csv")])
    assert result.exit_code != 0


def test_estimate(runner, model_file, tmp_path):
    out = tmp_path / "estimate.json"
    moments = tmp_path / "moments.csv"
    result = runner.invoke(
        cli,
        ["estimate", "--model", str(model_file), "--samples", "20000", "--seed", "1", "--out", str(out), "--dump-moments", str(moments)],
    )
    assert result.exit_code == 0, result.output
    document = orjson.loads(out.read_bytes())
    assert document["n_triples"] == 19998
    assert sorted(document["permutation"]) == [1, 2]
    assert set(pd.read_csv(moments)["name"]) == {"W_m10", "W_10", "W_0m1", "W_1m1", "M2"}


def test_plan(runner, model_file, tmp_path):
    out = tmp_path / "policy.csv"
    result = runner.invoke(cli, ["plan", "--model", str(model_file), "--grid", "20", "--out", str(out)])
    assert result.exit_code == 0, result.output
    pairs = _pairs(result.output)
    assert 0.70 < float(pairs["rho"]) < 0.77
    assert float(pairs["span_h"]) <= float(pairs["span_bound"])
    assert len(pd.read_csv(out)) == 21


def test_seeu(runner, model_file, tmp_path):
    out = tmp_path / "run"
    args = [
        "seeu", "--model", str(model_file), "--T", "300", "--tau1", "30", "--tau2", "10",
        "--grid", "20", "--candidates", "2", "--seed", "5", "--out", str(out),
    ]
    result = runner.invoke(cli, args)
    assert result.exit_code == 0, result.output
    runlog = pd.read_csv(out / "runlog.csv")
    episodes = pd.read_csv(out / "episodes.csv")
    assert list(runlog.columns)[:5] == ["t", "episode", "phase", "arm", "reward"]
    assert len(runlog) == 300
    assert episodes["episode"].tolist() == list(range(1, len(episodes) + 1))

    first = (out / "runlog.csv").read_bytes()
    assert runner.invoke(cli, args).exit_code == 0
    assert (out / "runlog.csv").read_bytes() == first


@pytest.mark.parametrize(
    "extra",
    [
        ["--kind", "epsilon_greedy"],
        ["--kind", "sw_ucb", "--window", "sqrt"],
        ["--kind", "sw_ucb", "--window", "25"],
        ["--kind", "exp3s", "--L", "4"],
        ["--kind", "best_fixed_arm", "--arm", "2"],
    ],
)
def test_baseline(runner, model_file, tmp_path, extra):
    out = tmp_path / "runlog.csv"
    result = runner.invoke(cli, ["baseline", "--model", str(model_file), "--T", "100", "--out", str(out), *extra])
    assert result.exit_code == 0, result.output
    assert len(pd.read_csv(out)) == 100


def test_baseline_invalid_window_fails(runner, model_file, tmp_path):
    result = runner.invoke(
        cli, ["baseline", "--model", str(model_file), "--kind", "sw_ucb", "--window", "cube", "--out", str(tmp_path / "x.csv")]
    )
    assert result.exit_code != 0
    assert "ConfigError" in result.output


def test_bench(runner, model_file, tmp_path):
    config = tmp_path / "bench.json"
    config.write_bytes(orjson.dumps({
        "model": str(model_file),
        "algorithms": [{"kind": "ucb"}, {"kind": "best_fixed_arm"}],
        "horizons": [50, 100, 200],
        "runs": 2,
        "rho_resolution": 20,
    }))
    out = tmp_path / "results"
    result = runner.invoke(cli, ["bench", "--config", str(config), "--out", str(out), "--workers", "1"])
    assert result.exit_code == 0, result.output
    for name in ("raw.csv", "summary.csv", "slopes.csv", "meta.txt"):
        assert (out / name).exists()
    assert _pairs(result.output)["runs"] == "12"


def test_bench_invalid_config(runner, tmp_path):
    config = tmp_path / "bench.json"
    config.write_bytes(orjson.dumps({"model": "x", "algorithms": [], "horizons": [10]}))
    result = runner.invoke(cli, ["bench", "--config", str(config)])
    assert result.exit_code != 0
    assert "algorithms" in result.output


def test_slope(runner, tmp_path):
    points = tmp_path / "points.csv"
    pd.DataFrame({"T": [10, 100, 1000], "mean": [1.0, 10.0, 100.0]}).to_csv(points, index=False)
    result = runner.invoke(cli, ["slope", str(points)])
    assert result.exit_code == 0, result.output
    assert result.output.startswith("slope[all]=1.000000")


def test_slope_with_too_few_points(runner, tmp_path):
    points = tmp_path / "points.csv"
    pd.DataFrame({"algo": ["a", "a"], "T": [10, 100], "mean": [1.0, 2.0]}).to_csv(points, index=False)
    result = runner.invoke(cli, ["slope", str(points)])
    assert result.exit_code == 0
    assert "slope[a]=absent" in result.output


def test_bound(runner, model_file):
    result = runner.invoke(cli, ["bound", "--model", str(model_file), "--T", "10000", "--grid", "20"])
    assert result.exit_code == 0, result.output
    pairs = _pairs(result.output)
    assert float(pairs["L1"]) == pytest.approx(720.0)
    assert float(pairs["D"]) == pytest.approx(745.5, abs=0.1)
    assert float(pairs["high_probability"]) > 0.0


def test_missing_model_file_fails(runner, tmp_path):
    result = runner.invoke(cli, ["plan", "--model", str(tmp_path / "none.model"), "--out", str(tmp_path / "p.csv")])
    assert result.exit_code != 0
    assert "ConfigError" in result.output
