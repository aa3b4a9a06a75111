import numpy as np
import orjson
import pandas as pd
import pytest

from src.agents import BaselineConfig, run_baseline
from src.belief import replay_beliefs
from src.errors import ConfigError, RowsNotStochastic
from src.model import sample_trajectory, validate_model
from src.planner import PlannerConfig, plan
from src.store import (
    belief_history_frame,
    load_model,
    policy_frame,
    read_meta,
    runlog_frame,
    save_model,
    trajectory_frame,
    write_csv,
    write_meta,
)
from .conftest import PAPER_MU, PAPER_P


def _write(path, document):
    path.write_bytes(orjson.dumps(document))
    return path


def test_model_file_round_trip(paper_model, model_file):
    loaded = load_model(model_file)
    np.testing.assert_array_equal(loaded.P, paper_model.P)
    np.testing.assert_array_equal(loaded.mu, paper_model.mu)
    document = orjson.loads(model_file.read_bytes())
    assert document["M"] == 2 and document["I"] == 2
    assert model_file.read_bytes().endswith(b"\n")


def test_model_file_keeps_initial_belief(tmp_path):
    model = validate_model(PAPER_P, PAPER_MU, initial_belief=[0.25, 0.75])
    loaded = load_model(save_model(model, tmp_path / "nested" / "x.model"))
    np.testing.assert_allclose(loaded.initial_belief, [0.25, 0.75])


def test_model_file_errors(tmp_path):
    with pytest.raises(ConfigError):
        load_model(tmp_path / "missing.model")

    broken = tmp_path / "broken.model"
    broken.write_text("{", encoding="utf-8")
    with pytest.raises(ConfigError):
        load_model(broken)

    with pytest.raises(ConfigError):
        load_model(_write(tmp_path / "no_mu.model", {"P": PAPER_P}))
    with pytest.raises(ConfigError):
        load_model(_write(tmp_path / "list.model", [1, 2]))
    with pytest.raises(ConfigError):
        load_model(_write(tmp_path / "shape.model", {"P": PAPER_P, "mu": [[0.9, 0.1]]}))
    with pytest.raises(ConfigError):
        load_model(_write(tmp_path / "count.model", {"M": 3, "P": PAPER_P, "mu": PAPER_MU}))


def test_model_file_assumption_violation(tmp_path):
    path = _write(tmp_path / "rows.model", {"P": [[0.5, 0.6], [0.5, 0.5]], "mu": PAPER_MU})
    with pytest.raises(RowsNotStochastic):
        load_model(path)


def test_trajectory_csv_is_one_based(paper_model, tmp_path):
    trajectory = sample_trajectory(paper_model, np.array([0, 1, 1, 0, 1]), 5, seed=1)
    path = write_csv(trajectory_frame(trajectory), tmp_path / "trajectory.csv")
    frame = pd.read_csv(path)
    assert list(frame.columns) == ["t", "state", "arm", "reward", "observation"]
    assert frame["t"].tolist() == [1, 2, 3, 4, 5]
    assert frame["arm"].tolist() == [1, 2, 2, 1, 2]
    assert frame["state"].isin([1, 2]).all()
    expected = 2 * (frame["arm"] - 1) + frame["reward"] + 1
    assert frame["observation"].tolist() == expected.tolist()


def test_belief_history_csv(paper_model, tmp_path):
    history = replay_beliefs(paper_model, [0.5, 0.5], [0, 1, 0], [1, 0, 0])
    path = write_csv(belief_history_frame(history), tmp_path / "beliefs.csv")
    frame = pd.read_csv(path)
    assert list(frame.columns) == ["t", "b1", "b2", "arm", "reward"]
    assert len(frame) == 4
    assert frame["arm"].iloc[:3].tolist() == [1, 2, 1]
    assert pd.isna(frame["arm"].iloc[-1]) and pd.isna(frame["reward"].iloc[-1])
    np.testing.assert_allclose(frame[["b1", "b2"]].sum(axis=1), 1.0)


def test_runlog_csv(paper_model, tmp_path):
    log = run_baseline(paper_model, BaselineConfig(kind="ucb"), 20, seed=0)
    frame = runlog_frame(log)
    assert list(frame.columns) == ["t", "episode", "phase", "arm", "reward"]
    assert frame["arm"].between(1, 2).all()
    assert set(frame["phase"]) == {"play"}


def test_policy_csv(paper_model):
    solution = plan(paper_model, PlannerConfig(resolution=10))
    frame = policy_frame(solution)
    assert list(frame.columns) == ["b1", "b2", "arm", "h"]
    assert len(frame) == 11
    assert frame["arm"].between(1, 2).all()


def test_write_csv_float_format(tmp_path):
    path = write_csv(pd.DataFrame({"x": [1.0 / 3.0]}), tmp_path / "x.csv")
    assert path.read_text(encoding="utf-8") == "x\n0.333333333333\n"


def test_meta_file(tmp_path):
    path = write_meta(tmp_path / "meta.txt", {"rho_star": 0.1234567890123456, "runs": 3})
    items = read_meta(path)
    assert items["rho_star"] == "0.123456789012"
    assert items["runs"] == "3"
    assert "version.python" in items
    assert list(items)[:2] == ["rho_star", "runs"]
