"""
결과 표를 pandas DataFrame 으로 만들고 CSV 로 쓴다.

CSV 의 팔 번호와 관측 번호는 1부터 센다. 실수는 %.12g 로 고정해 재실행 시 바이트 단위로 같게 한다.
"""
import numpy as np
import pandas as pd

from pathlib import Path

from src.agents import RunLog
from src.belief import BeliefHistory
from src.model import Trajectory, observation_codes
from src.planner import PlannerSolution
from src.spectral import MomentStats

FLOAT_FORMAT = "%.12g"


def write_csv(frame: pd.DataFrame, path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(path, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
    return path


def _belief_columns(beliefs: np.ndarray) -> dict[str, np.ndarray]:
    return {f"b{m + 1}": beliefs[:, m] for m in range(beliefs.shape[1])}


def trajectory_frame(trajectory: Trajectory) -> pd.DataFrame:
    arms = trajectory.arms + 1
    return pd.DataFrame({
        "t": np.arange(1, len(trajectory) + 1),
        "state": trajectory.states + 1,
        "arm": arms,
        "reward": trajectory.rewards,
        "observation": observation_codes(trajectory.arms, trajectory.rewards) + 1,
    })


def runlog_frame(log: RunLog) -> pd.DataFrame:
    columns = {
        "t": log.t,
        "episode": log.episode,
        "phase": log.phase,
        "arm": log.arms + 1,
        "reward": log.rewards,
    }
    if log.beliefs is not None:
        columns.update(_belief_columns(log.beliefs))
    return pd.DataFrame(columns)


def _flat(prefix: str, matrix) -> dict[str, float]:
    if matrix is None:
        return {}
    matrix = np.atleast_2d(np.asarray(matrix, dtype=float))
    return {
        f"{prefix}_{row + 1}_{col + 1}": float(matrix[row, col])
        for row in range(matrix.shape[0])
        for col in range(matrix.shape[1])
    }


def episodes_frame(log: RunLog) -> pd.DataFrame:
    """에피소드별 추정치, 반경, 낙관적 모델, ρ^k. 행렬 성분은 mu_hat_m_i 꼴 열로 편다."""
    rows = []
    for record in log.episodes:
        row = {
            "episode": record.k,
            "explore_start": record.explore_start + 1,
            "exploit_start": record.exploit_start + 1,
            "stop": record.stop,
            "status": record.status,
            "n_triples": record.n_triples,
            "delta_k": record.delta_k,
            "radius_P": record.radius_P,
            "rho": record.rho,
            "planner_residual": record.planner_residual,
            "candidate": record.candidate_index,
        }
        if record.radius_mu is not None:
            row.update({f"radius_mu_{m + 1}": float(r) for m, r in enumerate(record.radius_mu)})
        row.update(_flat("mu_hat", record.mu_hat))
        row.update(_flat("P_hat", record.P_hat))
        row.update(_flat("mu_opt", record.mu_opt))
        row.update(_flat("P_opt", record.P_opt))
        row["message"] = record.message
        rows.append(row)
    return pd.DataFrame(rows)


def belief_history_frame(history: BeliefHistory) -> pd.DataFrame:
    """(t, b_t, arm_t, reward_t). 마지막 행은 이력을 모두 반영한 belief 이고 arm, reward 가 비어 있다."""
    n = len(history)
    frame = pd.DataFrame({"t": np.arange(1, n + 2)})
    for name, column in _belief_columns(history.beliefs).items():
        frame[name] = column
    frame["arm"] = pd.array(np.append(history.arms + 1, 0), dtype="Int64")
    frame["reward"] = pd.array(np.append(history.rewards, 0), dtype="Int64")
    frame.loc[n, ["arm", "reward"]] = pd.NA
    return frame


def policy_frame(solution: PlannerSolution) -> pd.DataFrame:
    frame = pd.DataFrame(_belief_columns(solution.grid.points))
    frame["arm"] = solution.policy + 1
    frame["h"] = solution.h
    return frame


def moments_frame(moments: MomentStats) -> pd.DataFrame:
    """Ŵ 와 M̂2 를 (이름, 행, 열, 값) 형태로 푼다. 번호는 1부터."""
    rows = []
    for name in ("W_m10", "W_10", "W_0m1", "W_1m1", "M2"):
        matrix = getattr(moments, name)
        for (row, col), value in np.ndenumerate(matrix):
            rows.append({"name": name, "row": row + 1, "col": col + 1, "value": float(value)})
    return pd.DataFrame(rows)
