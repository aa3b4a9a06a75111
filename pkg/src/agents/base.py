"""
실행 기록(RunLog)과 상태를 보지 않는 정책을 환경에서 돌리는 루프.
"""
import numpy as np

from dataclasses import dataclass, field

from src.errors import InvariantViolation
from src.model import ArmPolicy, RegimeEnvironment

PHASE_PLAY = "play"


@dataclass(frozen=True, eq=False)
class EpisodeRecord:
    """
    SEEU 에피소드 하나의 산출물. 추정이나 계획이 실패하면 status 가 fallback 이다.

    Attributes:
        k: 에피소드 번호 (1부터)
        explore_start, exploit_start, stop: 0부터 시작하는 구간 경계
        status: "ok", "fallback", "skipped" (활용 구간이 비어 추정을 생략)
        n_triples: 추정에 쓴 삼중쌍 수
        delta_k: δ/k³
    """

    k: int
    explore_start: int
    exploit_start: int
    stop: int
    status: str
    n_triples: int = 0
    delta_k: float = float("nan")
    mu_hat: np.ndarray | None = None
    P_hat: np.ndarray | None = None
    radius_mu: np.ndarray | None = None
    radius_P: float = float("nan")
    mu_opt: np.ndarray | None = None
    P_opt: np.ndarray | None = None
    rho: float = float("nan")
    planner_residual: float = float("nan")
    candidate_index: int = -1
    message: str = ""


@dataclass(frozen=True, eq=False)
class RunLog:
    """
    한 실행의 시점별 기록. 시점 t 는 1부터 센다.

    Attributes:
        algorithm: 알고리즘 이름
        episode: 시점별 에피소드 번호 (기준 정책은 0)
        phase: 시점별 단계 (explore / exploit / play)
        arms: 0부터 시작하는 팔
        rewards: 0/1 보상
        beliefs: T×M, 당시 추정 모델 아래 belief (없으면 NaN). 기준 정책은 None
        episodes: 에피소드별 기록
    """

    algorithm: str
    episode: np.ndarray
    phase: np.ndarray
    arms: np.ndarray
    rewards: np.ndarray
    beliefs: np.ndarray | None = None
    episodes: list[EpisodeRecord] = field(default_factory=list)

    def __post_init__(self):
        n = len(self.arms)
        if not (len(self.episode) == len(self.phase) == len(self.rewards) == n):
            raise InvariantViolation("RunLog 열 길이가 서로 다릅니다")
        if self.beliefs is not None and len(self.beliefs) != n:
            raise InvariantViolation("RunLog belief 길이가 다릅니다")

    def __len__(self) -> int:
        return len(self.arms)

    @property
    def t(self) -> np.ndarray:
        return np.arange(1, len(self) + 1)

    @property
    def total_reward(self) -> int:
        return int(self.rewards.sum())

    def phase_mask(self, phase: str) -> np.ndarray:
        return self.phase == phase


def play(policy: ArmPolicy, env: RegimeEnvironment, horizon: int) -> tuple[np.ndarray, np.ndarray]:
    """정책이 고른 팔을 당기고 보상만 돌려준다. 정책은 상태를 받지 않는다."""
    arms = np.empty(horizon, dtype=np.int64)
    rewards = np.empty(horizon, dtype=np.int64)
    for t in range(horizon):
        arm = int(policy.select_arm(t))
        reward = env.pull(arm)
        policy.observe(arm, reward)
        arms[t] = arm
        rewards[t] = reward
    return arms, rewards


def play_log(algorithm: str, policy: ArmPolicy, env: RegimeEnvironment, horizon: int) -> RunLog:
    arms, rewards = play(policy, env, horizon)
    return RunLog(
        algorithm=algorithm,
        episode=np.zeros(horizon, dtype=np.int64),
        phase=np.full(horizon, PHASE_PLAY),
        arms=arms,
        rewards=rewards,
    )
