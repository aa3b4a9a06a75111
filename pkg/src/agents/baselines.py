"""
비교용 정책들. 학습 정책(ε-greedy, UCB, SW-UCB, Exp3.S)은 자신의 (팔, 보상) 이력만 보고,
기준 정책(최적 고정 팔, 전정보 오라클, belief 오라클)은 정답 모델을 참조한다.
"""
import collections
import math
import numpy as np

from dataclasses import dataclass
from scipy.special import logsumexp

from src.belief import belief_update
from src.errors import ConfigError
from src.model import HmmBanditModel, RegimeEnvironment, RunStreams, best_fixed_arm
from src.planner import PlannerSolution
from .base import RunLog, play_log

BASELINE_KINDS = (
    "epsilon_greedy",
    "ucb",
    "sw_ucb",
    "exp3s",
    "best_fixed_arm",
    "full_info_oracle",
    "belief_oracle",
)

# SW-UCB 창 크기 규칙. 실제 창은 T 로 정해진다
WINDOW_RULES = {
    "sqrt": lambda T: math.sqrt(T),
    "t23": lambda T: T ** (2.0 / 3.0),
    "4sqrt": lambda T: 4.0 * math.sqrt(T),
}
SWEEP = "sweep"


def resolve_window(window, horizon: int) -> int:
    if isinstance(window, str):
        if window not in WINDOW_RULES:
            raise ConfigError(f"알 수 없는 창 규칙입니다: {window}")
        return max(1, int(round(WINDOW_RULES[window](horizon))))
    return int(window)


@dataclass(frozen=True)
class BaselineConfig:
    """
    Attributes:
        kind: BASELINE_KINDS 중 하나
        epsilon: ε-greedy 탐색 확률
        window: SW-UCB 창. 정수, WINDOW_RULES 의 규칙 이름, 또는 "sweep" (벤치마크 전용)
        xi: (SW-)UCB 탐색 상수
        gamma, alpha: Exp3.S 혼합률과 표류 항. None 이면 L 로부터 정한다
        L: Exp3.S 가 가정하는 변화 횟수. None 이면 T
        arm: best_fixed_arm 에서 고정할 팔. None 이면 정답 모델의 i*
    """

    kind: str
    epsilon: float = 0.1
    window: int | str | None = None
    xi: float = 0.6
    gamma: float | None = None
    alpha: float | None = None
    L: int | None = None
    arm: int | None = None

    def __post_init__(self):
        if self.kind not in BASELINE_KINDS:
            raise ConfigError(f"알 수 없는 기준 알고리즘입니다: {self.kind} (가능: {', '.join(BASELINE_KINDS)})")
        if not 0.0 <= self.epsilon <= 1.0:
            raise ConfigError(f"ε는 [0, 1] 안에 있어야 합니다: {self.epsilon}")
        if self.kind == "sw_ucb":
            if self.window is None:
                raise ConfigError("sw_ucb 에는 window 가 필요합니다")
            if isinstance(self.window, str):
                if self.window != SWEEP and self.window not in WINDOW_RULES:
                    raise ConfigError(f"알 수 없는 창 규칙입니다: {self.window}")
            elif self.window < 1:
                raise ConfigError(f"창 크기는 1 이상이어야 합니다: {self.window}")
        if self.xi <= 0.0:
            raise ConfigError(f"ξ는 양수여야 합니다: {self.xi}")
        if self.gamma is not None and not 0.0 < self.gamma <= 1.0:
            raise ConfigError(f"γ는 (0, 1] 안에 있어야 합니다: {self.gamma}")
        if self.alpha is not None and self.alpha < 0.0:
            raise ConfigError(f"α는 0 이상이어야 합니다: {self.alpha}")
        if self.L is not None and self.L < 1:
            raise ConfigError(f"L은 1 이상이어야 합니다: {self.L}")

    @property
    def label(self) -> str:
        if self.kind == "sw_ucb":
            return f"sw_ucb[w={self.window}]"
        return self.kind


class EpsilonGreedy:
    """처음 I 시점은 각 팔을 한 번씩, 이후 확률 ε 로 균등 팔, 아니면 경험 평균 최대 팔"""

    def __init__(self, n_arms: int, epsilon: float, rng: np.random.Generator):
        self.n_arms = n_arms
        self.epsilon = epsilon
        self.rng = rng
        self.counts = np.zeros(n_arms)
        self.sums = np.zeros(n_arms)

    def select_arm(self, t: int) -> int:
        if t < self.n_arms:
            return t
        if self.rng.random() < self.epsilon:
            return int(self.rng.integers(self.n_arms))
        return int(np.argmax(self.sums / np.maximum(self.counts, 1.0)))

    def observe(self, arm: int, reward: int) -> None:
        self.counts[arm] += 1
        self.sums[arm] += reward


class SlidingWindowUcb:
    """
    최근 w 시점 안의 관측만으로 만든 UCB 지수
        x̄_i(w) + √(ξ log(min(t, w)) / N_i(w))
    window 가 None 이면 창이 없는 표준 UCB 다. 창 안에 관측이 없는 팔을 먼저 (번호 순) 당긴다.
    """

    def __init__(self, n_arms: int, window: int | None, xi: float = 0.6):
        self.n_arms = n_arms
        self.window = window
        self.xi = xi
        self.counts = np.zeros(n_arms)
        self.sums = np.zeros(n_arms)
        self.history = collections.deque()
        self.t = 0

    def index(self) -> np.ndarray:
        horizon = self.t if self.window is None else min(self.t, self.window)
        means = self.sums / np.maximum(self.counts, 1.0)
        bonus = np.sqrt(self.xi * math.log(max(horizon, 1)) / np.maximum(self.counts, 1.0))
        return np.where(self.counts > 0, means + bonus, np.inf)

    def select_arm(self, t: int) -> int:
        return int(np.argmax(self.index()))

    def observe(self, arm: int, reward: int) -> None:
        self.t += 1
        if self.window is not None:
            if len(self.history) == self.window:
                old_arm, old_reward = self.history.popleft()
                self.counts[old_arm] -= 1
                self.sums[old_arm] -= old_reward
            self.history.append((arm, reward))
        self.counts[arm] += 1
        self.sums[arm] += reward


def exp3s_parameters(n_arms: int, horizon: int, L: int | None = None) -> tuple[float, float]:
    """γ = min(1, √(I(L ln(IT)+e)/((e−1)T))), α = 1/T"""
    L = horizon if L is None else L
    gamma = min(1.0, math.sqrt(n_arms * (L * math.log(n_arms * horizon) + math.e) / ((math.e - 1.0) * horizon)))
    return gamma, 1.0 / horizon


class Exp3S:
    """
    균등 혼합 γ 와 공유 항 α 를 갖는 지수 가중치. 가중치는 로그 공간에 두고 매 시점 정규화한다.
    """

    def __init__(self, n_arms: int, gamma: float, alpha: float, rng: np.random.Generator):
        self.n_arms = n_arms
        self.gamma = gamma
        self.alpha = alpha
        self.rng = rng
        self.log_weights = np.zeros(n_arms)
        self._p = self.probabilities()

    def probabilities(self) -> np.ndarray:
        weights = np.exp(self.log_weights - logsumexp(self.log_weights))
        return (1.0 - self.gamma) * weights + self.gamma / self.n_arms

    def select_arm(self, t: int) -> int:
        self._p = self.probabilities()
        return int(self.rng.choice(self.n_arms, p=self._p))

    def observe(self, arm: int, reward: int) -> None:
        total = logsumexp(self.log_weights)
        updated = self.log_weights.copy()
        updated[arm] += self.gamma * (reward / self._p[arm]) / self.n_arms
        if self.alpha > 0.0:
            share = math.log(math.e * self.alpha / self.n_arms) + total
            updated = np.logaddexp(updated, share)
        self.log_weights = updated - updated.max()


class FixedArm:
    def __init__(self, arm: int):
        self.arm = arm

    def select_arm(self, t: int) -> int:
        return self.arm

    def observe(self, arm: int, reward: int) -> None:
        pass


class FullInformationOracle:
    """은닉 상태를 보고 argmax_i μ(M_t, i) 를 고른다. 기준값 전용"""

    def __init__(self, model: HmmBanditModel, env: RegimeEnvironment):
        self.best_arms = np.argmax(model.mu, axis=1)
        self.env = env

    def select_arm(self, t: int) -> int:
        return int(self.best_arms[self.env.state])

    def observe(self, arm: int, reward: int) -> None:
        pass


class BeliefOracle:
    """정답 모델의 계획 결과를 정답 belief 위에서 따른다. ρ* 검증용"""

    def __init__(self, solution: PlannerSolution, initial_belief=None):
        self.solution = solution
        model = solution.model
        self.b = np.full(model.M, 1.0 / model.M) if initial_belief is None else np.asarray(initial_belief, dtype=float)

    def select_arm(self, t: int) -> int:
        return self.solution.act(self.b)

    def observe(self, arm: int, reward: int) -> None:
        self.b = belief_update(self.solution.model, self.b, arm, reward)


def make_policy(
    config: BaselineConfig,
    model: HmmBanditModel,
    env: RegimeEnvironment,
    horizon: int,
    rng: np.random.Generator,
    solution: PlannerSolution | None = None,
):
    n_arms = model.I
    if config.kind == "epsilon_greedy":
        return EpsilonGreedy(n_arms, config.epsilon, rng)
    if config.kind == "ucb":
        return SlidingWindowUcb(n_arms, None, config.xi)
    if config.kind == "sw_ucb":
        if config.window == SWEEP:
            raise ConfigError("window='sweep' 은 벤치마크에서만 쓸 수 있습니다")
        return SlidingWindowUcb(n_arms, resolve_window(config.window, horizon), config.xi)
    if config.kind == "exp3s":
        gamma, alpha = exp3s_parameters(n_arms, horizon, config.L)
        return Exp3S(
            n_arms,
            gamma if config.gamma is None else config.gamma,
            alpha if config.alpha is None else config.alpha,
            rng,
        )
    if config.kind == "best_fixed_arm":
        return FixedArm(best_fixed_arm(model)[0] if config.arm is None else config.arm)
    if config.kind == "full_info_oracle":
        return FullInformationOracle(model, env)
    if solution is None:
        raise ConfigError("belief_oracle 에는 정답 모델의 계획 결과가 필요합니다")
    return BeliefOracle(solution)


def run_baseline(
    model: HmmBanditModel,
    config: BaselineConfig,
    horizon: int,
    seed,
    solution: PlannerSolution | None = None,
) -> RunLog:
    """
    Args:
        model (HmmBanditModel): 환경의 정답 모델 (학습 정책에는 팔 수만 전달된다)
        config (BaselineConfig): 알고리즘과 하이퍼파라미터
        horizon (int): T
        seed: 실행 시드
        solution (PlannerSolution | None): belief_oracle 용 정답 모델 계획
    """
    streams = RunStreams.from_seed(seed)
    env = RegimeEnvironment(model, streams)
    policy = make_policy(config, model, env, horizon, np.random.default_rng(streams.agent), solution)
    return play_log(config.label, policy, env, horizon)
