"""
정답 환경 시뮬레이터.

한 번의 실행(run)은 하나의 SeedSequence에서 갈라진 세 개의 독립 스트림을 쓴다.
- chain: 초기 상태와 상태 전이
- reward: 매 시점 보상용 균등 난수 한 개
- agent: 에이전트 자신의 무작위성
상태 경로와 보상 난수는 어떤 팔을 당기든 같은 개수만큼 소비되므로, 시드를 고정하면
정책을 바꿔도 은닉 상태 경로가 바뀌지 않는다.
"""
import numpy as np

from dataclasses import dataclass
from typing import Protocol, Sequence, runtime_checkable

from .hmm_bandit import HmmBanditModel, check_belief, initial_distribution

BLOCK_SIZE = 4096


@runtime_checkable
class ArmPolicy(Protocol):
    """팔을 고르는 주체. 상태는 보지 못하고 자신의 (팔, 보상) 이력만 받는다."""

    def select_arm(self, t: int) -> int: ...

    def observe(self, arm: int, reward: int) -> None: ...


def as_seed_sequence(seed) -> np.random.SeedSequence:
    if isinstance(seed, np.random.SeedSequence):
        return seed
    return np.random.SeedSequence(int(seed))


def _child(seed_seq: np.random.SeedSequence, index: int) -> np.random.SeedSequence:
    # spawn()은 내부 카운터를 바꾸므로 spawn_key를 직접 지정해 항상 같은 자식을 만든다
    return np.random.SeedSequence(seed_seq.entropy, spawn_key=tuple(seed_seq.spawn_key) + (index,))


@dataclass(frozen=True)
class RunStreams:
    chain: np.random.SeedSequence
    reward: np.random.SeedSequence
    agent: np.random.SeedSequence

    @classmethod
    def from_seed(cls, seed) -> "RunStreams":
        root = as_seed_sequence(seed)
        return cls(chain=_child(root, 0), reward=_child(root, 1), agent=_child(root, 2))


@dataclass(frozen=True, eq=False)
class Trajectory:
    """
    Attributes:
        states: 은닉 상태 (진단용)
        arms: 0부터 시작하는 팔 번호
        rewards: 0/1 보상
    """

    states: np.ndarray
    arms: np.ndarray
    rewards: np.ndarray

    def __post_init__(self):
        if not (len(self.states) == len(self.arms) == len(self.rewards)):
            raise ValueError("states, arms, rewards 길이가 다릅니다")
        if np.any((self.rewards != 0) & (self.rewards != 1)):
            raise ValueError("보상은 0/1이어야 합니다")

    def __len__(self) -> int:
        return len(self.rewards)


class RegimeEnvironment:
    """은닉 체인 + 베르누이 보상 환경. 한 실행 안에서만 쓰며 스레드 안전하지 않다."""

    def __init__(self, model: HmmBanditModel, streams: RunStreams, initial_belief=None):
        self.model = model
        self._cum_P = np.cumsum(model.P, axis=1)
        self._cum_P[:, -1] = 1.0
        self._chain_rng = np.random.default_rng(streams.chain)
        self._reward_rng = np.random.default_rng(streams.reward)

        start = initial_distribution(model) if initial_belief is None else check_belief(initial_belief, model.M)
        cum_start = np.cumsum(start)
        cum_start[-1] = 1.0
        first = int(np.searchsorted(cum_start, self._chain_rng.random(), side="right"))

        self._states = np.empty(BLOCK_SIZE, dtype=np.int64)
        self._states[0] = min(first, model.M - 1)
        self._n_states = 1
        self._reward_uniforms = np.empty(0)
        self.t = 0

    def _extend_states(self, upto: int) -> None:
        while self._n_states <= upto:
            if self._n_states == len(self._states):
                self._states = np.concatenate([self._states, np.empty(len(self._states), dtype=np.int64)])
            block = min(BLOCK_SIZE, len(self._states) - self._n_states)
            uniforms = self._chain_rng.random(block)
            state = int(self._states[self._n_states - 1])
            last_index = self.model.M - 1
            for j in range(block):
                state = min(int(np.searchsorted(self._cum_P[state], uniforms[j], side="right")), last_index)
                self._states[self._n_states + j] = state
            self._n_states += block

    def _extend_rewards(self, upto: int) -> None:
        while len(self._reward_uniforms) <= upto:
            grow = max(BLOCK_SIZE, len(self._reward_uniforms))
            self._reward_uniforms = np.concatenate([self._reward_uniforms, self._reward_rng.random(grow)])

    def states(self, horizon: int) -> np.ndarray:
        """앞으로의 상태 경로 처음 horizon개 (정책과 무관하다)"""
        self._extend_states(horizon - 1)
        return self._states[:horizon].copy()

    @property
    def state(self) -> int:
        """현재 은닉 상태. 전정보 오라클과 진단에만 쓴다."""
        self._extend_states(self.t)
        return int(self._states[self.t])

    def pull(self, arm: int) -> int:
        """0부터 시작하는 팔을 당겨 보상을 받고 시점을 한 칸 진행한다."""
        self._extend_rewards(self.t)
        reward = int(self._reward_uniforms[self.t] < self.model.mu[self.state, arm])
        self.t += 1
        return reward

    def rewards_for(self, arms: np.ndarray) -> np.ndarray:
        """고정 팔 수열을 벡터로 처리한다. pull()을 반복한 것과 결과가 같다."""
        arms = np.asarray(arms, dtype=np.int64)
        start, stop = self.t, self.t + len(arms)
        if len(arms) == 0:
            return np.zeros(0, dtype=np.int64)
        self._extend_states(stop - 1)
        self._extend_rewards(stop - 1)
        states = self._states[start:stop]
        rewards = (self._reward_uniforms[start:stop] < self.model.mu[states, arms]).astype(np.int64)
        self.t = stop
        return rewards


def uniform_arms(n_arms: int, horizon: int, rng: np.random.Generator) -> np.ndarray:
    return rng.integers(0, n_arms, size=horizon)


def sample_trajectory(
    model: HmmBanditModel,
    arm_source: "ArmPolicy | Sequence[int] | np.ndarray",
    horizon: int,
    seed,
    initial_belief=None,
) -> Trajectory:
    """
    모델에서 길이 horizon의 궤적을 생성한다.

    Args:
        model (HmmBanditModel): 정답 모델
        arm_source: 고정 팔 수열(0부터 시작) 또는 ArmPolicy
        horizon (int): T ≥ 1
        seed: int 또는 SeedSequence. 같은 시드면 같은 궤적
        initial_belief: 초기 상태 분포. None이면 모델 설정(기본: 정상 분포)

    Returns:
        Trajectory: 상태, 팔, 보상
    """
    if horizon < 1:
        raise ValueError(f"horizon은 1 이상이어야 합니다: {horizon}")
    env = RegimeEnvironment(model, RunStreams.from_seed(seed), initial_belief=initial_belief)
    states = env.states(horizon)

    if isinstance(arm_source, ArmPolicy):
        arms = np.empty(horizon, dtype=np.int64)
        rewards = np.empty(horizon, dtype=np.int64)
        for t in range(horizon):
            arm = int(arm_source.select_arm(t))
            reward = env.pull(arm)
            arm_source.observe(arm, reward)
            arms[t] = arm
            rewards[t] = reward
    else:
        arms = np.asarray(arm_source, dtype=np.int64)[:horizon]
        if len(arms) != horizon:
            raise ValueError(f"팔 수열 길이({len(arms)})가 horizon({horizon})보다 짧습니다")
        if np.any((arms < 0) | (arms >= model.I)):
            raise ValueError("팔 번호가 범위를 벗어났습니다")
        rewards = env.rewards_for(arms)
    return Trajectory(states=states, arms=arms, rewards=rewards)
