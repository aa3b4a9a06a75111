import numpy as np

from dataclasses import dataclass

from src.errors import DegenerateLikelihood
from src.model import HmmBanditModel, check_belief

LIKELIHOOD_FLOOR = 1e-300


@dataclass(frozen=True, eq=False)
class BeliefHistory:
    """
    b₁에서 출발해 (팔, 보상) 이력을 재생한 belief 수열.

    Attributes:
        initial (np.ndarray): b₁
        arms (np.ndarray): 0부터 시작하는 팔 번호, 길이 t
        rewards (np.ndarray): 0/1 보상, 길이 t
        beliefs (np.ndarray): (t+1)×M, beliefs[0] = b₁
    """

    initial: np.ndarray
    arms: np.ndarray
    rewards: np.ndarray
    beliefs: np.ndarray

    @property
    def last(self) -> np.ndarray:
        return self.beliefs[-1]

    def __len__(self) -> int:
        return len(self.arms)


def likelihood_table(model: HmmBanditModel) -> np.ndarray:
    """table[i, r] = (μ_{m,i}^r (1−μ_{m,i})^{1−r})_m, 모양 I×2×M"""
    return np.stack([1.0 - model.mu.T, model.mu.T], axis=1)


def belief_update(model: HmmBanditModel, b, arm: int, reward: int) -> np.ndarray:
    """
    베이즈 전방 커널 H(b, i, r): 관측으로 필터링한 뒤 P로 한 스텝 예측한다.

    Args:
        model (HmmBanditModel): 갱신에 쓸 (μ, P)
        b: 현재 belief
        arm (int): 0부터 시작하는 팔
        reward (int): 0 또는 1

    Returns:
        np.ndarray: 다음 belief. 모든 성분이 ε 이상이다.
    """
    b = np.asarray(b, dtype=float)
    likelihood = model.mu[:, arm] if reward else 1.0 - model.mu[:, arm]
    weighted = likelihood * b
    normalizer = weighted.sum()
    if not normalizer > LIKELIHOOD_FLOOR:
        raise DegenerateLikelihood(f"정규화 상수가 {normalizer:.3e} 입니다 (arm={arm}, reward={reward}, b={b})")
    return (weighted / normalizer) @ model.P


def belief_update_batch(model: HmmBanditModel, beliefs: np.ndarray, arm: int, reward: int) -> tuple[np.ndarray, np.ndarray]:
    """
    격자 전체에 대한 belief_update. (다음 belief들, 관측 확률 Pr(r | b, i))를 돌려준다.
    """
    likelihood = model.mu[:, arm] if reward else 1.0 - model.mu[:, arm]
    weighted = beliefs * likelihood[None, :]
    probability = weighted.sum(axis=1)
    if np.any(probability <= LIKELIHOOD_FLOOR):
        raise DegenerateLikelihood("격자 belief 중 정규화 상수가 0인 점이 있습니다")
    return (weighted / probability[:, None]) @ model.P, probability


def expected_reward(model: HmmBanditModel, b, arm: int) -> float:
    """c̄(b, i) = Σ_m μ(m, i) b(m)"""
    return float(np.asarray(b, dtype=float) @ model.mu[:, arm])


def replay_beliefs(model: HmmBanditModel, b1, arms, rewards) -> BeliefHistory:
    """
    b₁에서 전체 이력을 주어진 모델로 다시 재생한다 (SEEU의 belief 재보정).
    """
    b1 = check_belief(b1, model.M)
    arms = np.asarray(arms, dtype=np.int64)
    rewards = np.asarray(rewards, dtype=np.int64)
    if arms.shape != rewards.shape:
        raise ValueError("arms와 rewards 길이가 다릅니다")

    table = likelihood_table(model)
    P = model.P
    beliefs = np.empty((len(arms) + 1, model.M))
    beliefs[0] = b = b1
    for t in range(len(arms)):
        weighted = table[arms[t], rewards[t]] * b
        normalizer = weighted.sum()
        if not normalizer > LIKELIHOOD_FLOOR:
            raise DegenerateLikelihood(f"t={t} 에서 정규화 상수가 {normalizer:.3e} 입니다")
        b = (weighted / normalizer) @ P
        beliefs[t + 1] = b
    return BeliefHistory(initial=b1, arms=arms, rewards=rewards, beliefs=beliefs)
