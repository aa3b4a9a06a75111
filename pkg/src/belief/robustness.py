"""
belief 오차와 초기값 망각에 관한 수치 상수.

행렬 노름 규약: ‖μ̂−μ‖₁ 은 열 ℓ1 거리의 최댓값, ‖P̂−P‖_F 는 성분별 ℓ2 노름.
"""
import math
import numpy as np

from dataclasses import dataclass

from src.errors import ZeroTransitionEntry
from src.model import HmmBanditModel


@dataclass(frozen=True)
class BeliefErrorConstants:
    L1: float
    L2: float

    def bound(self, mu_error: float, transition_error: float) -> float:
        return self.L1 * mu_error + self.L2 * transition_error


def belief_error_constants(model: HmmBanditModel, epsilon: float | None = None) -> BeliefErrorConstants:
    """
    L1 = 4M((1−ε)/ε)² / min{μ_min, 1−μ_max},  L2 = 4M(1−ε)²/ε³ + √M

    Args:
        model (HmmBanditModel): 기준 모델
        epsilon (float | None): ε를 직접 지정할 때 (기본: P의 최소 성분)

    Raises:
        ZeroTransitionEntry: ε = 0
    """
    eps = model.epsilon if epsilon is None else float(epsilon)
    if eps <= 0.0:
        raise ZeroTransitionEntry("ε = 0 이면 belief 오차 상수가 정의되지 않습니다")
    M = model.M
    margin = min(float(model.mu.min()), 1.0 - float(model.mu.max()))
    L1 = 4.0 * M * ((1.0 - eps) / eps) ** 2 / margin
    L2 = 4.0 * M * (1.0 - eps) ** 2 / eps ** 3 + math.sqrt(M)
    return BeliefErrorConstants(L1=L1, L2=L2)


def forgetting_constants(epsilon: float) -> tuple[float, float]:
    """초기 belief 영향의 지수 감쇠 상수 (C₄, α) = (2(1−ε)/ε, (1−2ε)/(1−ε))"""
    if not 0.0 < epsilon <= 0.5:
        raise ValueError(f"ε는 (0, 1/2] 안에 있어야 합니다: {epsilon}")
    return 2.0 * (1.0 - epsilon) / epsilon, (1.0 - 2.0 * epsilon) / (1.0 - epsilon)


def mu_error_norm(mu_hat, mu) -> float:
    return float(np.abs(np.asarray(mu_hat) - np.asarray(mu)).sum(axis=0).max())


def transition_error_norm(P_hat, P) -> float:
    return float(np.linalg.norm(np.asarray(P_hat) - np.asarray(P), ord="fro"))
