"""
누적 regret 𝓡_t = t·ρ* − Σ_{s≤t} r_s 와 고확률 regret 상한.
"""
import math
import numpy as np

from dataclasses import dataclass

from .base import RunLog


def regret(log: "RunLog | np.ndarray", rho_star: float) -> np.ndarray:
    """
    누적 regret 수열. 경로별로는 음수일 수 있다.

    Args:
        log: RunLog 또는 0/1 보상 배열
        rho_star (float): 정답 모델을 계획해 얻은 ρ*
    """
    rewards = log.rewards if isinstance(log, RunLog) else np.asarray(log)
    t = np.arange(1, len(rewards) + 1)
    return t * rho_star - np.cumsum(rewards)


def final_regret(log: "RunLog | np.ndarray", rho_star: float) -> float:
    rewards = log.rewards if isinstance(log, RunLog) else np.asarray(log)
    return float(len(rewards) * rho_star - rewards.sum())


@dataclass(frozen=True)
class RegretBound:
    """
    Attributes:
        constant: 상수 C
        high_probability: 확률 1−δ 로 성립하는 상한
        expected: 기대 regret 상한 (δ = 3(S+1)/T 로 다시 계산한 C 사용)
    """

    constant: float
    high_probability: float
    expected: float


def _bound_constant(rho_star, D, L1, L2, M, tau1, tau2, C1, C2, delta) -> float:
    estimation = (D + 1.0 + (1.0 + D / 2.0) * L1) * M ** 1.5 * C1 + (1.0 + D / 2.0) * L2 * math.sqrt(M) * C2
    return (
        3.0 * math.sqrt(2.0) * estimation * tau2 ** (1.0 / 3.0) / math.sqrt(tau1)
        + 3.0 * tau2 ** (-2.0 / 3.0) * (tau1 * rho_star + D)
        + (D + 1.0) * math.sqrt(2.0 * max(math.log(1.0 / delta), 0.0))
    )


def regret_upper_bound(
    horizon: int,
    rho_star: float,
    D: float,
    L1: float,
    L2: float,
    n_states: int,
    n_arms: int,
    tau1: int,
    tau2: int,
    C1: float = 1.0,
    C2: float = 1.0,
    delta: float = 0.05,
    T0: int = 0,
) -> RegretBound:
    """
    SEEU regret 상한을 평가한다. T0 (추정기가 작동하기 시작하는 시점)는 사용자가 준다.

        C = 3√2[(D+1+(1+D/2)L1)M^{3/2}C1 + (1+D/2)L2 M^{1/2}C2]τ2^{1/3}τ1^{−1/2}
            + 3τ2^{−2/3}(τ1ρ*+D) + (D+1)√(2ln(1/δ))
        고확률: C·T^{2/3}·√(log(3(S+1)T/δ)) + T0·ρ*
        기대값: C·T^{2/3}·√(2 log T) + (T0 + 11(S+1))·ρ*
    """
    if horizon < 2:
        raise ValueError(f"T는 2 이상이어야 합니다: {horizon}")
    if not 0.0 < delta < 1.0:
        raise ValueError(f"δ는 (0, 1) 안에 있어야 합니다: {delta}")
    S = 2 * n_arms
    T = float(horizon)
    constant = _bound_constant(rho_star, D, L1, L2, n_states, tau1, tau2, C1, C2, delta)
    high_probability = constant * T ** (2.0 / 3.0) * math.sqrt(math.log(3.0 * (S + 1) * T / delta)) + T0 * rho_star

    expected_delta = min(3.0 * (S + 1) / T, 1.0)
    expected_constant = _bound_constant(rho_star, D, L1, L2, n_states, tau1, tau2, C1, C2, expected_delta)
    expected = expected_constant * T ** (2.0 / 3.0) * math.sqrt(2.0 * math.log(T)) + (T0 + 11 * (S + 1)) * rho_star
    return RegretBound(constant=constant, high_probability=high_probability, expected=expected)
