"""
추정치 주변 신뢰 영역. 반경은 C·√(log(6(S²+S)/δ)/n) 이다.

상수 C1, C2 는 설정값이다. 이론상 이들은 정상 분포의 최솟값, 혼합률 (G, θ), 뷰 행렬의
최소 특이값 σ, σ_{1,−1}, N0 등으로 정해지지만 여기서는 직접 계산하지 않고 손으로 조정한다.
"""
import math
import numpy as np

from dataclasses import dataclass

from .recovery import SpectralEstimate


@dataclass(frozen=True, eq=False)
class ConfidenceRegion:
    """
    Attributes:
        mu_hat, P_hat: 영역의 중심
        radius_mu: μ 각 행의 ℓ2 반경 (길이 M)
        radius_P: P 의 스펙트럴 노름 반경
        delta: 신뢰 수준 1−δ 의 δ
        C1, C2: 반경 상수
        n: 사용한 표본(삼중쌍) 수
    """

    mu_hat: np.ndarray
    P_hat: np.ndarray
    radius_mu: np.ndarray
    radius_P: float
    delta: float
    C1: float = 1.0
    C2: float = 1.0
    n: int = 0

    @classmethod
    def point(cls, mu, P) -> "ConfidenceRegion":
        """반경 0 인 영역 (정답 모델 주입 테스트용)"""
        mu = np.asarray(mu, dtype=float)
        return cls(mu_hat=mu, P_hat=np.asarray(P, dtype=float), radius_mu=np.zeros(mu.shape[0]), radius_P=0.0, delta=1.0)


def delta_schedule(delta: float, episode: int) -> float:
    """δ_k = δ / k³"""
    return delta / episode ** 3


def confidence_radius(n: int, delta: float, n_symbols: int, constant: float = 1.0) -> float:
    if n < 1:
        raise ValueError(f"n은 1 이상이어야 합니다: {n}")
    if not 0.0 < delta < 1.0:
        raise ValueError(f"δ는 (0, 1) 안에 있어야 합니다: {delta}")
    S = n_symbols
    return constant * math.sqrt(math.log(6.0 * (S * S + S) / delta) / n)


def confidence_region(
    estimate: SpectralEstimate,
    n: int,
    delta: float,
    C1: float = 1.0,
    C2: float = 1.0,
) -> ConfidenceRegion:
    """
    Args:
        estimate (SpectralEstimate): 영역의 중심
        n (int): 삼중쌍 수
        delta (float): δ_k
        C1, C2 (float): μ, P 반경 상수
    """
    n_symbols = 2 * estimate.mu_hat.shape[1]
    radius = confidence_radius(n, delta, n_symbols)
    return ConfidenceRegion(
        mu_hat=estimate.mu_hat,
        P_hat=estimate.P_hat,
        radius_mu=np.full(estimate.mu_hat.shape[0], C1 * radius),
        radius_P=C2 * radius,
        delta=delta,
        C1=C1,
        C2=C2,
        n=n,
    )
