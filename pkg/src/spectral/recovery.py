import itertools
import numpy as np

from dataclasses import dataclass
from scipy.optimize import linear_sum_assignment

from src.errors import DegenerateColumn
from .linalg import PINV_RCOND, project_rows_to_simplex, truncated_pinv
from .moments import ExplorationSegments, MomentStats, collect_triples, estimate_moments
from .tensor import PowerMethodConfig, tensor_decompose

BRUTE_FORCE_MAX_STATES = 8
PAIR_MASS_FLOOR = 1e-8


@dataclass(frozen=True)
class SpectralConfig:
    """스펙트럴 추정 설정. floor 값은 추정치를 열린 유효 영역 안에 둔다."""

    mu_floor: float = 0.01
    p_floor: float = 1e-3
    rcond: float = PINV_RCOND
    power_method: PowerMethodConfig = PowerMethodConfig()


@dataclass(frozen=True, eq=False)
class SpectralEstimate:
    """
    Attributes:
        mu_hat: M×I, [μ_floor, 1−μ_floor] 로 자른 값
        P_hat: M×M, 각 행이 최소 성분 p_floor 인 단체 위에 있다
        A_hat: S×M 관측 행렬 추정치
        B_hat: S×M 셋째 뷰 행렬 추정치
        weights: 텐서 분해 가중치
        residual: 텐서 재구성 잔차
        whitening_condition: 화이트닝 조건수
        n_triples: 사용한 삼중쌍 수
    """

    mu_hat: np.ndarray
    P_hat: np.ndarray
    A_hat: np.ndarray
    B_hat: np.ndarray
    weights: np.ndarray
    residual: float = 0.0
    whitening_condition: float = 1.0
    n_triples: int | None = None


def recover_parameters(
    B_hat: np.ndarray,
    moments: MomentStats,
    n_states: int,
    n_arms: int,
    config: SpectralConfig = SpectralConfig(),
    weights: np.ndarray | None = None,
) -> SpectralEstimate:
    """
    셋째 뷰 성분 B̂ 로부터 μ̂, P̂ 를 복원한다.

    Â = Ŵ_{0,−1}(Ŵ_{1,−1})† B̂ 로 관측 행렬을 얻고, 팔별 정규화
    μ̂(m,i) = Â(s₁,m) / (Â(s₀,m) + Â(s₁,m)) 후 [μ_floor, 1−μ_floor] 로 자른다.
    P̂ = (Â†B̂)ᵀ 의 각 행은 최소 성분 p_floor 인 단체로 사영한다.

    Raises:
        DegenerateColumn: 어떤 팔의 쌍 질량 Â(s₀,m)+Â(s₁,m) 이 1e-8 미만일 때
        ValueError: B̂ 나 적률의 행 수가 2·n_arms 와 다를 때
    """
    B_hat = np.asarray(B_hat, dtype=float)
    if B_hat.shape[1] != n_states:
        raise ValueError(f"B̂ 열 수({B_hat.shape[1]})가 상태 수({n_states})와 다릅니다")
    if B_hat.shape[0] != 2 * n_arms or moments.M2.shape[0] != 2 * n_arms:
        raise ValueError(f"관측 알파벳 크기가 2·I = {2 * n_arms} 와 다릅니다: B̂={B_hat.shape}, M2={moments.M2.shape}")

    # 셋째 뷰 열은 확률 벡터다
    mass = B_hat.sum(axis=0)
    B_hat = B_hat / np.where(mass > PAIR_MASS_FLOOR, mass, 1.0)

    to_second_view = moments.W_0m1 @ truncated_pinv(moments.W_1m1, rank=n_states, rcond=config.rcond)[0]
    A_hat = to_second_view @ B_hat

    zero_mass, one_mass = A_hat[0::2, :], A_hat[1::2, :]      # I×M
    pair_mass = zero_mass + one_mass
    if np.any(pair_mass < PAIR_MASS_FLOOR):
        arm, state = np.argwhere(pair_mass < PAIR_MASS_FLOOR)[0]
        raise DegenerateColumn(f"팔 {arm}, 상태 {state} 의 쌍 질량이 {pair_mass[arm, state]:.3e} 입니다")
    mu_hat = np.clip((one_mass / pair_mass).T, config.mu_floor, 1.0 - config.mu_floor)

    raw_P = (truncated_pinv(A_hat, rcond=config.rcond)[0] @ B_hat).T
    P_hat = project_rows_to_simplex(raw_P, floor=config.p_floor)

    return SpectralEstimate(
        mu_hat=mu_hat,
        P_hat=P_hat,
        A_hat=A_hat,
        B_hat=B_hat,
        weights=np.ones(n_states) / n_states if weights is None else np.asarray(weights),
        n_triples=moments.n_triples,
    )


def estimate_from_moments(
    moments: MomentStats,
    n_states: int,
    n_arms: int,
    rng: np.random.Generator,
    config: SpectralConfig = SpectralConfig(),
) -> SpectralEstimate:
    """텐서 분해 → 복원. 모집단 적률을 넣으면 정답 (μ, P) 가 상태 순열까지 복원된다."""
    decomposition = tensor_decompose(moments.M2, moments.M3, n_states, rng, config.power_method)
    estimate = recover_parameters(decomposition.columns, moments, n_states, n_arms, config, decomposition.weights)
    return SpectralEstimate(
        mu_hat=estimate.mu_hat,
        P_hat=estimate.P_hat,
        A_hat=estimate.A_hat,
        B_hat=estimate.B_hat,
        weights=estimate.weights,
        residual=decomposition.residual,
        whitening_condition=decomposition.whitening_condition,
        n_triples=moments.n_triples,
    )


def estimate_parameters(
    segments: ExplorationSegments,
    n_states: int,
    rng: np.random.Generator,
    config: SpectralConfig = SpectralConfig(),
) -> SpectralEstimate:
    """
    탐색 구간 전체로부터 (μ̂, P̂) 를 추정한다.

    Args:
        segments (ExplorationSegments): 지금까지의 모든 탐색 구간
        n_states (int): 은닉 상태 수 M
        rng (np.random.Generator): 텐서 거듭제곱법 재시작용 난수
        config (SpectralConfig): 추정 설정

    Raises:
        EstimationError 하위 예외 (InsufficientData, IllConditionedMoments, WhiteningFailure,
        NonConvergence, DegenerateColumn)
    """
    triples = collect_triples(segments)
    moments = estimate_moments(triples, n_states, 2 * segments.n_arms, rcond=config.rcond)
    return estimate_from_moments(moments, n_states, segments.n_arms, rng, config)


def align_permutation(mu_hat: np.ndarray, mu_ref: np.ndarray) -> tuple[int, ...]:
    """
    행 ℓ2 거리 합이 최소인 상태 순열을 찾는다. 결과 perm 에 대해 mu_hat[perm] ≈ mu_ref.

    M ≤ 8 이면 M! 개 전수 탐색, 그보다 크면 헝가리안 알고리즘. 평가 전용이다.
    """
    mu_hat = np.asarray(mu_hat, dtype=float)
    mu_ref = np.asarray(mu_ref, dtype=float)
    if mu_hat.shape != mu_ref.shape:
        raise ValueError(f"모양이 다릅니다: {mu_hat.shape} vs {mu_ref.shape}")
    # cost[m, j] = ‖mu_ref[m] − mu_hat[j]‖₂
    cost = np.linalg.norm(mu_ref[:, None, :] - mu_hat[None, :, :], axis=2)
    M = cost.shape[0]
    if M > BRUTE_FORCE_MAX_STATES:
        _, columns = linear_sum_assignment(cost)
        return tuple(int(c) for c in columns)
    best = min(itertools.permutations(range(M)), key=lambda perm: cost[np.arange(M), list(perm)].sum())
    return tuple(best)


def apply_permutation(estimate: SpectralEstimate, perm) -> tuple[np.ndarray, np.ndarray]:
    """정렬된 (μ̂, P̂). P̂ 는 행과 열을 함께 바꾼다."""
    perm = list(perm)
    return estimate.mu_hat[perm], estimate.P_hat[np.ix_(perm, perm)]
