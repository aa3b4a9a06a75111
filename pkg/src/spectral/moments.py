"""
탐색 구간 관측으로부터의 적률 통계.

관측 y_t 는 (팔, 보상) 쌍의 원-핫 벡터(차원 S = 2I)다. 연속한 세 관측 (y_{t−1}, y_t, y_{t+1})
을 세 개의 '뷰'로 보고, 가운데 상태 M_t 가 주어지면 세 뷰가 조건부 독립이라는 구조를 쓴다.
    A₁ = E[y_{t−1} | M_t],  A₂ = E[y_t | M_t] (관측 행렬),  A₃ = E[y_{t+1} | M_t] = A₂Pᵀ
"""
import numpy as np

from dataclasses import dataclass, field

from src.errors import IllConditionedMoments, InsufficientData
from src.model import HmmBanditModel, observation_codes, stationary_distribution
from .linalg import PINV_RCOND, truncated_pinv


@dataclass
class ExplorationSegments:
    """
    탐색 구간별 (팔, 보상) 수열. 구간 경계는 보존된다.
    """

    n_arms: int
    arms: list[np.ndarray] = field(default_factory=list)
    rewards: list[np.ndarray] = field(default_factory=list)

    def append(self, arms, rewards) -> None:
        arms = np.asarray(arms, dtype=np.int64).copy()
        rewards = np.asarray(rewards, dtype=np.int64).copy()
        if arms.shape != rewards.shape:
            raise ValueError("arms와 rewards 길이가 다릅니다")
        if np.any((arms < 0) | (arms >= self.n_arms)):
            raise ValueError("팔 번호가 범위를 벗어났습니다")
        if np.any((rewards != 0) & (rewards != 1)):
            raise ValueError("보상은 0/1이어야 합니다")
        self.arms.append(arms)
        self.rewards.append(rewards)

    def __len__(self) -> int:
        return len(self.arms)

    @property
    def n_samples(self) -> int:
        return int(sum(len(a) for a in self.arms))


@dataclass(frozen=True, eq=False)
class MomentStats:
    """
    Attributes:
        W_m10: Ŵ_{−1,0} = E[y_{t−1} ⊗ y_t]
        W_10:  Ŵ_{1,0}  = E[y_{t+1} ⊗ y_t]
        W_0m1: Ŵ_{0,−1} = E[y_t ⊗ y_{t−1}]
        W_1m1: Ŵ_{1,−1} = E[y_{t+1} ⊗ y_{t−1}]
        M2: E[ŷ_{t−1} ⊗ ŷ_t]
        M3: E[ŷ_{t−1} ⊗ ŷ_t ⊗ y_{t+1}]
        n_triples: 사용한 삼중쌍 수 (모집단 적률이면 None)
    """

    W_m10: np.ndarray
    W_10: np.ndarray
    W_0m1: np.ndarray
    W_1m1: np.ndarray
    M2: np.ndarray
    M3: np.ndarray
    n_triples: int | None = None


@dataclass(frozen=True, eq=False)
class ViewMatrices:
    A1: np.ndarray
    A2: np.ndarray
    A3: np.ndarray
    omega: np.ndarray


def collect_triples(segments: ExplorationSegments) -> np.ndarray:
    """
    구간 안에 완전히 들어가는 연속 삼중쌍만 모은다. 구간 경계를 넘는 삼중쌍은 제외된다.

    Returns:
        np.ndarray: n×3 정수 배열, 각 행은 0부터 시작하는 관측 번호 (y_{t−1}, y_t, y_{t+1})

    Raises:
        InsufficientData: 삼중쌍이 하나도 없을 때
    """
    blocks = []
    for arms, rewards in zip(segments.arms, segments.rewards):
        if len(arms) < 3:
            continue
        codes = observation_codes(arms, rewards)
        blocks.append(np.column_stack([codes[:-2], codes[1:-1], codes[2:]]))
    if not blocks:
        raise InsufficientData("길이 3 이상인 탐색 구간이 없습니다")
    return np.vstack(blocks)


def _triple_frequencies(triples: np.ndarray, n_symbols: int) -> np.ndarray:
    S = n_symbols
    flat = (triples[:, 0] * S + triples[:, 1]) * S + triples[:, 2]
    counts = np.bincount(flat, minlength=S ** 3).astype(float)
    return (counts / len(triples)).reshape(S, S, S)


def estimate_moments(
    triples: np.ndarray,
    n_states: int,
    n_symbols: int,
    rcond: float = PINV_RCOND,
) -> MomentStats:
    """
    삼중쌍으로부터 Ŵ, M̂2, M̂3 를 추정한다.

    ŷ_{t−1} = Ŵ_{1,0}(Ŵ_{−1,0})† y_{t−1},  ŷ_t = Ŵ_{1,−1}(Ŵ_{0,−1})† y_t 이고, 의사역행렬은
    rank M 으로 자른다. y 가 원-핫이므로 평균은 삼중쌍 빈도 텐서와의 축약으로 계산한다.

    Raises:
        InsufficientData: 삼중쌍이 없을 때
        IllConditionedMoments: 어떤 Ŵ 의 유효 rank 가 M 미만일 때
    """
    triples = np.asarray(triples, dtype=np.int64)
    if triples.ndim != 2 or len(triples) == 0:
        raise InsufficientData("삼중쌍이 없습니다")

    F = _triple_frequencies(triples, n_symbols)
    W_m10 = F.sum(axis=2)       # [y_{t−1}, y_t]
    W_10 = F.sum(axis=0).T      # [y_{t+1}, y_t]
    W_0m1 = W_m10.T             # [y_t, y_{t−1}]
    W_1m1 = F.sum(axis=1).T     # [y_{t+1}, y_{t−1}]

    for name, W in (("W_{-1,0}", W_m10), ("W_{1,0}", W_10), ("W_{1,-1}", W_1m1)):
        _, kept = truncated_pinv(W, rank=n_states, rcond=rcond)
        if kept < n_states:
            raise IllConditionedMoments(f"{name} 의 유효 rank({kept})가 상태 수({n_states})보다 작습니다")

    G1 = W_10 @ truncated_pinv(W_m10, rank=n_states, rcond=rcond)[0]
    G2 = W_1m1 @ truncated_pinv(W_0m1, rank=n_states, rcond=rcond)[0]
    M2 = G1 @ W_m10 @ G2.T
    M3 = np.einsum("abc,ia,jb->ijc", F, G1, G2)
    return MomentStats(W_m10=W_m10, W_10=W_10, W_0m1=W_0m1, W_1m1=W_1m1, M2=M2, M3=M3, n_triples=len(triples))


def observation_matrix(model: HmmBanditModel) -> np.ndarray:
    """균등 팔 정책 아래 O(s, m) = P(y_t = s | M_t = m) = μ^r(1−μ)^{1−r} / I, 모양 S×M"""
    O = np.empty((model.S, model.M))
    O[0::2, :] = (1.0 - model.mu.T) / model.I
    O[1::2, :] = model.mu.T / model.I
    return O


def view_matrices(model: HmmBanditModel) -> ViewMatrices:
    """정상 상태, 균등 팔 정책에서의 세 뷰 행렬 A₁, A₂, A₃ 와 ω"""
    omega = stationary_distribution(model.P)
    O = observation_matrix(model)
    # 역방향 전이 P(M_{t−1}=m' | M_t=m) = ω(m')P(m',m)/ω(m)
    backward = (omega[:, None] * model.P) / omega[None, :]
    return ViewMatrices(A1=O @ backward, A2=O, A3=O @ model.P.T, omega=omega)


def population_moments(model: HmmBanditModel) -> MomentStats:
    """
    균등 팔 정책의 모집단 적률. 추정기 검증용 정답값이다.
    """
    views = view_matrices(model)
    A1, A2, A3, omega = views.A1, views.A2, views.A3, views.omega
    Omega = np.diag(omega)
    return MomentStats(
        W_m10=A1 @ Omega @ A2.T,
        W_10=A3 @ Omega @ A2.T,
        W_0m1=A2 @ Omega @ A1.T,
        W_1m1=A3 @ Omega @ A1.T,
        M2=A3 @ Omega @ A3.T,
        M3=np.einsum("m,im,jm,km->ijk", omega, A3, A3, A3),
        n_triples=None,
    )
