import numpy as np

from dataclasses import dataclass

from src.errors import (
    MeanOutOfRange,
    NoUniqueStationary,
    RankDeficientRewards,
    RowsNotStochastic,
    SingularTransition,
    ZeroTransitionEntry,
)

STOCHASTIC_TOL = 1e-12
DETERMINANT_TOL = 1e-10
SINGULAR_VALUE_TOL = 1e-10
BELIEF_TOL = 1e-10
STATIONARY_RESIDUAL_TOL = 1e-10


def _frozen(array) -> np.ndarray:
    out = np.array(array, dtype=float, copy=True)
    out.setflags(write=False)
    return out


@dataclass(frozen=True, eq=False)
class HmmBanditModel:
    """
    은닉 마르코프 체인이 보상을 조절하는 밴딧 모델.

    Attributes:
        P (np.ndarray): M×M 전이 행렬 (행 확률)
        mu (np.ndarray): M×I 베르누이 평균 보상 행렬
        initial_belief (np.ndarray | None): 환경 초기 상태 분포. None이면 정상 분포를 사용한다.

    생성자는 모양과 행 확률성만 확인한다. 가정 1~3 검증은 validate_model()이 담당한다
    (낙관적 탐색의 후보 모델은 가정 1, 2를 만족하지 않을 수 있다).
    """

    P: np.ndarray
    mu: np.ndarray
    initial_belief: np.ndarray | None = None

    def __post_init__(self):
        P = _frozen(self.P)
        mu = _frozen(self.mu)
        if P.ndim != 2 or P.shape[0] != P.shape[1]:
            raise ValueError(f"P는 정방 행렬이어야 합니다: shape={P.shape}")
        if mu.ndim != 2 or mu.shape[0] != P.shape[0]:
            raise ValueError(f"mu의 행 수({mu.shape})가 P의 상태 수({P.shape[0]})와 다릅니다")
        object.__setattr__(self, "P", P)
        object.__setattr__(self, "mu", mu)
        if self.initial_belief is not None:
            object.__setattr__(self, "initial_belief", _frozen(check_belief(self.initial_belief, P.shape[0])))

    @property
    def M(self) -> int:
        return self.P.shape[0]

    @property
    def I(self) -> int:
        return self.mu.shape[1]

    @property
    def S(self) -> int:
        """관측 알파벳 크기 (팔, 보상) 쌍의 개수"""
        return 2 * self.I

    @property
    def epsilon(self) -> float:
        return float(self.P.min())


@dataclass(frozen=True)
class ModelDiagnostics:
    epsilon: float
    abs_determinant: float
    min_singular_value: float


def check_belief(b, n_states: int | None = None, tol: float = BELIEF_TOL) -> np.ndarray:
    """
    길이 M 확률 벡터인지 확인하고 float 배열로 돌려준다.

    Raises:
        ValueError: 음수 성분이 있거나 합이 1에서 tol 이상 벗어난 경우
    """
    b = np.asarray(b, dtype=float)
    if b.ndim != 1 or (n_states is not None and b.shape[0] != n_states):
        raise ValueError(f"belief 모양이 올바르지 않습니다: shape={b.shape}, M={n_states}")
    if np.any(b < -tol) or abs(b.sum() - 1.0) > tol:
        raise ValueError(f"belief가 단체(simplex) 위에 있지 않습니다: {b}")
    return b


def diagnose(model: HmmBanditModel) -> ModelDiagnostics:
    singular_values = np.linalg.svd(model.mu, compute_uv=False)
    # M > I 이면 μ는 행 full rank가 될 수 없다
    sigma_min = float(singular_values[model.M - 1]) if model.M <= model.I else 0.0
    return ModelDiagnostics(
        epsilon=model.epsilon,
        abs_determinant=float(abs(np.linalg.det(model.P))),
        min_singular_value=sigma_min,
    )


def validate_model(P, mu, initial_belief=None) -> HmmBanditModel:
    """
    가정 1~3에 대해 모델을 검증한다.

    행 합이 허용오차(1e-12) 안에 있으면 재정규화하고, 벗어나면 거부한다.

    Args:
        P: M×M 전이 행렬
        mu: M×I 평균 보상 행렬
        initial_belief: 선택적 초기 상태 분포

    Returns:
        HmmBanditModel: 검증된 모델. 진단값은 diagnose(model)로 얻는다.

    Raises:
        RowsNotStochastic, MeanOutOfRange, ZeroTransitionEntry, SingularTransition, RankDeficientRewards
    """
    P = np.asarray(P, dtype=float)
    mu = np.asarray(mu, dtype=float)
    if P.ndim != 2 or P.shape[0] != P.shape[1]:
        raise ValueError(f"P는 정방 행렬이어야 합니다: shape={P.shape}")
    if mu.ndim != 2 or mu.shape[0] != P.shape[0]:
        raise ValueError(f"mu의 행 수가 P와 다릅니다: mu={mu.shape}, P={P.shape}")

    if np.any(P < 0):
        raise RowsNotStochastic(f"P에 음수 성분이 있습니다: min={P.min()}")
    row_sums = P.sum(axis=1)
    if np.any(np.abs(row_sums - 1.0) > STOCHASTIC_TOL):
        raise RowsNotStochastic(f"P의 행 합이 1이 아닙니다: {row_sums}")
    P = P / row_sums[:, None]

    if np.any(mu <= 0.0) or np.any(mu >= 1.0):
        raise MeanOutOfRange(f"μ 성분은 (0, 1) 안에 있어야 합니다: min={mu.min()}, max={mu.max()}")

    model = HmmBanditModel(P=P, mu=mu, initial_belief=initial_belief)
    diagnostics = diagnose(model)

    if diagnostics.epsilon <= 0.0:
        raise ZeroTransitionEntry("P의 최소 성분 ε가 0입니다")
    if diagnostics.abs_determinant < DETERMINANT_TOL:
        raise SingularTransition(f"|det P| = {diagnostics.abs_determinant:.3e} < {DETERMINANT_TOL}")
    if diagnostics.min_singular_value < SINGULAR_VALUE_TOL:
        raise RankDeficientRewards(f"μ의 최소 특이값 {diagnostics.min_singular_value:.3e} < {SINGULAR_VALUE_TOL}")
    return model


def stationary_distribution(P) -> np.ndarray:
    """
    ωP = ω, Σω = 1 인 정상 분포를 선형계로 구한다.

    Raises:
        NoUniqueStationary: 선형계가 특이하거나 잔차가 1e-10을 넘는 경우
    """
    P = np.asarray(P, dtype=float)
    M = P.shape[0]
    system = P.T - np.eye(M)
    system[-1, :] = 1.0
    rhs = np.zeros(M)
    rhs[-1] = 1.0
    try:
        omega = np.linalg.solve(system, rhs)
    except np.linalg.LinAlgError as e:
        raise NoUniqueStationary(f"정상 분포 선형계가 특이합니다: {e}") from e

    residual = float(np.abs(omega @ P - omega).sum())
    if not np.all(np.isfinite(omega)) or residual > STATIONARY_RESIDUAL_TOL:
        raise NoUniqueStationary(f"정상 분포 잔차가 너무 큽니다: {residual:.3e}")
    return np.clip(omega, 0.0, None) / np.clip(omega, 0.0, None).sum()


def initial_distribution(model: HmmBanditModel) -> np.ndarray:
    """환경 초기 분포. 모델 파일에 initial_belief가 없으면 정상 분포"""
    if model.initial_belief is not None:
        return np.asarray(model.initial_belief)
    return stationary_distribution(model.P)


def best_fixed_arm(model: HmmBanditModel) -> tuple[int, float]:
    """정상 분포 아래 평균 보상이 가장 큰 고정 팔 i* 와 그 값 Σ_m ω(m)μ(m,i*)"""
    values = stationary_distribution(model.P) @ model.mu
    arm = int(np.argmax(values))
    return arm, float(values[arm])


def full_information_value(model: HmmBanditModel) -> float:
    """상태를 관측하는 오라클의 장기 평균 보상 E_ω[max_i μ(m,i)]"""
    return float(stationary_distribution(model.P) @ model.mu.max(axis=1))


def random_valid_model(
    n_states: int,
    n_arms: int,
    rng: np.random.Generator,
    min_transition: float = 0.05,
    min_singular_value: float = 0.1,
    min_determinant: float = 0.05,
    max_tries: int = 1000,
) -> HmmBanditModel:
    """
    가정 1~3을 여유 있게 만족하는 임의 모델을 뽑는다.

    μ의 행 full rank 조건 때문에 n_states <= n_arms 여야 한다.
    """
    if n_states > n_arms:
        raise ValueError(f"M({n_states}) > I({n_arms}) 이면 μ가 행 full rank일 수 없습니다")
    for _ in range(max_tries):
        P = min_transition + (1.0 - n_states * min_transition) * rng.dirichlet(np.ones(n_states), size=n_states)
        mu = rng.uniform(0.05, 0.95, size=(n_states, n_arms))
        model = HmmBanditModel(P=P, mu=mu)
        diagnostics = diagnose(model)
        if diagnostics.min_singular_value >= min_singular_value and diagnostics.abs_determinant >= min_determinant:
            return validate_model(P, mu)
    raise RuntimeError(f"{max_tries}번 시도 안에 유효한 모델을 찾지 못했습니다")


def lower_bound_instance(
    n_arms: int,
    best_arm: int,
    gap: float = 0.05,
    perturbation: float = 1e-3,
    n_states: int = 2,
    stay_probability: float = 0.7,
) -> HmmBanditModel:
    """
    하한 논증에 쓰이는 인스턴스: best_arm 은 모든 상태에서 ½+gap, 나머지 팔은 ½.

    이 구조에서는 상태 추론 없이 한 팔만 당기면 되므로 고전적 MAB로 환원된다.
    행 full rank를 되살리기 위해 상태 m, 팔 m 성분에 m·perturbation 을 더한다.
    """
    if n_states > n_arms:
        raise ValueError("n_states <= n_arms 여야 합니다")
    mu = np.full((n_states, n_arms), 0.5)
    mu[:, best_arm] += gap
    for m in range(n_states):
        mu[m, m] += (m + 1) * perturbation
    off = (1.0 - stay_probability) / max(n_states - 1, 1)
    P = np.full((n_states, n_states), off)
    np.fill_diagonal(P, stay_probability if n_states > 1 else 1.0)
    return validate_model(P, mu)
