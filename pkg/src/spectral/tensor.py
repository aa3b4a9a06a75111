"""
화이트닝 + 강건 텐서 거듭제곱법(robust tensor power method)에 의한 대칭 텐서 분해.
"""
import itertools
import logging
import numpy as np

from dataclasses import dataclass

from src.errors import NonConvergence, WhiteningFailure

logger = logging.getLogger(__name__)

EIGENVALUE_FLOOR = 1e-10


@dataclass(frozen=True)
class PowerMethodConfig:
    restarts: int = 30
    iterations: int = 100
    tol: float = 1e-10
    agreement_tol: float = 1e-6


@dataclass(frozen=True, eq=False)
class TensorDecomposition:
    """
    Attributes:
        columns: S×M, 화이트닝을 되돌린 성분 B̂_m
        weights: 길이 M 가중치 (정상 분포 추정치)
        eigenvalues: 화이트닝 공간의 텐서 고유값
        residual: ‖M̂3 − Σ_m w_m B̂_m^{⊗3}‖_F
        whitening_condition: 상위 M 고유값의 조건수
    """

    columns: np.ndarray
    weights: np.ndarray
    eigenvalues: np.ndarray
    residual: float
    whitening_condition: float


def _symmetrize(T: np.ndarray) -> np.ndarray:
    return sum(np.transpose(T, perm) for perm in itertools.permutations(range(3))) / 6.0


def _power_iterations(T: np.ndarray, theta: np.ndarray, iterations: int, tol: float) -> tuple[np.ndarray, float]:
    """θ ← T(I, θ, θ)/‖T(I, θ, θ)‖ 반복. (θ, 마지막 갱신 크기)를 돌려준다."""
    change = np.inf
    for _ in range(iterations):
        image = np.einsum("ijk,j,k->i", T, theta, theta)
        norm = np.linalg.norm(image)
        if norm == 0.0:
            break
        updated = image / norm
        change = float(np.linalg.norm(updated - theta))
        theta = updated
        if change < tol:
            break
    return theta, change


def _max_eigenpair(T: np.ndarray, rng: np.random.Generator, config: PowerMethodConfig) -> tuple[float, np.ndarray]:
    best_value, best_theta = -np.inf, None
    for _ in range(config.restarts):
        theta = rng.standard_normal(T.shape[0])
        theta /= np.linalg.norm(theta)
        theta, _ = _power_iterations(T, theta, config.iterations, config.tol)
        value = float(np.einsum("ijk,i,j,k->", T, theta, theta, theta))
        if value > best_value:
            best_value, best_theta = value, theta

    theta, change = _power_iterations(T, best_theta, config.iterations, config.tol)
    if change > config.agreement_tol:
        raise NonConvergence(f"{config.restarts}번 재시작 후에도 거듭제곱법이 수렴하지 않았습니다 (마지막 변화 {change:.3e})")
    value = float(np.einsum("ijk,i,j,k->", T, theta, theta, theta))
    if value < 0.0:
        value, theta = -value, -theta
    return value, theta


def tensor_decompose(
    M2: np.ndarray,
    M3: np.ndarray,
    n_components: int,
    rng: np.random.Generator,
    config: PowerMethodConfig = PowerMethodConfig(),
) -> TensorDecomposition:
    """
    M2 = Σ w_m b_m b_mᵀ, M3 = Σ w_m b_m^{⊗3} 꼴의 분해에서 b_m, w_m 을 구한다.

    Args:
        M2 (np.ndarray): S×S 2차 적률 (대칭화해서 쓴다)
        M3 (np.ndarray): S×S×S 3차 적률
        n_components (int): 성분 수 M
        rng (np.random.Generator): 재시작 초기값용 난수 (실행 스트림에서 온다)
        config (PowerMethodConfig): 재시작 R, 반복 N, 허용오차

    Raises:
        WhiteningFailure: 1e-10 보다 큰 고유값이 M개 미만일 때
        NonConvergence: 거듭제곱법이 허용오차 안에 수렴하지 않을 때
    """
    symmetric = (M2 + M2.T) / 2.0
    eigenvalues, eigenvectors = np.linalg.eigh(symmetric)
    order = np.argsort(eigenvalues)[::-1][:n_components]
    top_values, top_vectors = eigenvalues[order], eigenvectors[:, order]
    if len(top_values) < n_components or np.any(top_values <= EIGENVALUE_FLOOR):
        raise WhiteningFailure(f"양의 고유값이 {n_components}개 미만입니다: {top_values}")

    whitening = top_vectors / np.sqrt(top_values)         # S×M, Wᵀ M2 W = I
    unwhitening = top_vectors * np.sqrt(top_values)       # (Wᵀ)†
    T = _symmetrize(np.einsum("abc,ai,bj,ck->ijk", M3, whitening, whitening, whitening))

    values, thetas = [], []
    for _ in range(n_components):
        value, theta = _max_eigenpair(T, rng, config)
        values.append(value)
        thetas.append(theta)
        T = T - value * np.einsum("i,j,k->ijk", theta, theta, theta)

    values = np.array(values)
    thetas = np.column_stack(thetas)
    columns = unwhitening @ (thetas * values)
    weights = 1.0 / values ** 2

    reconstruction = np.einsum("m,im,jm,km->ijk", weights, columns, columns, columns)
    residual = float(np.linalg.norm(M3 - reconstruction))
    condition = float(top_values[0] / top_values[-1])
    logger.debug("텐서 분해 완료: 고유값=%s, 잔차=%.3e, 조건수=%.3e", values, residual, condition)
    return TensorDecomposition(
        columns=columns,
        weights=weights,
        eigenvalues=values,
        residual=residual,
        whitening_condition=condition,
    )
