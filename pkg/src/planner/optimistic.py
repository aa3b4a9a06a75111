"""
신뢰 영역 안에서 최적 평균 보상이 가장 큰 (낙관적) 모델을 찾는다.

후보 집합:
    1. 중심 (μ̂, P̂)
    2. μ̂ 의 각 행을 각 좌표 방향으로 ± 반경만큼 민 모델
    3. P̂ 의 모든 행을 꼭짓점 e_j 쪽으로 radius_P 만큼 민 모델 (j = 1..M)
    4. 영역 안에서 시드로 뽑은 G 개의 균등 표본
모든 후보는 실행 가능 집합(μ ∈ [μ_floor, 1−μ_floor], P 행은 최소 성분 p_floor 인 단체)으로 사영한다.
"""
import logging
import numpy as np

from dataclasses import dataclass, field

from src.errors import NotConverged, PlannerError
from src.model import HmmBanditModel
from src.spectral import ConfidenceRegion, project_rows_to_simplex
from .grid import SimplexGrid
from .value_iteration import PlannerConfig, PlannerSolution, solve_average_reward

logger = logging.getLogger(__name__)

CACHE_RESOLUTION = 1e-9


@dataclass(frozen=True)
class OptimisticConfig:
    n_candidates: int = 64
    mu_floor: float = 0.01
    p_floor: float = 1e-3


@dataclass(frozen=True, eq=False)
class OptimisticChoice:
    model: HmmBanditModel
    rho: float
    solution: PlannerSolution
    n_candidates: int
    candidate_index: int
    n_skipped: int = 0


@dataclass
class PlannerCache:
    """사영된 파라미터(1e-9 해상도)를 키로 하는 계획 결과 메모"""

    solutions: dict[bytes, PlannerSolution] = field(default_factory=dict)
    hits: int = 0

    @staticmethod
    def key(model: HmmBanditModel) -> bytes:
        flat = np.concatenate([model.mu.ravel(), model.P.ravel()])
        return np.round(flat / CACHE_RESOLUTION).astype(np.int64).tobytes()

    def solve(self, model: HmmBanditModel, grid: SimplexGrid, config: PlannerConfig) -> PlannerSolution:
        key = self.key(model)
        if key in self.solutions:
            self.hits += 1
            return self.solutions[key]
        solution = solve_average_reward(model, grid, config.tol, config.max_iter)
        self.solutions[key] = solution
        return solution


def _feasible(mu: np.ndarray, P: np.ndarray, config: OptimisticConfig) -> HmmBanditModel:
    return HmmBanditModel(
        P=project_rows_to_simplex(P, floor=config.p_floor),
        mu=np.clip(mu, config.mu_floor, 1.0 - config.mu_floor),
    )


def _random_direction(shape: tuple[int, ...], rng: np.random.Generator) -> np.ndarray:
    direction = rng.standard_normal(shape)
    return direction / np.linalg.norm(direction)


def candidate_models(
    region: ConfidenceRegion,
    rng: np.random.Generator,
    config: OptimisticConfig = OptimisticConfig(),
) -> list[HmmBanditModel]:
    """결정적 후보 + G 개 무작위 후보. 첫 번째는 항상 중심이다."""
    mu_hat, P_hat = region.mu_hat, region.P_hat
    M, I = mu_hat.shape
    candidates = [_feasible(mu_hat, P_hat, config)]
    if np.all(region.radius_mu == 0.0) and region.radius_P == 0.0:
        return candidates

    for m in range(M):
        for i in range(I):
            for sign in (1.0, -1.0):
                mu = mu_hat.copy()
                mu[m, i] += sign * region.radius_mu[m]
                candidates.append(_feasible(mu, P_hat, config))

    for corner in range(M):
        target = np.zeros_like(P_hat)
        target[:, corner] = 1.0
        gap = target - P_hat
        distance = np.linalg.norm(gap, axis=1, keepdims=True)
        step = np.minimum(1.0, region.radius_P / np.where(distance > 0.0, distance, 1.0))
        candidates.append(_feasible(mu_hat, P_hat + step * gap, config))

    for _ in range(config.n_candidates):
        mu = mu_hat.copy()
        for m in range(M):
            # 반경 r 인 ℓ2 공 안의 균등 표본
            scale = region.radius_mu[m] * rng.random() ** (1.0 / I)
            mu[m] += scale * _random_direction((I,), rng)
        # 행 합을 보존하는 방향으로, 스펙트럴 노름이 radius_P·u^{1/M²} 가 되게
        delta = rng.standard_normal((M, M))
        delta -= delta.mean(axis=1, keepdims=True)
        norm = np.linalg.norm(delta, ord=2)
        if norm > 0.0:
            delta *= region.radius_P * rng.random() ** (1.0 / (M * M)) / norm
        candidates.append(_feasible(mu, P_hat + delta, config))
    return candidates


def optimistic_model_search(
    region: ConfidenceRegion,
    grid: SimplexGrid,
    rng: np.random.Generator,
    planner: PlannerConfig = PlannerConfig(),
    config: OptimisticConfig = OptimisticConfig(),
    cache: PlannerCache | None = None,
) -> OptimisticChoice:
    """
    후보들을 모두 계획하고 ρ 가 가장 큰 후보를 고른다 (동점이면 앞선 후보).

    수렴하지 못한 후보는 경고를 남기고 건너뛴다.

    Raises:
        PlannerError: 모든 후보가 실패했을 때
    """
    cache = PlannerCache() if cache is None else cache
    candidates = candidate_models(region, rng, config)

    best: OptimisticChoice | None = None
    skipped = 0
    for index, model in enumerate(candidates):
        try:
            solution = cache.solve(model, grid, planner)
        except NotConverged as e:
            skipped += 1
            logger.warning("⚠️ 후보 %d 계획이 수렴하지 않아 건너뜁니다: %s", index, e)
            continue
        if best is None or solution.rho > best.rho:
            best = OptimisticChoice(
                model=model,
                rho=solution.rho,
                solution=solution,
                n_candidates=len(candidates),
                candidate_index=index,
            )
    if best is None:
        raise PlannerError(f"후보 {len(candidates)}개 모두 계획에 실패했습니다")
    return OptimisticChoice(
        model=best.model,
        rho=best.rho,
        solution=best.solution,
        n_candidates=len(candidates),
        candidate_index=best.candidate_index,
        n_skipped=skipped,
    )
