"""
이산화한 belief 단체 위에서 평균 보상 벨만 방정식

    ρ + h(b) = max_i [ c̄(b,i) + Σ_r Pr(r|b,i) · h(H(b,i,r)) ]

을 상대 가치 반복(relative value iteration)으로 푼다. 이산화 오차는 보고만 하고 보정하지 않는다.
"""
import logging
import math
import numpy as np

from dataclasses import dataclass
from scipy import sparse

from src.belief import belief_update, belief_update_batch
from src.errors import NotConverged, ZeroTransitionEntry
from src.model import HmmBanditModel
from .grid import DEFAULT_POINT_BUDGET, SimplexGrid, build_simplex_grid, default_resolution

logger = logging.getLogger(__name__)

RECENT_BRACKETS = 10


@dataclass(frozen=True)
class PlannerConfig:
    tol: float = 1e-6
    max_iter: int = 100_000
    resolution: int | None = None
    point_budget: int = DEFAULT_POINT_BUDGET

    def grid_for(self, n_states: int) -> SimplexGrid:
        resolution = self.resolution or default_resolution(n_states)
        return build_simplex_grid(n_states, resolution, self.point_budget)


@dataclass(frozen=True, eq=False)
class PlannerSolution:
    """
    Attributes:
        model: 계획에 쓴 모델
        grid: belief 격자
        rho: 평균 보상 추정 (마지막 증분의 최대/최소 중점)
        h: 격자점별 편향(bias) 값, 기준점에서 0
        policy: 격자점별 탐욕 팔 (0부터 시작)
        residual_span: 마지막 증분의 span
        iterations: 수행한 반복 수
        converged: residual_span ≤ tol 달성 여부
        recent_brackets: 마지막 반복들의 (최소 증분, 최대 증분)
    """

    model: HmmBanditModel
    grid: SimplexGrid
    rho: float
    h: np.ndarray
    policy: np.ndarray
    residual_span: float
    iterations: int
    converged: bool
    recent_brackets: np.ndarray

    def q_values(self, b) -> np.ndarray:
        """임의 belief 에서 팔별 한 스텝 앞보기 값 c̄(b,i) + Σ_r Pr(r|b,i) h̃(H(b,i,r))"""
        b = np.asarray(b, dtype=float)
        values = np.empty(self.model.I)
        for arm in range(self.model.I):
            success = float(b @ self.model.mu[:, arm])
            value = success
            for reward, probability in ((0, 1.0 - success), (1, success)):
                if probability <= 0.0:
                    continue
                indices, weights = self.grid.interpolation(belief_update(self.model, b, arm, reward))
                value += probability * float(weights[0] @ self.h[indices[0]])
            values[arm] = value
        return values

    def act(self, b) -> int:
        """탐욕 팔. 동점이면 번호가 작은 팔"""
        return int(np.argmax(self.q_values(b)))


def _transition_operators(model: HmmBanditModel, grid: SimplexGrid) -> tuple[np.ndarray, list[sparse.csr_matrix]]:
    n = len(grid)
    rewards = grid.points @ model.mu                    # n×I, c̄(b, i)
    operators = []
    for arm in range(model.I):
        operator = sparse.csr_matrix((n, n))
        for reward in (0, 1):
            successors, probability = belief_update_batch(model, grid.points, arm, reward)
            indices, weights = grid.interpolation(successors)
            rows = np.repeat(np.arange(n), indices.shape[1])
            data = (probability[:, None] * weights).ravel()
            operator = operator + sparse.csr_matrix((data, (rows, indices.ravel())), shape=(n, n))
        operators.append(operator.tocsr())
    return rewards, operators


def solve_average_reward(
    model: HmmBanditModel,
    grid: SimplexGrid,
    tol: float = 1e-6,
    max_iter: int = 100_000,
    reward_shift: float = 0.0,
) -> PlannerSolution:
    """
    상대 가치 반복으로 ρ, h, 탐욕 정책을 구한다.

    Args:
        model (HmmBanditModel): 계획할 모델 (ε > 0 이어야 한다)
        grid (SimplexGrid): belief 격자
        tol (float): 증분 span 정지 기준
        max_iter (int): 최대 반복 수
        reward_shift (float): 모든 팔 보상에 더할 상수 (불변성 검사용)

    Raises:
        ZeroTransitionEntry: ε(model) = 0
        NotConverged: max_iter 안에 수렴하지 못함. 예외의 solution 에 마지막 반복값이 담긴다.
    """
    if model.epsilon <= 0.0:
        raise ZeroTransitionEntry("ε = 0 인 모델은 평균 보상 문제가 잘 정의되지 않습니다")
    if grid.M != model.M:
        raise ValueError(f"격자 차원({grid.M})과 상태 수({model.M})가 다릅니다")

    rewards, operators = _transition_operators(model, grid)
    rewards = rewards + reward_shift
    reference = grid.reference_index()

    h = np.zeros(len(grid))
    brackets = []
    span = math.inf
    iteration = 0
    q = rewards
    for iteration in range(1, max_iter + 1):
        q = np.column_stack([rewards[:, arm] + operators[arm] @ h for arm in range(model.I)])
        updated = q.max(axis=1)
        increment = updated - h
        low, high = float(increment.min()), float(increment.max())
        brackets.append((low, high))
        if len(brackets) > RECENT_BRACKETS:
            brackets.pop(0)
        span = high - low
        h = updated - updated[reference]
        if span <= tol:
            break

    low, high = brackets[-1]
    solution = PlannerSolution(
        model=model,
        grid=grid,
        rho=(low + high) / 2.0,
        h=h,
        policy=np.argmax(q, axis=1),
        residual_span=span,
        iterations=iteration,
        converged=span <= tol,
        recent_brackets=np.array(brackets),
    )
    if not solution.converged:
        raise NotConverged(f"{max_iter}번 반복 후 증분 span {span:.3e} > {tol}", solution=solution)
    logger.debug("상대 가치 반복 수렴: ρ=%.6f, 반복=%d", solution.rho, iteration)
    return solution


def plan(model: HmmBanditModel, config: PlannerConfig = PlannerConfig()) -> PlannerSolution:
    return solve_average_reward(model, config.grid_for(model.M), config.tol, config.max_iter)


def bias_span(solution: PlannerSolution) -> float:
    """span(h) = max h − min h"""
    return float(solution.h.max() - solution.h.min())


def bias_span_bound(epsilon: float) -> float:
    """
    D(ε) = 8(2/(1−α)² + (1+α)·log_α((1−α)/8)) / (1−α),  α = (1−2ε)/(1−ε)

    ε = 1/2 이면 α = 0 이고 log_α 항은 극한값 0 을 쓴다.

    Raises:
        ValueError: ε 가 (0, 1/2] 밖일 때
    """
    if not 0.0 < epsilon <= 0.5:
        raise ValueError(f"ε는 (0, 1/2] 안에 있어야 합니다: {epsilon}")
    alpha = (1.0 - 2.0 * epsilon) / (1.0 - epsilon)
    log_term = 0.0 if alpha <= 0.0 else math.log((1.0 - alpha) / 8.0) / math.log(alpha)
    return 8.0 * (2.0 / (1.0 - alpha) ** 2 + (1.0 + alpha) * log_term) / (1.0 - alpha)
