# belief 격자
from .grid import DEFAULT_POINT_BUDGET, SimplexGrid, build_simplex_grid, default_resolution, grid_size

# 평균 보상 가치 반복
from .value_iteration import (
    PlannerConfig,
    PlannerSolution,
    bias_span,
    bias_span_bound,
    plan,
    solve_average_reward,
)

# 낙관적 모델 탐색
from .optimistic import (
    OptimisticChoice,
    OptimisticConfig,
    PlannerCache,
    candidate_models,
    optimistic_model_search,
)

__all__ = [
    # belief 격자
    "DEFAULT_POINT_BUDGET",
    "SimplexGrid",
    "build_simplex_grid",
    "default_resolution",
    "grid_size",

    # 평균 보상 가치 반복
    "PlannerConfig",
    "PlannerSolution",
    "bias_span",
    "bias_span_bound",
    "plan",
    "solve_average_reward",

    # 낙관적 모델 탐색
    "OptimisticChoice",
    "OptimisticConfig",
    "PlannerCache",
    "candidate_models",
    "optimistic_model_search",
]
