# 실험 설정
from .config import (
    AlgorithmEntry,
    AlgorithmSpec,
    ExperimentConfig,
    baseline_config,
    expand_algorithms,
    load_experiment_config,
    seeu_config,
)

# 기울기 추정
from .slope import SlopeFit, loglog_slope

# 스윕 실행
from .runner import (
    RegretSummary,
    RhoStar,
    RunResult,
    RunTask,
    build_tasks,
    check_invariants,
    execute_run,
    raise_on_violations,
    run_experiment,
    run_seed,
    solve_rho_star,
)

__all__ = [
    # 실험 설정
    "AlgorithmEntry",
    "AlgorithmSpec",
    "ExperimentConfig",
    "baseline_config",
    "expand_algorithms",
    "load_experiment_config",
    "seeu_config",

    # 기울기 추정
    "SlopeFit",
    "loglog_slope",

    # 스윕 실행
    "RegretSummary",
    "RhoStar",
    "RunResult",
    "RunTask",
    "build_tasks",
    "check_invariants",
    "execute_run",
    "raise_on_violations",
    "run_experiment",
    "run_seed",
    "solve_rho_star",
]
