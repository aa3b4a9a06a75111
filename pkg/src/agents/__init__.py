# 실행 기록
from .base import PHASE_PLAY, EpisodeRecord, RunLog, play, play_log

# SEEU
from .schedule import PHASE_EXPLOIT, PHASE_EXPLORE, Episode, EpisodeSchedule, episode_schedule, exploitation_length
from .seeu import SeeuAgent, SeeuConfig, run_seeu

# 비교 정책
from .baselines import (
    BASELINE_KINDS,
    BaselineConfig,
    BeliefOracle,
    Exp3S,
    EpsilonGreedy,
    FixedArm,
    FullInformationOracle,
    SlidingWindowUcb,
    WINDOW_RULES,
    exp3s_parameters,
    resolve_window,
    run_baseline,
)

# regret
from .regret import RegretBound, final_regret, regret, regret_upper_bound

__all__ = [
    # 실행 기록
    "PHASE_PLAY",
    "EpisodeRecord",
    "RunLog",
    "play",
    "play_log",

    # SEEU
    "PHASE_EXPLOIT",
    "PHASE_EXPLORE",
    "Episode",
    "EpisodeSchedule",
    "episode_schedule",
    "exploitation_length",
    "SeeuAgent",
    "SeeuConfig",
    "run_seeu",

    # 비교 정책
    "BASELINE_KINDS",
    "BaselineConfig",
    "BeliefOracle",
    "Exp3S",
    "EpsilonGreedy",
    "FixedArm",
    "FullInformationOracle",
    "SlidingWindowUcb",
    "WINDOW_RULES",
    "exp3s_parameters",
    "resolve_window",
    "run_baseline",

    # regret
    "RegretBound",
    "final_regret",
    "regret",
    "regret_upper_bound",
]
