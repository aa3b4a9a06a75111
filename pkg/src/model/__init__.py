# 모델 타입과 검증
from .hmm_bandit import (
    HmmBanditModel,
    ModelDiagnostics,
    best_fixed_arm,
    check_belief,
    diagnose,
    full_information_value,
    initial_distribution,
    lower_bound_instance,
    random_valid_model,
    stationary_distribution,
    validate_model,
)

# 관측 부호화
from .observation import decode_observation, encode_observation, observation_codes

# 환경 시뮬레이터
from .simulator import (
    ArmPolicy,
    RegimeEnvironment,
    RunStreams,
    Trajectory,
    as_seed_sequence,
    sample_trajectory,
    uniform_arms,
)

__all__ = [
    # 모델 타입과 검증
    "HmmBanditModel",
    "ModelDiagnostics",
    "best_fixed_arm",
    "check_belief",
    "diagnose",
    "full_information_value",
    "initial_distribution",
    "lower_bound_instance",
    "random_valid_model",
    "stationary_distribution",
    "validate_model",

    # 관측 부호화
    "decode_observation",
    "encode_observation",
    "observation_codes",

    # 환경 시뮬레이터
    "ArmPolicy",
    "RegimeEnvironment",
    "RunStreams",
    "Trajectory",
    "as_seed_sequence",
    "sample_trajectory",
    "uniform_arms",
]
