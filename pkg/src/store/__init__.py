# 모델 파일 관리
from .model_file import load_model, save_model

# 결과 표 관리
from .tables import (
    FLOAT_FORMAT,
    belief_history_frame,
    episodes_frame,
    moments_frame,
    policy_frame,
    runlog_frame,
    trajectory_frame,
    write_csv,
)

# 실행 메타데이터 관리
from .meta import package_versions, read_meta, write_meta

__all__ = [
    # 모델 파일 관리
    "load_model",
    "save_model",

    # 결과 표 관리
    "FLOAT_FORMAT",
    "belief_history_frame",
    "episodes_frame",
    "moments_frame",
    "policy_frame",
    "runlog_frame",
    "trajectory_frame",
    "write_csv",

    # 실행 메타데이터 관리
    "package_versions",
    "read_meta",
    "write_meta",
]
