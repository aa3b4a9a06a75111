# 적률 통계
from .moments import (
    ExplorationSegments,
    MomentStats,
    ViewMatrices,
    collect_triples,
    estimate_moments,
    observation_matrix,
    population_moments,
    view_matrices,
)

# 텐서 분해와 복원
from .tensor import PowerMethodConfig, TensorDecomposition, tensor_decompose
from .recovery import (
    SpectralConfig,
    SpectralEstimate,
    align_permutation,
    apply_permutation,
    estimate_from_moments,
    estimate_parameters,
    recover_parameters,
)

# 신뢰 영역
from .confidence import ConfidenceRegion, confidence_radius, confidence_region, delta_schedule

# 선형대수 도구
from .linalg import project_rows_to_simplex, project_to_simplex, truncated_pinv

__all__ = [
    # 적률 통계
    "ExplorationSegments",
    "MomentStats",
    "ViewMatrices",
    "collect_triples",
    "estimate_moments",
    "observation_matrix",
    "population_moments",
    "view_matrices",

    # 텐서 분해와 복원
    "PowerMethodConfig",
    "TensorDecomposition",
    "tensor_decompose",
    "SpectralConfig",
    "SpectralEstimate",
    "align_permutation",
    "apply_permutation",
    "estimate_from_moments",
    "estimate_parameters",
    "recover_parameters",

    # 신뢰 영역
    "ConfidenceRegion",
    "confidence_radius",
    "confidence_region",
    "delta_schedule",

    # 선형대수 도구
    "project_rows_to_simplex",
    "project_to_simplex",
    "truncated_pinv",
]
