import numpy as np
import pytest

from src.model import HmmBanditModel, random_valid_model, validate_model

PAPER_P = [[1.0 / 3.0, 2.0 / 3.0], [3.0 / 4.0, 1.0 / 4.0]]
PAPER_MU = [[0.9, 0.1], [0.5, 0.6]]

# ω = (9/17, 8/17)
BEST_FIXED_VALUE = 12.1 / 17.0
FULL_INFORMATION_VALUE = 12.9 / 17.0

# 가정 1~3 을 만족하는 (M, I) 조합 (행 full rank 때문에 M ≤ I)
VALID_SHAPES = [(2, 2), (2, 3), (3, 3)]


@pytest.fixture
def paper_model() -> HmmBanditModel:
    return validate_model(PAPER_P, PAPER_MU)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(12345)


@pytest.fixture
def random_models() -> list[HmmBanditModel]:
    """M∈{2,3}, I∈{2,3} 에 걸친 무작위 유효 모델 20개"""
    generator = np.random.default_rng(2024)
    return [random_valid_model(*VALID_SHAPES[k % len(VALID_SHAPES)], generator) for k in range(20)]


@pytest.fixture
def model_file(tmp_path):
    from src.store import save_model

    return save_model(validate_model(PAPER_P, PAPER_MU), tmp_path / "paper.model")
