import logging
import numpy as np

from dataclasses import dataclass
from scipy import stats

from src.errors import NonPositiveRegret

logger = logging.getLogger(__name__)

MIN_POINTS = 3


@dataclass(frozen=True)
class SlopeFit:
    slope: float
    intercept: float
    stderr: float
    intercept_stderr: float
    n_points: int
    dropped: tuple[float, ...] = ()


def loglog_slope(points) -> SlopeFit:
    """
    log(평균 regret) 를 log(T) 에 최소제곱 회귀한다.

    양수가 아닌 regret 점은 경고를 남기고 뺀다.

    Args:
        points: (T, 평균 regret) 쌍들

    Raises:
        ValueError: 점이 3개 미만일 때
        NonPositiveRegret: 양수가 아닌 점을 빼고 나니 3개 미만일 때
    """
    points = np.asarray(list(points), dtype=float).reshape(-1, 2)
    if len(points) < MIN_POINTS:
        raise ValueError(f"기울기 추정에는 점이 {MIN_POINTS}개 이상 필요합니다: {len(points)}")
    if np.any(points[:, 0] <= 0.0):
        raise ValueError("T 는 양수여야 합니다")

    positive = points[:, 1] > 0.0
    dropped = tuple(float(T) for T in points[~positive, 0])
    if dropped:
        logger.warning("⚠️ regret 이 양수가 아닌 점을 제외합니다: T=%s", list(dropped))
    kept = points[positive]
    if len(kept) < MIN_POINTS:
        raise NonPositiveRegret(f"양수 regret 점이 {len(kept)}개뿐이라 기울기를 구할 수 없습니다 (제외 T={list(dropped)})")

    fit = stats.linregress(np.log(kept[:, 0]), np.log(kept[:, 1]))
    return SlopeFit(
        slope=float(fit.slope),
        intercept=float(fit.intercept),
        stderr=float(fit.stderr),
        intercept_stderr=float(fit.intercept_stderr),
        n_points=len(kept),
        dropped=dropped,
    )
