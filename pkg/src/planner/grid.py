import itertools
import math
import numpy as np

from dataclasses import dataclass, field
from scipy.spatial import cKDTree

from src.errors import GridTooLarge

DEFAULT_POINT_BUDGET = 200_000
TIE_TOL = 1e-12


def default_resolution(n_states: int) -> int:
    """M=2 이면 100, M=3 이면 20. 정확도와 실행 시간의 절충값이다."""
    if n_states <= 1:
        return 1
    if n_states == 2:
        return 100
    if n_states == 3:
        return 20
    return 10


@dataclass(frozen=True, eq=False)
class SimplexGrid:
    """
    성분이 모두 1/d 의 배수인 belief 격자. 점들은 사전식 오름차순이다.
    """

    M: int
    d: int
    points: np.ndarray
    _tree: cKDTree | None = field(default=None, repr=False)

    def __len__(self) -> int:
        return len(self.points)

    def nearest(self, beliefs: np.ndarray) -> np.ndarray:
        """ℓ1 최근접 격자점 번호. 동점이면 사전식으로 앞선 (번호가 작은) 점"""
        beliefs = np.atleast_2d(beliefs)
        if self._tree is None:
            distances = np.abs(beliefs[:, None, :] - self.points[None, :, :]).sum(axis=2)
            return np.argmin(distances, axis=1)
        k = min(self.M + 1, len(self.points))
        distances, indices = self._tree.query(beliefs, k=k, p=1)
        distances = distances.reshape(len(beliefs), k)
        indices = indices.reshape(len(beliefs), k)
        tied = distances <= distances[:, :1] + TIE_TOL
        return np.where(tied, indices, np.iinfo(np.int64).max).min(axis=1)

    def interpolation(self, beliefs: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """
        임의 belief 에서 격자 함수 값을 읽기 위한 (번호, 가중치).

        M=2 는 1-단체 위 선형 보간, M≥3 은 ℓ1 최근접 격자점.
        """
        beliefs = np.atleast_2d(beliefs)
        n = len(beliefs)
        if self.M == 1:
            return np.zeros((n, 1), dtype=np.int64), np.ones((n, 1))
        if self.M == 2:
            # 점 j = (j/d, 1 − j/d)
            position = np.clip(beliefs[:, 0], 0.0, 1.0) * self.d
            lower = np.minimum(np.floor(position).astype(np.int64), self.d - 1)
            upper_weight = position - lower
            return np.column_stack([lower, lower + 1]), np.column_stack([1.0 - upper_weight, upper_weight])
        return self.nearest(beliefs)[:, None], np.ones((n, 1))

    def reference_index(self) -> int:
        """균등 belief 에 가장 가까운 격자점 (상대 가치 반복의 기준점)"""
        return int(self.nearest(np.full(self.M, 1.0 / self.M))[0])


def grid_size(n_states: int, resolution: int) -> int:
    return math.comb(resolution + n_states - 1, n_states - 1)


def build_simplex_grid(n_states: int, resolution: int, point_budget: int = DEFAULT_POINT_BUDGET) -> SimplexGrid:
    """
    d 를 M 개의 음이 아닌 정수로 나누는 모든 조합을 1/d 로 나눠 격자를 만든다.

    Raises:
        GridTooLarge: 점 개수 C(d+M−1, M−1) 가 point_budget 을 넘을 때
    """
    if n_states < 1 or resolution < 1:
        raise ValueError(f"M ≥ 1, d ≥ 1 이어야 합니다: M={n_states}, d={resolution}")
    size = grid_size(n_states, resolution)
    if size > point_budget:
        raise GridTooLarge(f"격자 점 {size}개가 한도 {point_budget}개를 넘습니다 (M={n_states}, d={resolution})")

    # 막대(bar) 위치의 사전식 조합 → 첫 성분부터 오름차순인 조합
    compositions = np.empty((size, n_states), dtype=np.int64)
    for row, bars in enumerate(itertools.combinations(range(resolution + n_states - 1), n_states - 1)):
        edges = (-1,) + bars + (resolution + n_states - 1,)
        compositions[row] = np.diff(edges) - 1
    points = compositions / resolution
    tree = cKDTree(points) if n_states >= 3 else None
    return SimplexGrid(M=n_states, d=resolution, points=points, _tree=tree)
