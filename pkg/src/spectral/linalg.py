import numpy as np

PINV_RCOND = 1e-10


def truncated_pinv(X: np.ndarray, rank: int | None = None, rcond: float = PINV_RCOND) -> tuple[np.ndarray, int]:
    """
    SVD 기반 의사역행렬. max(shape)·σ_max·rcond 미만의 특이값을 버리고, rank가 주어지면
    상위 rank개까지만 남긴다.

    Returns:
        tuple[np.ndarray, int]: (의사역행렬, 남긴 특이값 개수)
    """
    U, s, Vt = np.linalg.svd(X, full_matrices=False)
    if s.size == 0 or s[0] == 0.0:
        return np.zeros(X.T.shape), 0
    keep = int(np.sum(s > max(X.shape) * s[0] * rcond))
    if rank is not None:
        keep = min(keep, rank)
    inv_s = 1.0 / s[:keep]
    return (Vt[:keep].T * inv_s) @ U[:, :keep].T, keep


def project_to_simplex(x: np.ndarray, floor: float = 0.0) -> np.ndarray:
    """
    {y ≥ floor, Σy = 1} 위로의 유클리드 사영 (정렬 기반).
    """
    x = np.asarray(x, dtype=float)
    n = x.shape[0]
    mass = 1.0 - n * floor
    if mass < 0.0:
        raise ValueError(f"floor({floor})가 너무 커서 합 1을 만들 수 없습니다 (n={n})")
    y = x - floor
    if mass == 0.0:
        return np.full(n, floor)
    u = np.sort(y)[::-1]
    cssv = np.cumsum(u) - mass
    index = np.arange(1, n + 1)
    rho = np.nonzero(u - cssv / index > 0)[0][-1]
    theta = cssv[rho] / (rho + 1)
    return np.maximum(y - theta, 0.0) + floor


def project_rows_to_simplex(X: np.ndarray, floor: float = 0.0) -> np.ndarray:
    return np.vstack([project_to_simplex(row, floor) for row in np.atleast_2d(X)])
