import numpy as np


def encode_observation(arm: int, reward: int, n_arms: int) -> int:
    """
    (팔, 보상) 쌍을 관측 번호 s ∈ 1..2I 로 바꾼다. s = 2·(arm−1) + reward + 1.

    Args:
        arm (int): 1부터 시작하는 팔 번호 (1..I)
        reward (int): 0 또는 1
        n_arms (int): 팔 개수 I

    Returns:
        int: 1부터 시작하는 관측 번호
    """
    if not 1 <= arm <= n_arms:
        raise ValueError(f"팔 번호가 범위(1..{n_arms})를 벗어났습니다: {arm}")
    if reward not in (0, 1):
        raise ValueError(f"보상은 0 또는 1이어야 합니다: {reward}")
    return 2 * (arm - 1) + reward + 1


def decode_observation(s: int, n_arms: int) -> tuple[int, int]:
    """encode_observation의 역함수. (arm, reward)를 돌려준다."""
    if not 1 <= s <= 2 * n_arms:
        raise ValueError(f"관측 번호가 범위(1..{2 * n_arms})를 벗어났습니다: {s}")
    return (s - 1) // 2 + 1, (s - 1) % 2


def observation_codes(arms, rewards) -> np.ndarray:
    """
    라이브러리 내부용 벡터 버전. 0부터 시작하는 팔 배열을 받아 0부터 시작하는 관측 번호
    (encode_observation 값 − 1)를 돌려준다.
    """
    arms = np.asarray(arms, dtype=np.int64)
    rewards = np.asarray(rewards, dtype=np.int64)
    return 2 * arms + rewards
