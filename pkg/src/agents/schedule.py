"""
SEEU 에피소드 일정.

에피소드 k 는 길이 τ1 의 탐색 구간과 길이 round(τ2·√k) 의 활용 구간으로 이뤄진다.
시점은 0부터 시작하는 반열린 구간 [start, stop) 으로 다루고, 마지막 에피소드는 T 에서 잘린다.
"""
import math

from dataclasses import dataclass

from src.errors import ConfigError

PHASE_EXPLORE = "explore"
PHASE_EXPLOIT = "exploit"


@dataclass(frozen=True)
class Episode:
    k: int
    explore: range
    exploit: range

    @property
    def start(self) -> int:
        return self.explore.start

    @property
    def stop(self) -> int:
        return self.exploit.stop

    def __len__(self) -> int:
        return len(self.explore) + len(self.exploit)


def exploitation_length(tau2: int, k: int) -> int:
    """τ2·√k 를 가장 가까운 정수로 (0.5 는 올림)"""
    return int(math.floor(tau2 * math.sqrt(k) + 0.5))


@dataclass(frozen=True)
class EpisodeSchedule:
    tau1: int
    tau2: int
    horizon: int
    episodes: tuple[Episode, ...]

    @property
    def K(self) -> int:
        return len(self.episodes)

    def episode_bounds(self) -> tuple[float, float]:
        """((T/(τ1+τ2))^{2/3}, 3(T/τ2)^{2/3}). T ≥ τ1+τ2 일 때 K 가 이 사이에 있다."""
        T = self.horizon
        return (T / (self.tau1 + self.tau2)) ** (2.0 / 3.0), 3.0 * (T / self.tau2) ** (2.0 / 3.0)

    def satisfies_bound(self) -> bool:
        if self.horizon < self.tau1 + self.tau2:
            return True
        low, high = self.episode_bounds()
        return low <= self.K <= high

    def phases(self) -> tuple[list[int], list[str]]:
        """시점별 (에피소드 번호, 단계 이름)"""
        episode_of, phase_of = [], []
        for episode in self.episodes:
            episode_of.extend([episode.k] * len(episode))
            phase_of.extend([PHASE_EXPLORE] * len(episode.explore) + [PHASE_EXPLOIT] * len(episode.exploit))
        return episode_of, phase_of


def episode_schedule(tau1: int, tau2: int, horizon: int) -> EpisodeSchedule:
    """
    Args:
        tau1 (int): 탐색 길이 (≥ 3, 스펙트럴 삼중쌍에 연속 관측 3개가 필요하다)
        tau2 (int): 활용 길이 배율 (≥ 1)
        horizon (int): T ≥ 1

    Raises:
        ConfigError: 정수가 아니거나 범위를 벗어난 인자
    """
    for name, value, lowest in (("τ1", tau1, 3), ("τ2", tau2, 1), ("T", horizon, 1)):
        if isinstance(value, bool) or int(value) != value or value < lowest:
            raise ConfigError(f"{name}는 {lowest} 이상의 정수여야 합니다: {value}")
    tau1, tau2, horizon = int(tau1), int(tau2), int(horizon)

    episodes = []
    start, k = 0, 1
    while start < horizon:
        explore_stop = min(start + tau1, horizon)
        exploit_stop = min(explore_stop + exploitation_length(tau2, k), horizon)
        episodes.append(Episode(k=k, explore=range(start, explore_stop), exploit=range(explore_stop, exploit_stop)))
        start, k = exploit_stop, k + 1
    return EpisodeSchedule(tau1=tau1, tau2=tau2, horizon=horizon, episodes=tuple(episodes))
