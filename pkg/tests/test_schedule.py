import numpy as np
import pytest

from src.agents import episode_schedule, exploitation_length
from src.agents.schedule import PHASE_EXPLOIT, PHASE_EXPLORE
from src.errors import ConfigError


def test_worked_example():
    schedule = episode_schedule(100, 50, 1000)
    assert [exploitation_length(50, k) for k in range(1, 7)] == [50, 71, 87, 100, 112, 122]
    assert [len(e) for e in schedule.episodes[:5]] == [150, 171, 187, 200, 212]
    assert schedule.K == 6

    last = schedule.episodes[-1]
    assert last.explore == range(920, 1000)
    assert len(last.exploit) == 0

    low, high = schedule.episode_bounds()
    assert low == pytest.approx(3.54, abs=0.01)
    assert high == pytest.approx(22.1, abs=0.05)
    assert schedule.satisfies_bound()


def test_horizon_inside_first_exploration():
    schedule = episode_schedule(100, 50, 60)
    assert schedule.K == 1
    assert schedule.episodes[0].explore == range(0, 60)
    assert len(schedule.episodes[0].exploit) == 0
    assert schedule.satisfies_bound()


def test_exploitation_length_rounds_to_nearest():
    assert exploitation_length(3, 1) == 3
    assert exploitation_length(1, 2) == 1      # 1.414
    assert exploitation_length(5, 2) == 7      # 7.07
    assert exploitation_length(10, 3) == 17    # 17.32


def test_phases_cover_horizon():
    schedule = episode_schedule(10, 5, 97)
    episode_of, phase_of = schedule.phases()
    assert len(episode_of) == len(phase_of) == 97
    assert phase_of[:10] == [PHASE_EXPLORE] * 10
    assert phase_of[10:15] == [PHASE_EXPLOIT] * 5
    assert episode_of[0] == 1 and episode_of[-1] == schedule.K


def test_partition_and_bound_over_random_parameters():
    rng = np.random.default_rng(17)
    for _ in range(200):
        tau1 = int(rng.integers(3, 200))
        tau2 = int(rng.integers(1, 200))
        horizon = int(rng.integers(1, 20000))
        schedule = episode_schedule(tau1, tau2, horizon)

        position = 0
        for k, episode in enumerate(schedule.episodes, start=1):
            assert episode.k == k
            assert episode.explore.start == position
            assert episode.exploit.start == episode.explore.stop
            position = episode.exploit.stop
        assert position == horizon
        # 마지막 에피소드를 뺀 모든 에피소드는 잘리지 않는다
        for episode in schedule.episodes[:-1]:
            assert len(episode.explore) == tau1
            assert len(episode.exploit) == exploitation_length(tau2, episode.k)
        assert schedule.satisfies_bound()


@pytest.mark.parametrize(
    "tau1, tau2, horizon",
    [(2, 50, 1000), (100, 0, 1000), (100, 50, 0), (100.5, 50, 1000), (True, 50, 1000)],
)
def test_invalid_parameters(tau1, tau2, horizon):
    with pytest.raises(ConfigError):
        episode_schedule(tau1, tau2, horizon)
