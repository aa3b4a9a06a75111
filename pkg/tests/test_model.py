import numpy as np
import pytest

from src.errors import (
    MeanOutOfRange,
    ModelValidationError,
    NoUniqueStationary,
    RankDeficientRewards,
    RowsNotStochastic,
    SingularTransition,
    ZeroTransitionEntry,
)
from src.model import (
    HmmBanditModel,
    RegimeEnvironment,
    RunStreams,
    best_fixed_arm,
    decode_observation,
    encode_observation,
    full_information_value,
    lower_bound_instance,
    observation_codes,
    random_valid_model,
    sample_trajectory,
    stationary_distribution,
    validate_model,
)
from .conftest import BEST_FIXED_VALUE, FULL_INFORMATION_VALUE, PAPER_MU, PAPER_P


def test_paper_model_summary(paper_model):
    assert paper_model.M == 2
    assert paper_model.I == 2
    assert paper_model.S == 4
    assert paper_model.epsilon == pytest.approx(0.25)
    np.testing.assert_allclose(stationary_distribution(paper_model.P), [9 / 17, 8 / 17], atol=1e-12)

    arm, value = best_fixed_arm(paper_model)
    assert arm == 0
    assert value == pytest.approx(BEST_FIXED_VALUE, abs=1e-12)
    assert full_information_value(paper_model) == pytest.approx(FULL_INFORMATION_VALUE, abs=1e-12)


@pytest.mark.parametrize(
    "P, mu, error",
    [
        ([[0.5, 0.6], [0.5, 0.5]], PAPER_MU, RowsNotStochastic),
        ([[1.2, -0.2], [0.5, 0.5]], PAPER_MU, RowsNotStochastic),
        ([[0.5, 0.5], [0.5, 0.5]], PAPER_MU, SingularTransition),
        ([[1.0, 0.0], [0.5, 0.5]], PAPER_MU, ZeroTransitionEntry),
        (PAPER_P, [[0.5, 0.5], [0.5, 0.5]], RankDeficientRewards),
        (PAPER_P, [[1.0, 0.1], [0.5, 0.6]], MeanOutOfRange),
        (PAPER_P, [[0.9, 0.0], [0.5, 0.6]], MeanOutOfRange),
    ],
)
def test_validate_model_rejects(P, mu, error):
    with pytest.raises(error) as excinfo:
        validate_model(P, mu)
    assert isinstance(excinfo.value, ModelValidationError)


def test_validate_model_shape_mismatch():
    with pytest.raises(ValueError):
        validate_model(PAPER_P, [[0.9, 0.1]])


def test_stationary_distribution_rejects_reducible_chain():
    with pytest.raises(NoUniqueStationary):
        stationary_distribution(np.eye(2))


def test_encode_decode_examples():
    assert encode_observation(1, 0, 2) == 1
    assert encode_observation(1, 1, 2) == 2
    assert encode_observation(2, 0, 2) == 3
    assert encode_observation(2, 1, 2) == 4
    for s in range(1, 7):
        arm, reward = decode_observation(s, 3)
        assert encode_observation(arm, reward, 3) == s


@pytest.mark.parametrize("arm, reward", [(0, 0), (3, 1), (1, 2)])
def test_encode_observation_out_of_range(arm, reward):
    with pytest.raises(ValueError):
        encode_observation(arm, reward, 2)


def test_decode_observation_out_of_range():
    with pytest.raises(ValueError):
        decode_observation(5, 2)


def test_observation_codes_match_encoder():
    arms = np.array([0, 1, 1, 0])
    rewards = np.array([1, 0, 1, 0])
    expected = [encode_observation(a + 1, r, 2) - 1 for a, r in zip(arms, rewards)]
    assert observation_codes(arms, rewards).tolist() == expected


def test_sample_trajectory_is_deterministic(paper_model):
    arms = np.tile([0, 1], 50)
    first = sample_trajectory(paper_model, arms, 100, seed=7)
    second = sample_trajectory(paper_model, arms, 100, seed=7)
    np.testing.assert_array_equal(first.states, second.states)
    np.testing.assert_array_equal(first.rewards, second.rewards)
    assert len(first) == 100


def test_state_path_does_not_depend_on_arms(paper_model):
    zeros = sample_trajectory(paper_model, np.zeros(200, dtype=int), 200, seed=3)
    ones = sample_trajectory(paper_model, np.ones(200, dtype=int), 200, seed=3)
    np.testing.assert_array_equal(zeros.states, ones.states)


def test_sample_trajectory_rejects_short_arm_sequence(paper_model):
    with pytest.raises(ValueError):
        sample_trajectory(paper_model, [0, 1], 5, seed=0)
    with pytest.raises(ValueError):
        sample_trajectory(paper_model, [0, 1], 0, seed=0)


def test_pull_matches_vectorized_rewards(paper_model):
    arms = np.array([0, 1, 1, 0, 1, 0, 0, 1] * 10)
    one_by_one = RegimeEnvironment(paper_model, RunStreams.from_seed(11))
    batched = RegimeEnvironment(paper_model, RunStreams.from_seed(11))
    pulled = [one_by_one.pull(int(a)) for a in arms]
    assert pulled == batched.rewards_for(arms).tolist()
    assert one_by_one.t == batched.t == len(arms)


def test_empirical_state_frequencies_follow_stationary(paper_model):
    trajectory = sample_trajectory(paper_model, np.zeros(20000, dtype=int), 20000, seed=5)
    frequency = np.bincount(trajectory.states, minlength=2) / 20000
    np.testing.assert_allclose(frequency, [9 / 17, 8 / 17], atol=0.02)


def test_random_valid_model_satisfies_assumptions(random_models):
    for model in random_models:
        # validate_model 을 다시 통과해야 한다
        validate_model(model.P, model.mu)
        assert model.M <= model.I


def test_random_valid_model_requires_enough_arms(rng):
    with pytest.raises(ValueError):
        random_valid_model(3, 2, rng)


def test_lower_bound_instance_has_single_best_arm():
    model = lower_bound_instance(n_arms=4, best_arm=2, gap=0.05)
    assert model.I == 4
    assert best_fixed_arm(model)[0] == 2
    assert np.all(model.mu.argmax(axis=1) == 2)


def test_single_state_rewards_are_iid():
    model = HmmBanditModel(P=[[1.0]], mu=[[0.3, 0.8]])
    horizon = 100_000
    rewards = sample_trajectory(model, np.zeros(horizon, dtype=int), horizon, seed=21).rewards
    stderr = np.sqrt(0.3 * 0.7 / horizon)
    assert abs(rewards.mean() - 0.3) <= 3 * stderr
    # 직전 보상이 1 이어도 다음 보상의 분포는 같다
    after_success = rewards[1:][rewards[:-1] == 1]
    assert abs(after_success.mean() - 0.3) <= 4 * np.sqrt(0.3 * 0.7 / len(after_success))


def test_transition_counts_follow_P(paper_model):
    states = RegimeEnvironment(paper_model, RunStreams.from_seed(8)).states(100_000)
    counts = np.zeros((2, 2))
    np.add.at(counts, (states[:-1], states[1:]), 1)
    np.testing.assert_allclose(counts / counts.sum(axis=1, keepdims=True), PAPER_P, atol=0.01)


@pytest.mark.slow
def test_sticky_chain_run_lengths_are_geometric():
    model = HmmBanditModel(P=[[0.99, 0.01], [0.01, 0.99]], mu=PAPER_MU)
    states = RegimeEnvironment(model, RunStreams.from_seed(30)).states(1_000_000)
    changes = np.flatnonzero(np.diff(states)) + 1
    # 처음과 마지막 구간은 잘려 있으므로 뺀다
    run_lengths = np.diff(changes)
    assert len(run_lengths) > 1000
    assert run_lengths.mean() == pytest.approx(100.0, rel=0.1)
    # 기하분포의 무기억성: 50 시점을 넘긴 구간의 남은 길이도 평균이 약 100
    survivors = run_lengths[run_lengths > 50] - 50
    assert survivors.mean() == pytest.approx(100.0, rel=0.15)
