import math
import numpy as np
import pytest

from src.belief import (
    belief_error_constants,
    belief_update,
    expected_reward,
    forgetting_constants,
    mu_error_norm,
    replay_beliefs,
    transition_error_norm,
)
from src.errors import DegenerateLikelihood, ZeroTransitionEntry
from src.model import HmmBanditModel, stationary_distribution
from src.spectral import project_rows_to_simplex


def _random_history(model, length, rng):
    arms = rng.integers(0, model.I, size=length)
    rewards = rng.integers(0, 2, size=length)
    return arms, rewards


def test_belief_update_by_hand(paper_model):
    b = np.array([0.5, 0.5])
    # arm 0, reward 1: 필터 (0.9, 0.5)/1.4 후 P 로 예측
    filtered = np.array([0.9, 0.5]) / 1.4
    expected = filtered @ paper_model.P
    np.testing.assert_allclose(belief_update(paper_model, b, 0, 1), expected, atol=1e-12)


def test_belief_update_stays_above_epsilon(paper_model, rng):
    b = np.array([0.5, 0.5])
    for _ in range(200):
        b = belief_update(paper_model, b, int(rng.integers(2)), int(rng.integers(2)))
        assert b.sum() == pytest.approx(1.0, abs=1e-12)
        assert b.min() >= paper_model.epsilon - 1e-12


def test_belief_update_degenerate_likelihood():
    model = HmmBanditModel(P=[[0.5, 0.5], [0.5, 0.5]], mu=[[1.0, 0.5], [1.0, 0.5]])
    with pytest.raises(DegenerateLikelihood):
        belief_update(model, [0.5, 0.5], 0, 0)


def test_stationary_belief_is_fixed_without_information(paper_model):
    # 관측이 상태와 무관하면 예측만 남고, 정상 분포는 그 고정점이다
    flat = HmmBanditModel(P=paper_model.P, mu=[[0.5, 0.5], [0.5, 0.5]])
    omega = stationary_distribution(paper_model.P)
    np.testing.assert_allclose(belief_update(flat, omega, 1, 0), omega, atol=1e-12)


def test_replay_matches_repeated_updates(paper_model, rng):
    arms, rewards = _random_history(paper_model, 40, rng)
    history = replay_beliefs(paper_model, [0.5, 0.5], arms, rewards)
    b = np.array([0.5, 0.5])
    for t in range(40):
        b = belief_update(paper_model, b, int(arms[t]), int(rewards[t]))
        np.testing.assert_allclose(history.beliefs[t + 1], b, atol=1e-12)
    assert len(history) == 40
    assert history.beliefs.shape == (41, 2)
    np.testing.assert_allclose(history.last, b)


def test_replay_rejects_bad_initial_belief(paper_model):
    with pytest.raises(ValueError):
        replay_beliefs(paper_model, [0.7, 0.7], [0], [1])
    with pytest.raises(ValueError):
        replay_beliefs(paper_model, [0.5, 0.5], [0, 1], [1])


def test_expected_reward(paper_model):
    assert expected_reward(paper_model, [1.0, 0.0], 0) == pytest.approx(0.9)
    assert expected_reward(paper_model, [9 / 17, 8 / 17], 0) == pytest.approx(12.1 / 17)


def test_expected_reward_is_affine_in_belief(paper_model, rng):
    for _ in range(50):
        b, b_other = rng.dirichlet(np.ones(2), size=2)
        weight = rng.uniform()
        mixed = weight * b + (1.0 - weight) * b_other
        for arm in range(paper_model.I):
            expected = weight * expected_reward(paper_model, b, arm) + (1.0 - weight) * expected_reward(paper_model, b_other, arm)
            assert expected_reward(paper_model, mixed, arm) == pytest.approx(expected, abs=1e-12)


def test_belief_error_constants_paper_model(paper_model):
    constants = belief_error_constants(paper_model)
    assert constants.L1 == pytest.approx(720.0)
    assert constants.L2 == pytest.approx(288.0 + math.sqrt(2.0))
    assert constants.L2 == pytest.approx(289.414, abs=1e-3)


def test_belief_error_constants_single_state():
    # M=1, ε=½: L2 = 4·(½)²/(½)³ + 1 = 9
    model = HmmBanditModel(P=[[1.0]], mu=[[0.2, 0.7]])
    constants = belief_error_constants(model, epsilon=0.5)
    assert constants.L1 == pytest.approx(4.0 / 0.2)
    assert constants.L2 == pytest.approx(9.0)


def test_belief_error_constants_need_positive_epsilon():
    model = HmmBanditModel(P=[[1.0, 0.0], [0.5, 0.5]], mu=[[0.9, 0.1], [0.5, 0.6]])
    with pytest.raises(ZeroTransitionEntry):
        belief_error_constants(model)


def test_forgetting_constants():
    C4, alpha = forgetting_constants(0.25)
    assert C4 == pytest.approx(6.0)
    assert alpha == pytest.approx(2.0 / 3.0)
    assert forgetting_constants(0.5) == pytest.approx((2.0, 0.0))
    with pytest.raises(ValueError):
        forgetting_constants(0.6)


def test_initial_belief_is_forgotten_exponentially(paper_model, rng):
    C4, alpha = forgetting_constants(paper_model.epsilon)
    for _ in range(100):
        arms, rewards = _random_history(paper_model, 50, rng)
        b, b_prime = rng.dirichlet(np.ones(2)), rng.dirichlet(np.ones(2))
        first = replay_beliefs(paper_model, b, arms, rewards).beliefs
        second = replay_beliefs(paper_model, b_prime, arms, rewards).beliefs
        gap0 = np.abs(b - b_prime).sum()
        for t in range(1, 51):
            # beliefs[t−1] 이 b_t 이다
            gap = np.abs(first[t - 1] - second[t - 1]).sum()
            assert gap <= C4 * alpha ** (t - 1) * gap0 + 1e-12


def test_belief_error_is_controlled_by_parameter_error(paper_model, rng):
    constants = belief_error_constants(paper_model)
    for _ in range(100):
        mu_hat = np.clip(paper_model.mu + rng.uniform(-0.05, 0.05, size=(2, 2)), 0.01, 0.99)
        P_hat = project_rows_to_simplex(paper_model.P + rng.uniform(-0.05, 0.05, size=(2, 2)), floor=1e-3)
        estimated = HmmBanditModel(P=P_hat, mu=mu_hat)
        bound = constants.bound(mu_error_norm(mu_hat, paper_model.mu), transition_error_norm(P_hat, paper_model.P))

        arms, rewards = _random_history(paper_model, 50, rng)
        b1 = rng.dirichlet(np.ones(2))
        true_beliefs = replay_beliefs(paper_model, b1, arms, rewards).beliefs
        estimated_beliefs = replay_beliefs(estimated, b1, arms, rewards).beliefs
        errors = np.abs(true_beliefs - estimated_beliefs).sum(axis=1)
        assert np.all(errors <= bound + 1e-12)


def test_error_norms():
    assert mu_error_norm([[0.5, 0.5], [0.5, 0.5]], [[0.4, 0.5], [0.6, 0.2]]) == pytest.approx(0.3)
    assert transition_error_norm([[1.0, 0.0], [0.0, 1.0]], [[0.0, 1.0], [1.0, 0.0]]) == pytest.approx(2.0)
