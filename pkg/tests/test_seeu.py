import numpy as np
import pytest

from src.agents import (
    PHASE_EXPLOIT,
    PHASE_EXPLORE,
    RunLog,
    SeeuAgent,
    SeeuConfig,
    final_regret,
    regret,
    regret_upper_bound,
    run_seeu,
)
from src.belief import belief_error_constants, replay_beliefs
from src.errors import InsufficientData, InvariantViolation
from src.model import RegimeEnvironment, RunStreams
from src.planner import OptimisticConfig, PlannerConfig, bias_span_bound, solve_average_reward
from src.spectral import ConfidenceRegion, collect_triples

FAST = SeeuConfig(
    tau1=20,
    tau2=10,
    planner=PlannerConfig(resolution=30),
    optimistic=OptimisticConfig(n_candidates=4),
)


def _true_region(model):
    return lambda k, segments: ConfidenceRegion.point(model.mu, model.P)


def test_injected_true_model_follows_planner(paper_model):
    log = run_seeu(paper_model, FAST, 300, seed=3, region_override=_true_region(paper_model))
    assert len(log) == 300
    assert all(record.status in ("ok", "skipped") for record in log.episodes)

    solution = solve_average_reward(paper_model, FAST.planner.grid_for(2))
    true_beliefs = replay_beliefs(paper_model, [0.5, 0.5], log.arms, log.rewards).beliefs
    exploit = np.flatnonzero(log.phase_mask(PHASE_EXPLOIT))
    assert len(exploit) > 0
    for t in exploit:
        np.testing.assert_allclose(log.beliefs[t], true_beliefs[t], atol=1e-9)
        assert log.arms[t] == solution.act(true_beliefs[t])


def test_exploration_beliefs_follow_previous_model(paper_model):
    log = run_seeu(paper_model, FAST, 300, seed=4, region_override=_true_region(paper_model))
    first_episode = (log.episode == 1) & log.phase_mask(PHASE_EXPLORE)
    assert np.all(np.isnan(log.beliefs[first_episode]))
    true_beliefs = replay_beliefs(paper_model, [0.5, 0.5], log.arms, log.rewards).beliefs
    later = np.flatnonzero(~first_episode)
    np.testing.assert_allclose(log.beliefs[later], true_beliefs[later], atol=1e-9)


def test_exploration_arms_are_uniform(paper_model):
    log = run_seeu(paper_model, FAST, 10_000, seed=12, region_override=_true_region(paper_model))
    explored = log.arms[log.phase_mask(PHASE_EXPLORE)]
    n = len(explored)
    assert n > 1000
    stderr = np.sqrt(0.25 / n)
    for arm in range(paper_model.I):
        assert abs(np.mean(explored == arm) - 0.5) <= 3 * stderr


def test_run_is_deterministic(paper_model):
    config = SeeuConfig(tau1=50, tau2=10, planner=PlannerConfig(resolution=20), optimistic=OptimisticConfig(n_candidates=4))
    first = run_seeu(paper_model, config, 400, seed=11)
    second = run_seeu(paper_model, config, 400, seed=11)
    np.testing.assert_array_equal(first.arms, second.arms)
    np.testing.assert_array_equal(first.rewards, second.rewards)
    np.testing.assert_array_equal(first.beliefs, second.beliefs)
    assert [r.status for r in first.episodes] == [r.status for r in second.episodes]


def test_only_exploration_samples_reach_the_estimator(paper_model):
    env = RegimeEnvironment(paper_model, RunStreams.from_seed(5))
    agent = SeeuAgent(2, 2, FAST, np.random.default_rng(0), region_override=_true_region(paper_model))
    log = agent.run(env, 250)

    explore = log.phase_mask(PHASE_EXPLORE)
    assert agent.segments.n_samples == int(explore.sum())
    np.testing.assert_array_equal(np.concatenate(agent.segments.arms), log.arms[explore])
    np.testing.assert_array_equal(np.concatenate(agent.segments.rewards), log.rewards[explore])

    # 삼중쌍은 구간마다 (길이 − 2) 개
    expected = sum(max(len(arms) - 2, 0) for arms in agent.segments.arms)
    assert len(collect_triples(agent.segments)) == expected


def test_estimation_failure_falls_back_to_uniform(paper_model):
    def failing(k, segments):
        raise InsufficientData("삼중쌍 부족")

    log = run_seeu(paper_model, FAST, 200, seed=6, region_override=failing)
    assert len(log) == 200
    statuses = {record.status for record in log.episodes}
    assert statuses <= {"fallback", "skipped"}
    assert "fallback" in statuses
    assert np.all(np.isnan(log.beliefs))
    fallback = [r for r in log.episodes if r.status == "fallback"]
    assert fallback[0].message.startswith("InsufficientData")
    assert fallback[0].delta_k == pytest.approx(0.05)


def test_episode_records_cover_schedule(paper_model):
    log = run_seeu(paper_model, FAST, 300, seed=8, region_override=_true_region(paper_model))
    assert [r.k for r in log.episodes] == list(range(1, len(log.episodes) + 1))
    assert log.episodes[0].explore_start == 0
    assert log.episodes[-1].stop == 300
    for before, after in zip(log.episodes, log.episodes[1:]):
        assert before.stop == after.explore_start
    ok = [r for r in log.episodes if r.status == "ok"]
    assert ok[1].delta_k == pytest.approx(0.00625)


def test_runlog_rejects_mismatched_columns():
    with pytest.raises(InvariantViolation):
        RunLog(
            algorithm="x",
            episode=np.zeros(3, dtype=int),
            phase=np.array(["play"] * 3),
            arms=np.zeros(3, dtype=int),
            rewards=np.zeros(2, dtype=int),
        )


def test_regret_examples():
    rewards = np.ones(4, dtype=int)
    np.testing.assert_allclose(regret(rewards, 0.75), [-0.25, -0.5, -0.75, -1.0])
    assert final_regret(rewards, 0.75) == pytest.approx(-1.0)
    assert final_regret(np.zeros(10, dtype=int), 0.5) == pytest.approx(5.0)


def test_regret_upper_bound(paper_model):
    eps = paper_model.epsilon
    constants = belief_error_constants(paper_model)
    kwargs = dict(
        rho_star=0.73,
        D=bias_span_bound(eps),
        L1=constants.L1,
        L2=constants.L2,
        n_states=2,
        n_arms=2,
        tau1=100,
        tau2=50,
    )
    small = regret_upper_bound(1000, **kwargs)
    large = regret_upper_bound(100_000, **kwargs)
    assert small.constant > 0.0
    assert large.high_probability > small.high_probability
    assert large.expected > 0.0

    warm = regret_upper_bound(1000, T0=200, **kwargs)
    assert warm.high_probability - small.high_probability == pytest.approx(200 * 0.73)

    with pytest.raises(ValueError):
        regret_upper_bound(1, **kwargs)
    with pytest.raises(ValueError):
        regret_upper_bound(1000, delta=1.0, **kwargs)


@pytest.mark.slow
def test_seeu_beats_uniform_play(paper_model):
    config = SeeuConfig(planner=PlannerConfig(resolution=50), optimistic=OptimisticConfig(n_candidates=16))
    log = run_seeu(paper_model, config, 20_000, seed=21)
    # 균등 팔의 장기 평균 보상은 (9·0.5 + 8·0.55)/17 ≈ 0.5235
    assert log.total_reward / len(log) > 0.56
    assert any(record.status == "ok" for record in log.episodes)


def test_initial_belief_must_be_on_simplex():
    with pytest.raises(ValueError):
        SeeuAgent(2, 2, SeeuConfig(initial_belief=(0.7, 0.7)), np.random.default_rng(0))
