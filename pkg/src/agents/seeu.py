"""
SEEU: 탐색 구간은 팔을 균등하게 뽑아 스펙트럴 추정에 쓰고, 활용 구간은 신뢰 영역 안의
낙관적 모델로 계획한 belief 정책을 따른다.

에피소드 k 마다
    1. τ1 시점 동안 균등 탐색
    2. 지금까지의 탐색 구간 전부로 (μ̂_k, P̂_k) 재추정
    3. δ_k = δ/k³ 수준의 신뢰 영역
    4. 낙관적 모델 (μ_k, P_k) 과 정책 탐색
    5. b₁ 부터 전체 이력을 (μ_k, P_k) 로 재생해 belief 재보정
    6. round(τ2√k) 시점 동안 정책 실행, belief 는 온라인으로 갱신
"""
import logging
import numpy as np

from dataclasses import dataclass
from typing import Callable

from src.belief import belief_update, replay_beliefs
from src.errors import EstimationError, PlannerError
from src.model import HmmBanditModel, RegimeEnvironment, RunStreams, check_belief
from src.planner import OptimisticConfig, PlannerCache, PlannerConfig, optimistic_model_search
from src.spectral import (
    ConfidenceRegion,
    ExplorationSegments,
    SpectralConfig,
    confidence_region,
    delta_schedule,
    estimate_parameters,
)
from .base import EpisodeRecord, RunLog
from .schedule import Episode, episode_schedule

logger = logging.getLogger(__name__)

RegionOverride = Callable[[int, ExplorationSegments], ConfidenceRegion]


@dataclass(frozen=True)
class SeeuConfig:
    """
    Attributes:
        tau1: 탐색 길이 (기준 2×2 인스턴스에서 첫 에피소드부터 추정이 되도록 100)
        tau2: 활용 길이 배율. 탐색 한 시점이 기준 인스턴스에서 약 0.19 의 regret 을 내므로
            탐색 비중이 작도록 2000 으로 둔다 (T=5·10⁴ 에서 에피소드 11개, 탐색 1100 시점)
        delta: 전체 신뢰 수준
        C1, C2: μ, P 신뢰 반경 상수 (손으로 조정하는 값)
        initial_belief: b₁, None 이면 균등
        planner: 격자 해상도 d 와 가치 반복 설정
        spectral: 추정 설정
        optimistic: 후보 수 G 와 실행 가능 집합
    """

    tau1: int = 100
    tau2: int = 2000
    delta: float = 0.05
    C1: float = 1.0
    C2: float = 1.0
    initial_belief: tuple[float, ...] | None = None
    planner: PlannerConfig = PlannerConfig()
    spectral: SpectralConfig = SpectralConfig()
    optimistic: OptimisticConfig = OptimisticConfig()


class SeeuAgent:
    """
    상태를 보지 못하는 SEEU 학습기. 아는 것은 상태 수 M 과 팔 수 I 뿐이다.

    region_override 가 주어지면 추정 대신 그 함수가 돌려준 신뢰 영역을 쓴다
    (정답 모델 주입 테스트용).
    """

    def __init__(
        self,
        n_states: int,
        n_arms: int,
        config: SeeuConfig,
        rng: np.random.Generator,
        region_override: RegionOverride | None = None,
    ):
        self.n_states = n_states
        self.n_arms = n_arms
        self.config = config
        self.rng = rng
        self.region_override = region_override
        self.grid = config.planner.grid_for(n_states)
        self.cache = PlannerCache()
        self.segments = ExplorationSegments(n_arms=n_arms)
        if config.initial_belief is None:
            self.b1 = np.full(n_states, 1.0 / n_states)
        else:
            self.b1 = check_belief(config.initial_belief, n_states)

    def _region(self, k: int, delta_k: float) -> ConfidenceRegion:
        if self.region_override is not None:
            return self.region_override(k, self.segments)
        estimate = estimate_parameters(self.segments, self.n_states, self.rng, self.config.spectral)
        return confidence_region(estimate, estimate.n_triples, delta_k, self.config.C1, self.config.C2)

    def run(self, env: RegimeEnvironment, horizon: int) -> RunLog:
        config = self.config
        schedule = episode_schedule(config.tau1, config.tau2, horizon)
        episode_of, phase_of = schedule.phases()

        arms = np.empty(horizon, dtype=np.int64)
        rewards = np.empty(horizon, dtype=np.int64)
        beliefs = np.full((horizon, self.n_states), np.nan)
        records = []
        model: HmmBanditModel | None = None
        b = None

        for episode in schedule.episodes:
            # 탐색: 균등 팔, 이전 에피소드 모델로 belief 만 따라간다
            explore = episode.explore
            arms[explore.start:explore.stop] = self.rng.integers(0, self.n_arms, size=len(explore))
            rewards[explore.start:explore.stop] = env.rewards_for(arms[explore.start:explore.stop])
            for t in explore:
                if model is not None:
                    beliefs[t] = b
                    b = belief_update(model, b, int(arms[t]), int(rewards[t]))
            self.segments.append(arms[explore.start:explore.stop], rewards[explore.start:explore.stop])

            if len(episode.exploit) == 0:
                records.append(self._record(episode, "skipped"))
                continue

            record, model, solution = self._plan_episode(episode)
            records.append(record)

            exploit = episode.exploit
            if solution is None:
                # 추정 실패: 이번 활용 구간은 균등 탐색을 이어간다 (탐색 구간 데이터에는 넣지 않는다)
                arms[exploit.start:exploit.stop] = self.rng.integers(0, self.n_arms, size=len(exploit))
                rewards[exploit.start:exploit.stop] = env.rewards_for(arms[exploit.start:exploit.stop])
                model, b = None, None
                continue

            b = replay_beliefs(model, self.b1, arms[:exploit.start], rewards[:exploit.start]).last
            for t in exploit:
                beliefs[t] = b
                arm = solution.act(b)
                reward = env.pull(arm)
                arms[t], rewards[t] = arm, reward
                b = belief_update(model, b, arm, reward)

        return RunLog(
            algorithm="seeu",
            episode=np.asarray(episode_of, dtype=np.int64),
            phase=np.asarray(phase_of),
            arms=arms,
            rewards=rewards,
            beliefs=beliefs,
            episodes=records,
        )

    def _record(self, episode: Episode, status: str, **fields) -> EpisodeRecord:
        return EpisodeRecord(
            k=episode.k,
            explore_start=episode.explore.start,
            exploit_start=episode.exploit.start,
            stop=episode.stop,
            status=status,
            **fields,
        )

    def _plan_episode(self, episode: Episode):
        k = episode.k
        delta_k = delta_schedule(self.config.delta, k)
        try:
            region = self._region(k, delta_k)
            choice = optimistic_model_search(
                region, self.grid, self.rng, self.config.planner, self.config.optimistic, self.cache
            )
        except (EstimationError, PlannerError) as e:
            logger.warning("⚠️ 에피소드 %d 추정/계획 실패, 균등 탐색으로 대체합니다: %s", k, e)
            return self._record(episode, "fallback", delta_k=delta_k, message=f"{type(e).__name__}: {e}"), None, None

        logger.debug("🔄 에피소드 %d: ρ^k=%.6f, 후보 %d/%d", k, choice.rho, choice.candidate_index, choice.n_candidates)
        record = self._record(
            episode,
            "ok",
            n_triples=region.n,
            delta_k=delta_k,
            mu_hat=region.mu_hat,
            P_hat=region.P_hat,
            radius_mu=region.radius_mu,
            radius_P=region.radius_P,
            mu_opt=choice.model.mu,
            P_opt=choice.model.P,
            rho=choice.rho,
            planner_residual=choice.solution.residual_span,
            candidate_index=choice.candidate_index,
        )
        return record, choice.model, choice.solution


def run_seeu(
    model: HmmBanditModel,
    config: SeeuConfig,
    horizon: int,
    seed,
    region_override: RegionOverride | None = None,
) -> RunLog:
    """
    정답 모델 환경에서 SEEU 를 한 번 실행한다. 에이전트는 모델의 (M, I) 만 안다.

    Args:
        model (HmmBanditModel): 환경의 정답 모델
        config (SeeuConfig): τ1, τ2, δ, C1, C2, b₁, 격자 d, 후보 G
        horizon (int): T
        seed: 실행 시드. 같은 시드면 RunLog 가 비트 단위로 같다
        region_override: 추정 대신 쓸 신뢰 영역 (테스트 훅)
    """
    streams = RunStreams.from_seed(seed)
    env = RegimeEnvironment(model, streams)
    agent = SeeuAgent(model.M, model.I, config, np.random.default_rng(streams.agent), region_override)
    return agent.run(env, horizon)
