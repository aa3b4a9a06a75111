"""
실험 설정 파일 (JSON) 스키마.

{
  "model": "models/paper_2x2.model",
  "algorithms": [{"kind": "seeu", "params": {"tau1": 100, "tau2": 2000}}, {"kind": "epsilon_greedy"}],
  "horizons": [2000, 5000, 10000],
  "runs": 20,
  "master_seed": 2024
}
"""
import orjson

from dataclasses import dataclass
from pathlib import Path
from typing import Any

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from src import settings
from src.agents import BASELINE_KINDS, BaselineConfig, SeeuConfig
from src.agents.baselines import SWEEP, WINDOW_RULES
from src.errors import ConfigError
from src.planner import OptimisticConfig, PlannerConfig

SEEU_KIND = "seeu"
SEEU_PARAMS = {"tau1", "tau2", "delta", "C1", "C2", "grid", "candidates", "initial_belief"}


class AlgorithmSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    kind: str
    label: str | None = None
    params: dict[str, Any] = Field(default_factory=dict)

    @field_validator("kind")
    @classmethod
    def known_kind(cls, kind: str) -> str:
        if kind != SEEU_KIND and kind not in BASELINE_KINDS:
            raise ValueError(f"알 수 없는 알고리즘: {kind}")
        return kind

    @property
    def name(self) -> str:
        return self.label or self.kind


class ExperimentConfig(BaseModel):
    """
    Attributes:
        model: 정답 모델 파일
        algorithms: 알고리즘 목록
        horizons: T 격자 (엄격히 증가)
        runs: T 마다의 실행 수
        master_seed: 실행 시드 유도용
        output_dir: 출력 디렉터리. None 이면 SEEU_OUTPUT_DIR
        workers: 동시 실행 수. None 이면 SEEU_WORKERS
        tau_grid: SEEU 항목을 (τ1, τ2) 쌍마다 하나씩으로 펼친다
        rho_resolution: ρ* 계산용 격자 해상도
        check_acceptance: 기울기와 순서 조건까지 검사할지
    """

    model_config = ConfigDict(extra="forbid")

    model: str
    algorithms: list[AlgorithmSpec] = Field(min_length=1)
    horizons: list[int] = Field(min_length=1)
    runs: int = Field(default=20, ge=1)
    master_seed: int = 0
    output_dir: str | None = None
    workers: int | None = Field(default=None, ge=1)
    tau_grid: list[tuple[int, int]] | None = None
    rho_resolution: int = Field(default=200, ge=2)
    check_acceptance: bool = False
    seeu_slope_range: tuple[float, float] = (0.55, 0.85)
    baseline_min_slope: float = 0.90

    @field_validator("horizons")
    @classmethod
    def strictly_increasing(cls, horizons: list[int]) -> list[int]:
        if any(T < 1 for T in horizons):
            raise ValueError("T 는 1 이상이어야 합니다")
        if any(b <= a for a, b in zip(horizons, horizons[1:])):
            raise ValueError("T 격자는 엄격히 증가해야 합니다")
        return horizons

    @model_validator(mode="after")
    def unique_labels(self) -> "ExperimentConfig":
        names = [spec.name for spec in self.algorithms]
        if len(set(names)) != len(names):
            raise ValueError(f"알고리즘 이름이 중복됩니다: {names}")
        return self

    def resolved_output_dir(self) -> Path:
        return Path(self.output_dir or settings.output_dir())

    def resolved_workers(self) -> int:
        return self.workers or settings.workers()


@dataclass(frozen=True)
class AlgorithmEntry:
    """
    펼친 알고리즘 한 개.

    Attributes:
        label: 결과 표의 algo 값 (실행 시드에도 들어간다)
        group: SW-UCB 창 탐색이면 "sw_ucb", 아니면 label
        kind: seeu 또는 기준 알고리즘 종류
        params: 원래 파라미터
    """

    label: str
    group: str
    kind: str
    params: tuple[tuple[str, Any], ...]

    def param_dict(self) -> dict[str, Any]:
        return dict(self.params)


def _frozen_params(params: dict[str, Any]) -> tuple[tuple[str, Any], ...]:
    return tuple(sorted((key, tuple(value) if isinstance(value, list) else value) for key, value in params.items()))


def expand_algorithms(config: ExperimentConfig) -> list[AlgorithmEntry]:
    """tau_grid 와 SW-UCB 창 탐색을 펼친다. 순서는 설정 파일 순서를 따른다."""
    entries = []
    for spec in config.algorithms:
        params = dict(spec.params)
        if spec.kind == SEEU_KIND and config.tau_grid:
            for tau1, tau2 in config.tau_grid:
                label = f"{spec.name}[tau1={tau1},tau2={tau2}]"
                entries.append(AlgorithmEntry(label, label, spec.kind, _frozen_params({**params, "tau1": tau1, "tau2": tau2})))
        elif spec.kind == "sw_ucb" and params.get("window") == SWEEP:
            for rule in WINDOW_RULES:
                label = f"{spec.name}[w={rule}]"
                entries.append(AlgorithmEntry(label, spec.name, spec.kind, _frozen_params({**params, "window": rule})))
        else:
            entries.append(AlgorithmEntry(spec.name, spec.name, spec.kind, _frozen_params(params)))
    return entries


def seeu_config(params: dict[str, Any], point_budget: int | None = None) -> SeeuConfig:
    unknown = set(params) - SEEU_PARAMS
    if unknown:
        raise ConfigError(f"SEEU 에 알 수 없는 파라미터: {sorted(unknown)}")
    planner = PlannerConfig(
        resolution=params.get("grid"),
        point_budget=point_budget or settings.grid_point_budget(),
    )
    optimistic = OptimisticConfig(n_candidates=int(params.get("candidates", OptimisticConfig.n_candidates)))
    initial = params.get("initial_belief")
    return SeeuConfig(
        tau1=int(params.get("tau1", SeeuConfig.tau1)),
        tau2=int(params.get("tau2", SeeuConfig.tau2)),
        delta=float(params.get("delta", SeeuConfig.delta)),
        C1=float(params.get("C1", SeeuConfig.C1)),
        C2=float(params.get("C2", SeeuConfig.C2)),
        initial_belief=None if initial is None else tuple(float(x) for x in initial),
        planner=planner,
        optimistic=optimistic,
    )


def baseline_config(kind: str, params: dict[str, Any]) -> BaselineConfig:
    try:
        return BaselineConfig(kind=kind, **params)
    except TypeError as e:
        raise ConfigError(f"{kind} 파라미터 오류: {e}") from None


def load_experiment_config(path) -> ExperimentConfig:
    """
    Raises:
        ConfigError: 파일이 없거나, JSON 이 아니거나, 스키마 검증에 실패했을 때 (필드 이름 포함)
    """
    path = Path(path)
    try:
        document = orjson.loads(path.read_bytes())
    except FileNotFoundError:
        raise ConfigError(f"설정 파일이 없습니다: {path}") from None
    except orjson.JSONDecodeError as e:
        raise ConfigError(f"설정 파일 JSON 오류 ({path}): {e}") from None
    try:
        return ExperimentConfig.model_validate(document)
    except ValidationError as e:
        fields = "; ".join(f"{'.'.join(str(p) for p in err['loc'])}: {err['msg']}" for err in e.errors())
        raise ConfigError(f"설정 파일 검증 실패 ({path}): {fields}") from None
