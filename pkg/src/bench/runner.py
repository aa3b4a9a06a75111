"""
regret 실험 스윕.

(알고리즘, T, 실행 번호) 마다 실행 하나를 돌려 최종 regret 을 기록한다. 실행 시드는
sha256(master_seed, 알고리즘 이름, T, 실행 번호) 로 유도하므로 T 나 알고리즘을 더해도 기존
실행의 결과는 바뀌지 않는다. 실행은 asyncio 이벤트 루프에서 프로세스 풀로 보내고, 결과는
정렬한 뒤에 쓴다.
"""
import asyncio
import hashlib
import logging
import math
import numpy as np
import pandas as pd

from concurrent.futures import Executor, ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from src.agents import episode_schedule, final_regret, run_baseline, run_seeu
from src.errors import InvariantViolation, NonPositiveRegret
from src.model import HmmBanditModel, best_fixed_arm, full_information_value
from src.planner import PlannerConfig, PlannerSolution, bias_span, default_resolution, plan
from src.store import load_model, write_csv, write_meta
from .config import SEEU_KIND, AlgorithmEntry, ExperimentConfig, baseline_config, expand_algorithms, seeu_config
from .slope import MIN_POINTS, loglog_slope

logger = logging.getLogger(__name__)

MEAN_CHECK_TOL = 1e-9


def run_seed(master_seed: int, label: str, horizon: int, run: int) -> int:
    payload = f"{master_seed}|{label}|{horizon}|{run}".encode("utf-8")
    return int.from_bytes(hashlib.sha256(payload).digest()[:8], "little")


@dataclass(frozen=True)
class RunTask:
    entry: AlgorithmEntry
    horizon: int
    run: int
    seed: int


@dataclass(frozen=True)
class RunResult:
    label: str
    group: str
    horizon: int
    run: int
    seed: int
    final_regret: float = float("nan")
    error: str | None = None


@dataclass(frozen=True, eq=False)
class RhoStar:
    """정답 모델의 ρ* 와 격자 해상도를 절반으로 했을 때와의 차이"""

    value: float
    resolution: int
    discretization: float
    span: float
    solution: PlannerSolution


@dataclass(eq=False)
class RegretSummary:
    raw: pd.DataFrame
    summary: pd.DataFrame
    slopes: pd.DataFrame
    rho_star: RhoStar
    failures: dict[tuple[str, int], int] = field(default_factory=dict)
    chosen_windows: dict[tuple[str, int], str] = field(default_factory=dict)
    violations: list[str] = field(default_factory=list)


def solve_rho_star(model: HmmBanditModel, resolution: int) -> RhoStar:
    """
    M=2 는 d 와 d/2 에서 풀어 이산화 오차를 가늠한다.

    그 밖의 M 은 격자 점 수가 d^(M−1) 로 늘어나므로 M 별 기본 해상도 하나로 풀고,
    요청한 해상도가 쓰이지 않았음을 경고로 남긴다.
    """
    if model.M != 2 and resolution != default_resolution(model.M):
        logger.warning(
            "⚠️ rho_resolution=%d 는 M=2 에만 적용됩니다. M=%d 은 기본 해상도 %d 로 ρ* 를 풉니다",
            resolution, model.M, default_resolution(model.M),
        )
    fine = plan(model, PlannerConfig(resolution=resolution if model.M == 2 else None))
    discretization = float("nan")
    if model.M == 2 and resolution >= 4:
        coarse = plan(model, PlannerConfig(resolution=resolution // 2))
        discretization = abs(fine.rho - coarse.rho)
    return RhoStar(
        value=fine.rho,
        resolution=fine.grid.d,
        discretization=discretization,
        span=bias_span(fine),
        solution=fine,
    )


def execute_run(task: RunTask, model: HmmBanditModel, rho_star: float, solution: PlannerSolution | None = None) -> RunResult:
    """실행 하나. 어떤 예외든 결과에 담아 돌려주고 스윕은 계속된다."""
    entry = task.entry
    try:
        params = entry.param_dict()
        if entry.kind == SEEU_KIND:
            log = run_seeu(model, seeu_config(params), task.horizon, task.seed)
        else:
            config = baseline_config(entry.kind, params)
            log = run_baseline(model, config, task.horizon, task.seed, solution)
        regret = final_regret(log, rho_star)
    except Exception as e:
        logger.exception("❌ 실행 실패: %s T=%d run=%d seed=%d", entry.label, task.horizon, task.run, task.seed)
        return RunResult(entry.label, entry.group, task.horizon, task.run, task.seed, error=f"{type(e).__name__}: {e}")
    return RunResult(entry.label, entry.group, task.horizon, task.run, task.seed, final_regret=regret)


def build_tasks(config: ExperimentConfig, entries: list[AlgorithmEntry]) -> list[RunTask]:
    return [
        RunTask(entry, T, run, run_seed(config.master_seed, entry.label, T, run))
        for entry in entries
        for T in config.horizons
        for run in range(config.runs)
    ]


async def gather_runs(
    tasks: list[RunTask],
    model: HmmBanditModel,
    rho: RhoStar,
    executor: Executor | None,
) -> list[RunResult]:
    def solution_for(task: RunTask) -> PlannerSolution | None:
        return rho.solution if task.entry.kind == "belief_oracle" else None

    if executor is None:
        return [execute_run(task, model, rho.value, solution_for(task)) for task in tasks]
    loop = asyncio.get_running_loop()
    futures = [loop.run_in_executor(executor, execute_run, task, model, rho.value, solution_for(task)) for task in tasks]
    results = []
    for done, future in enumerate(asyncio.as_completed(futures), start=1):
        results.append(await future)
        if done % max(1, len(futures) // 10) == 0:
            logger.info("🔄 실행 진행 %d/%d", done, len(futures))
    return results


def _summarize(raw: pd.DataFrame, order: list[str]) -> pd.DataFrame:
    grouped = raw.groupby(["algo", "T"], sort=False)["final_regret"]
    summary = grouped.agg(mean="mean", std="std", n="count").reset_index()
    summary["stderr"] = np.where(summary["n"] > 1, summary["std"] / np.sqrt(summary["n"]), np.nan)
    summary["algo"] = pd.Categorical(summary["algo"], categories=order, ordered=True)
    summary = summary.sort_values(["algo", "T"]).reset_index(drop=True)
    summary["algo"] = summary["algo"].astype(str)
    return summary[["algo", "T", "mean", "stderr", "n"]]


def _best_windows(summary: pd.DataFrame, entries: list[AlgorithmEntry]) -> tuple[pd.DataFrame, dict[tuple[str, int], str]]:
    """SW-UCB 창 탐색 그룹마다 T 별로 평균 regret 이 가장 작은 창을 골라 그룹 이름 행을 더한다."""
    chosen = {}
    extra = []
    groups = {}
    for entry in entries:
        if entry.group != entry.label:
            groups.setdefault(entry.group, []).append(entry.label)
    for group, labels in groups.items():
        variants = summary[summary["algo"].isin(labels)]
        for T, rows in variants.groupby("T", sort=True):
            best = rows.sort_values(["mean", "algo"]).iloc[0]
            chosen[(group, int(T))] = str(best["algo"])
            extra.append({"algo": group, "T": int(T), "mean": best["mean"], "stderr": best["stderr"], "n": int(best["n"])})
    if extra:
        summary = pd.concat([summary, pd.DataFrame(extra)], ignore_index=True)
    return summary, chosen


def _slopes(summary: pd.DataFrame) -> pd.DataFrame:
    rows = []
    for algo, points in summary.groupby("algo", sort=False):
        if len(points) < MIN_POINTS:
            continue
        try:
            fit = loglog_slope(points[["T", "mean"]].to_numpy())
        except NonPositiveRegret as e:
            logger.warning("⚠️ %s 기울기를 구하지 못했습니다: %s", algo, e)
            continue
        rows.append({"algo": algo, "slope": fit.slope, "stderr": fit.stderr, "intercept": fit.intercept, "n_points": fit.n_points})
    return pd.DataFrame(rows, columns=["algo", "slope", "stderr", "intercept", "n_points"])


def check_invariants(result: RegretSummary, config: ExperimentConfig, entries: list[AlgorithmEntry]) -> list[str]:
    """요약표와 원자료의 일관성, SEEU 일정의 에피소드 수 경계, (선택) 기울기와 순서 조건"""
    violations = []
    raw_means = result.raw.groupby(["algo", "T"])["final_regret"].mean()
    for row in result.summary.itertuples(index=False):
        key = (row.algo, row.T)
        if key in raw_means.index and not math.isclose(raw_means[key], row.mean, rel_tol=0.0, abs_tol=MEAN_CHECK_TOL):
            violations.append(f"요약 평균이 원자료와 다릅니다: {key}")

    for entry in entries:
        if entry.kind != SEEU_KIND:
            continue
        seeu = seeu_config(entry.param_dict())
        for T in config.horizons:
            if not episode_schedule(seeu.tau1, seeu.tau2, T).satisfies_bound():
                violations.append(f"에피소드 수 경계 위반: {entry.label}, T={T}")

    if config.check_acceptance:
        violations.extend(_acceptance_violations(result, config, entries))
    return violations


def _acceptance_violations(result: RegretSummary, config: ExperimentConfig, entries: list[AlgorithmEntry]) -> list[str]:
    violations = []
    slopes = result.slopes.set_index("algo")["slope"]
    seeu_groups = sorted({e.group for e in entries if e.kind == SEEU_KIND})
    learner_groups = sorted({e.group for e in entries if e.kind in ("epsilon_greedy", "sw_ucb", "exp3s", "ucb")})
    low, high = config.seeu_slope_range

    for group in seeu_groups:
        if group not in slopes.index:
            violations.append(f"{group} 기울기가 없습니다")
        elif not low <= slopes[group] <= high:
            violations.append(f"{group} 기울기 {slopes[group]:.3f} 가 [{low}, {high}] 밖입니다")
    for group in learner_groups:
        if group not in slopes.index:
            violations.append(f"{group} 기울기가 없습니다")
        elif slopes[group] < config.baseline_min_slope:
            violations.append(f"{group} 기울기 {slopes[group]:.3f} < {config.baseline_min_slope}")

    last_T = config.horizons[-1]
    at_last = result.summary[result.summary["T"] == last_T].set_index("algo")
    for seeu in seeu_groups:
        if seeu not in at_last.index:
            continue
        for group in learner_groups:
            if group not in at_last.index:
                continue
            gap = at_last.loc[group, "mean"] - at_last.loc[seeu, "mean"]
            spread = 2.0 * math.hypot(at_last.loc[group, "stderr"], at_last.loc[seeu, "stderr"])
            if not gap > spread:
                violations.append(f"T={last_T} 에서 {seeu} regret 이 {group} 보다 2 표준오차만큼 작지 않습니다")
    return violations


def run_experiment(config: ExperimentConfig, output_dir: Path | None = None) -> RegretSummary:
    """
    설정대로 스윕을 돌리고 raw.csv, summary.csv, slopes.csv, meta.txt 를 쓴다.

    실패한 실행은 원자료에서 빠지고 (알고리즘, T) 별로 세어 meta.txt 에 남는다.
    불변식 위반은 결과의 violations 에 담긴다 (예외를 던지지 않는다).
    """
    model = load_model(config.model)
    output_dir = Path(output_dir or config.resolved_output_dir())
    entries = expand_algorithms(config)
    rho = solve_rho_star(model, config.rho_resolution)
    logger.info("📊 ρ*=%.6f (d=%d, 이산화 차이 %.2e)", rho.value, rho.resolution, rho.discretization)

    tasks = build_tasks(config, entries)
    workers = config.resolved_workers()
    logger.info("🔄 실행 %d개 시작 (동시 %d)", len(tasks), workers)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            results = asyncio.run(gather_runs(tasks, model, rho, executor))
    else:
        results = asyncio.run(gather_runs(tasks, model, rho, None))

    order = [entry.label for entry in entries]
    position = {label: i for i, label in enumerate(order)}
    results.sort(key=lambda r: (position[r.label], r.horizon, r.run))

    failures = {}
    for result in results:
        if result.error is not None:
            key = (result.label, result.horizon)
            failures[key] = failures.get(key, 0) + 1
            logger.warning("⚠️ 실행 실패 %s T=%d run=%d: %s", result.label, result.horizon, result.run, result.error)

    succeeded = [r for r in results if r.error is None]
    raw = pd.DataFrame(
        [{"algo": r.label, "T": r.horizon, "run": r.run, "seed": r.seed, "final_regret": r.final_regret} for r in succeeded],
        columns=["algo", "T", "run", "seed", "final_regret"],
    )
    summary = _summarize(raw, order)
    summary, chosen = _best_windows(summary, entries)
    slopes = _slopes(summary)

    result = RegretSummary(raw=raw, summary=summary, slopes=slopes, rho_star=rho, failures=failures, chosen_windows=chosen)
    result.violations.extend(check_invariants(result, config, entries))

    write_csv(raw, output_dir / "raw.csv")
    write_csv(summary, output_dir / "summary.csv")
    write_csv(slopes, output_dir / "slopes.csv")
    write_meta(output_dir / "meta.txt", _meta_items(config, model, rho, result))

    if failures:
        logger.warning("⚠️ 실패한 실행 %d개는 집계에서 제외했습니다", sum(failures.values()))
    if result.violations:
        for violation in result.violations:
            logger.error("❌ 불변식 위반: %s", violation)
    else:
        logger.info("✅ 스윕 완료: %s", output_dir)
    return result


def _meta_items(config: ExperimentConfig, model: HmmBanditModel, rho: RhoStar, result: RegretSummary) -> dict:
    items = {
        "model": config.model,
        "M": model.M,
        "I": model.I,
        "horizons": ",".join(str(T) for T in config.horizons),
        "runs": config.runs,
        "master_seed": config.master_seed,
        "algorithms": ";".join(
            f"{entry.label}:{entry.kind}:{dict(entry.params)}" for entry in expand_algorithms(config)
        ),
        "rho_star": rho.value,
        "rho_star.resolution": rho.resolution,
        "rho_star.discretization": rho.discretization,
        "rho_star.bias_span": rho.span,
        "best_fixed_arm.value": best_fixed_arm(model)[1],
        "full_information.value": full_information_value(model),
    }
    for (group, T), label in sorted(result.chosen_windows.items()):
        items[f"{group}.window.T{T}"] = label
    for (label, T), count in sorted(result.failures.items()):
        items[f"failed.{label}.T{T}"] = count
    items["violations"] = len(result.violations)
    return items


def raise_on_violations(result: RegretSummary) -> None:
    if result.violations:
        raise InvariantViolation("; ".join(result.violations))
