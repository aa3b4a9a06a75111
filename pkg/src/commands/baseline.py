import click

from src.agents import BASELINE_KINDS, BaselineConfig, run_baseline
from src.planner import PlannerConfig, plan
from src.settings import grid_point_budget
from src.store import load_model, runlog_frame, write_csv
from .common import echo_pairs, handle_errors, model_option, out_option, seed_option


def _window(value: str | None):
    if value is None or not value.isdigit():
        return value
    return int(value)


@click.command(name="baseline", help="비교 정책을 한 번 실행합니다.")
@click.option("--kind", type=click.Choice(BASELINE_KINDS), required=True)
@model_option
@click.option("--T", "horizon", type=click.IntRange(min=1), default=10_000, show_default=True)
@click.option("--epsilon", type=float, default=0.1, show_default=True, help="ε-greedy 탐색 확률")
@click.option("--window", type=str, default=None, help="SW-UCB 창: 정수 또는 sqrt, t23, 4sqrt")
@click.option("--xi", type=float, default=0.6, show_default=True, help="UCB 탐색 상수")
@click.option("--gamma", type=float, default=None, help="Exp3.S γ (기본: L 로부터)")
@click.option("--alpha", type=float, default=None, help="Exp3.S α (기본: 1/T)")
@click.option("--L", "changes", type=click.IntRange(min=1), default=None, help="Exp3.S 변화 횟수 (기본: T)")
@click.option("--arm", type=click.IntRange(min=1), default=None, help="best_fixed_arm 에서 고정할 팔 (1부터)")
@seed_option
@out_option("baseline_runlog.csv", "RunLog CSV")
@handle_errors
def baseline(kind, model_path, horizon, epsilon, window, xi, gamma, alpha, changes, arm, seed, out):
    model = load_model(model_path)
    config = BaselineConfig(
        kind=kind,
        epsilon=epsilon,
        window=_window(window),
        xi=xi,
        gamma=gamma,
        alpha=alpha,
        L=changes,
        arm=None if arm is None else arm - 1,
    )
    solution = plan(model, PlannerConfig(point_budget=grid_point_budget())) if kind == "belief_oracle" else None
    log = run_baseline(model, config, horizon, seed, solution)
    write_csv(runlog_frame(log), out)

    echo_pairs({
        "algo": config.label,
        "T": horizon,
        "total_reward": log.total_reward,
        "mean_reward": log.total_reward / horizon,
        "out": str(out),
    })


def setup(cli: click.Group) -> None:
    cli.add_command(baseline)
