import click

from src.planner import PlannerConfig, bias_span, bias_span_bound, plan
from src.settings import grid_point_budget
from src.store import load_model, policy_frame, write_csv
from .common import echo_pairs, handle_errors, model_option, out_option


@click.command(name="plan", help="정답 모델의 belief MDP 를 풀어 ρ, span(h), 정책표를 냅니다.")
@model_option
@click.option("--grid", "resolution", type=click.IntRange(min=1), default=None, help="격자 해상도 d (기본: M 에 따라)")
@click.option("--tol", type=float, default=1e-6, show_default=True, help="증분 span 정지 기준")
@click.option("--max-iter", type=click.IntRange(min=1), default=100_000, show_default=True)
@out_option("policy.csv", "정책표 CSV (b 성분 → 팔)")
@handle_errors
def plan_command(model_path, resolution, tol, max_iter, out):
    model = load_model(model_path)
    config = PlannerConfig(tol=tol, max_iter=max_iter, resolution=resolution, point_budget=grid_point_budget())
    solution = plan(model, config)
    write_csv(policy_frame(solution), out)

    items = {
        "rho": solution.rho,
        "span_h": bias_span(solution),
        "grid_d": solution.grid.d,
        "grid_points": len(solution.grid),
        "iterations": solution.iterations,
        "residual_span": solution.residual_span,
        "epsilon": model.epsilon,
    }
    if model.epsilon <= 0.5:
        items["span_bound"] = bias_span_bound(model.epsilon)
    items["out"] = str(out)
    echo_pairs(items)


def setup(cli: click.Group) -> None:
    cli.add_command(plan_command)
