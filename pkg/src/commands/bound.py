import click

from src.agents import SeeuConfig, regret_upper_bound
from src.belief import belief_error_constants
from src.planner import PlannerConfig, bias_span_bound, plan
from src.settings import grid_point_budget
from src.store import load_model
from .common import echo_pairs, handle_errors, model_option


@click.command(name="bound", help="정답 모델에 대한 SEEU regret 상한을 계산합니다.")
@model_option
@click.option("--T", "horizon", type=click.IntRange(min=2), required=True)
@click.option("--tau1", type=click.IntRange(min=3), default=SeeuConfig.tau1, show_default=True)
@click.option("--tau2", type=click.IntRange(min=1), default=SeeuConfig.tau2, show_default=True)
@click.option("--c1", type=float, default=1.0, show_default=True)
@click.option("--c2", type=float, default=1.0, show_default=True)
@click.option("--delta", type=click.FloatRange(0.0, 1.0, min_open=True, max_open=True), default=0.05, show_default=True)
@click.option("--T0", "warmup", type=click.IntRange(min=0), default=0, show_default=True, help="추정기가 작동하기 시작하는 시점")
@click.option("--grid", "resolution", type=click.IntRange(min=1), default=None)
@handle_errors
def bound(model_path, horizon, tau1, tau2, c1, c2, delta, warmup, resolution):
    model = load_model(model_path)
    solution = plan(model, PlannerConfig(resolution=resolution, point_budget=grid_point_budget()))
    epsilon = min(model.epsilon, 0.5)
    D = bias_span_bound(epsilon)
    constants = belief_error_constants(model)
    result = regret_upper_bound(
        horizon,
        rho_star=solution.rho,
        D=D,
        L1=constants.L1,
        L2=constants.L2,
        n_states=model.M,
        n_arms=model.I,
        tau1=tau1,
        tau2=tau2,
        C1=c1,
        C2=c2,
        delta=delta,
        T0=warmup,
    )
    echo_pairs({
        "rho_star": solution.rho,
        "D": D,
        "L1": constants.L1,
        "L2": constants.L2,
        "C": result.constant,
        "high_probability": result.high_probability,
        "expected": result.expected,
    })


def setup(cli: click.Group) -> None:
    cli.add_command(bound)
