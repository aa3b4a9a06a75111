import click
import numpy as np

from src.belief import replay_beliefs
from src.model import RunStreams, sample_trajectory, uniform_arms
from src.store import belief_history_frame, load_model, trajectory_frame, write_csv
from .common import echo_pairs, handle_errors, model_option, out_option, seed_option


@click.command(name="simulate", help="정답 모델에서 궤적을 생성합니다.")
@model_option
@click.option("--T", "horizon", type=click.IntRange(min=1), default=1000, show_default=True, help="시점 수")
@click.option("--arm", type=click.IntRange(min=1), default=None, help="고정 팔 (1부터). 없으면 균등 무작위")
@click.option("--beliefs", "beliefs_path", type=click.Path(path_type=str), default=None, help="정답 모델 belief 이력 CSV")
@seed_option
@out_option("trajectory.csv", "궤적 CSV")
@handle_errors
def simulate(model_path, horizon, arm, beliefs_path, seed, out):
    model = load_model(model_path)
    if arm is None:
        arms = uniform_arms(model.I, horizon, np.random.default_rng(RunStreams.from_seed(seed).agent))
    else:
        if arm > model.I:
            raise click.BadParameter(f"팔 번호는 1..{model.I} 이어야 합니다", param_hint="--arm")
        arms = np.full(horizon, arm - 1)
    trajectory = sample_trajectory(model, arms, horizon, seed)
    write_csv(trajectory_frame(trajectory), out)

    if beliefs_path:
        uniform = np.full(model.M, 1.0 / model.M)
        history = replay_beliefs(model, uniform, trajectory.arms, trajectory.rewards)
        write_csv(belief_history_frame(history), beliefs_path)

    echo_pairs({
        "T": horizon,
        "mean_reward": float(trajectory.rewards.mean()),
        "out": str(out),
    })


def setup(cli: click.Group) -> None:
    cli.add_command(simulate)
