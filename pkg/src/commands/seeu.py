import click

from pathlib import Path

from src.agents import SeeuConfig, run_seeu
from src.planner import OptimisticConfig, PlannerConfig
from src.settings import grid_point_budget
from src.store import episodes_frame, load_model, runlog_frame, write_csv
from .common import echo_pairs, handle_errors, model_option, out_option, seed_option


@click.command(name="seeu", help="SEEU 를 한 번 실행해 시점별 기록과 에피소드별 추정치를 씁니다.")
@model_option
@click.option("--T", "horizon", type=click.IntRange(min=1), default=10_000, show_default=True)
@click.option("--tau1", type=click.IntRange(min=3), default=SeeuConfig.tau1, show_default=True)
@click.option("--tau2", type=click.IntRange(min=1), default=SeeuConfig.tau2, show_default=True)
@click.option("--delta", type=click.FloatRange(0.0, 1.0, min_open=True, max_open=True), default=SeeuConfig.delta, show_default=True)
@click.option("--c1", type=float, default=SeeuConfig.C1, show_default=True)
@click.option("--c2", type=float, default=SeeuConfig.C2, show_default=True)
@click.option("--grid", "resolution", type=click.IntRange(min=1), default=None, help="격자 해상도 d")
@click.option("--candidates", type=click.IntRange(min=0), default=OptimisticConfig.n_candidates, show_default=True)
@seed_option
@out_option("seeu_run", "출력 디렉터리 (runlog.csv, episodes.csv)")
@handle_errors
def seeu(model_path, horizon, tau1, tau2, delta, c1, c2, resolution, candidates, seed, out: Path):
    model = load_model(model_path)
    config = SeeuConfig(
        tau1=tau1,
        tau2=tau2,
        delta=delta,
        C1=c1,
        C2=c2,
        planner=PlannerConfig(resolution=resolution, point_budget=grid_point_budget()),
        optimistic=OptimisticConfig(n_candidates=candidates),
    )
    log = run_seeu(model, config, horizon, seed)
    write_csv(runlog_frame(log), out / "runlog.csv")
    write_csv(episodes_frame(log), out / "episodes.csv")

    echo_pairs({
        "T": horizon,
        "episodes": len(log.episodes),
        "fallbacks": sum(record.status == "fallback" for record in log.episodes),
        "total_reward": log.total_reward,
        "out": str(out),
    })


def setup(cli: click.Group) -> None:
    cli.add_command(seeu)
