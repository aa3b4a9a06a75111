import click

from pathlib import Path

from src.bench import load_experiment_config, raise_on_violations, run_experiment
from .common import echo_pairs, handle_errors


@click.command(name="bench", help="regret 스윕을 실행하고 raw/summary/slopes CSV 와 meta.txt 를 씁니다.")
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False, path_type=Path), required=True)
@click.option("--out", type=click.Path(file_okay=False, path_type=Path), default=None, help="출력 디렉터리 (기본: 설정 또는 SEEU_OUTPUT_DIR)")
@click.option("--workers", type=click.IntRange(min=1), default=None, help="동시 실행 수 (기본: 설정 또는 SEEU_WORKERS)")
@handle_errors
def bench(config_path, out, workers):
    config = load_experiment_config(config_path)
    if workers is not None:
        config = config.model_copy(update={"workers": workers})
    output_dir = out or config.resolved_output_dir()
    result = run_experiment(config, output_dir)

    for row in result.slopes.itertuples(index=False):
        click.echo(f"slope[{row.algo}]={row.slope:.4f}±{row.stderr:.4f}")
    echo_pairs({
        "rho_star": result.rho_star.value,
        "runs": len(result.raw),
        "failed": sum(result.failures.values()),
        "out": str(output_dir),
    })
    raise_on_violations(result)


def setup(cli: click.Group) -> None:
    cli.add_command(bench)
