import click
import pandas as pd

from pathlib import Path

from src.bench import loglog_slope
from src.bench.slope import MIN_POINTS
from src.errors import ConfigError
from src.store import write_csv
from .common import handle_errors


@click.command(name="slope", help="(T, 평균 regret) 점들의 log-log 기울기를 구합니다.")
@click.argument("points_csv", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path), default=None, help="slopes CSV")
@handle_errors
def slope(points_csv, out):
    """
    입력 CSV 는 T, mean 열을 갖는다 (bench 의 summary.csv 그대로). algo 열이 있으면 알고리즘별로 구한다.
    """
    frame = pd.read_csv(points_csv)
    missing = {"T", "mean"} - set(frame.columns)
    if missing:
        raise ConfigError(f"{points_csv} 에 {sorted(missing)} 열이 없습니다")
    if "algo" not in frame.columns:
        frame["algo"] = "all"

    rows = []
    for algo, points in frame.groupby("algo", sort=False):
        if len(points) < MIN_POINTS:
            click.echo(f"slope[{algo}]=absent (T {len(points)}개)")
            continue
        fit = loglog_slope(points[["T", "mean"]].to_numpy())
        rows.append({"algo": algo, "slope": fit.slope, "stderr": fit.stderr})
        click.echo(f"slope[{algo}]={fit.slope:.6f}±{fit.stderr:.6f}")
    if out is not None:
        write_csv(pd.DataFrame(rows, columns=["algo", "slope", "stderr"]), out)


def setup(cli: click.Group) -> None:
    cli.add_command(slope)
