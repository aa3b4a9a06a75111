"""
bench 의 summary.csv 로 log-log regret 그림을 그립니다.

    python scripts/plot_regret.py results/desk_scale/summary.csv -o regret.png
"""
import click
import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import pandas as pd  # noqa: E402


@click.command(help="평균 regret vs T (log-log)")
@click.argument("summary_csv", type=click.Path(exists=True, dir_okay=False))
@click.option("-o", "--output", default="regret.png", show_default=True)
def main(summary_csv, output):
    summary = pd.read_csv(summary_csv)
    fig, ax = plt.subplots(figsize=(6, 4))
    for algo, rows in summary.groupby("algo", sort=False):
        # 창 탐색 변형은 그룹 대표 행으로만 그린다
        if "[w=" in algo:
            continue
        ax.errorbar(rows["T"], rows["mean"], yerr=2 * rows["stderr"].fillna(0), marker="o", capsize=3, label=algo)
    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.set_xlabel("T")
    ax.set_ylabel("mean regret")
    ax.legend()
    fig.tight_layout()
    fig.savefig(output, dpi=150)
    click.echo(f"✅ {output} 저장 완료")


if __name__ == "__main__":
    main()
