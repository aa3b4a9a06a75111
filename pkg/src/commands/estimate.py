import click
import numpy as np
import orjson

from pathlib import Path

from src.model import RunStreams, sample_trajectory, uniform_arms
from src.spectral import (
    ExplorationSegments,
    SpectralConfig,
    align_permutation,
    apply_permutation,
    collect_triples,
    confidence_region,
    estimate_from_moments,
    estimate_moments,
)
from src.store import load_model, moments_frame, write_csv
from .common import echo_pairs, handle_errors, model_option, out_option, seed_option


@click.command(name="estimate", help="균등 팔 궤적으로 스펙트럴 추정을 수행합니다.")
@model_option
@click.option("--samples", type=click.IntRange(min=3), default=200_000, show_default=True, help="표본 수 n")
@click.option("--delta", type=click.FloatRange(0.0, 1.0, min_open=True, max_open=True), default=0.05, show_default=True)
@click.option("--c1", type=float, default=1.0, show_default=True, help="μ 반경 상수")
@click.option("--c2", type=float, default=1.0, show_default=True, help="P 반경 상수")
@click.option("--dump-moments", type=click.Path(path_type=Path), default=None, help="Ŵ, M̂2 CSV")
@seed_option
@out_option("estimate.json", "추정 결과 JSON")
@handle_errors
def estimate(model_path, samples, delta, c1, c2, dump_moments, seed, out):
    model = load_model(model_path)
    streams = RunStreams.from_seed(seed)
    rng = np.random.default_rng(streams.agent)
    arms = uniform_arms(model.I, samples, rng)
    trajectory = sample_trajectory(model, arms, samples, seed)

    segments = ExplorationSegments(n_arms=model.I)
    segments.append(trajectory.arms, trajectory.rewards)
    config = SpectralConfig()
    moments = estimate_moments(collect_triples(segments), model.M, 2 * model.I, rcond=config.rcond)
    result = estimate_from_moments(moments, model.M, model.I, rng, config)
    region = confidence_region(result, moments.n_triples, delta, c1, c2)

    # 정답 상태 번호에 맞춘 오차 (평가용)
    perm = align_permutation(result.mu_hat, model.mu)
    mu_aligned, P_aligned = apply_permutation(result, perm)
    document = {
        "M": model.M,
        "I": model.I,
        "n_triples": moments.n_triples,
        "mu_hat": result.mu_hat.tolist(),
        "P_hat": result.P_hat.tolist(),
        "weights": result.weights.tolist(),
        "radius_mu": region.radius_mu.tolist(),
        "radius_P": region.radius_P,
        "delta": delta,
        "residual": result.residual,
        "whitening_condition": result.whitening_condition,
        "permutation": [p + 1 for p in perm],
        "mu_error_inf": float(np.abs(mu_aligned - model.mu).max()),
        "P_error_inf": float(np.abs(P_aligned - model.P).max()),
    }
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_bytes(orjson.dumps(document, option=orjson.OPT_INDENT_2) + b"\n")
    if dump_moments is not None:
        write_csv(moments_frame(moments), dump_moments)

    echo_pairs({
        "n_triples": moments.n_triples,
        "mu_error_inf": document["mu_error_inf"],
        "P_error_inf": document["P_error_inf"],
        "radius_P": region.radius_P,
        "out": str(out),
    })


def setup(cli: click.Group) -> None:
    cli.add_command(estimate)
