import functools
import logging
import click

from pathlib import Path

from src.errors import SeeuError

logger = logging.getLogger(__name__)

DEFAULT_MODEL = "models/paper_2x2.model"


def handle_errors(command):
    """도메인 오류를 ❌ 메시지와 0 이 아닌 종료 코드로 바꾼다."""

    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except SeeuError as e:
            logger.debug("명령 실패", exc_info=True)
            raise click.ClickException(f"❌ {type(e).__name__}: {e}") from e

    return wrapper


def model_option(command):
    return click.option(
        "--model",
        "model_path",
        type=click.Path(dir_okay=False, path_type=Path),
        default=DEFAULT_MODEL,
        show_default=True,
        help="정답 모델 파일 (JSON)",
    )(command)


def seed_option(command):
    return click.option("--seed", type=int, default=0, show_default=True, help="실행 시드")(command)


def out_option(default: str | None = None, help: str = "출력 경로"):
    def decorate(command):
        return click.option(
            "--out",
            "out",
            type=click.Path(path_type=Path),
            default=default,
            show_default=default is not None,
            help=help,
        )(command)

    return decorate


def echo_pairs(items: dict) -> None:
    """결과 값을 key=value 줄로 출력한다. 실수는 %.12g"""
    for key, value in items.items():
        if isinstance(value, float):
            value = f"{value:.12g}"
        click.echo(f"{key}={value}")
