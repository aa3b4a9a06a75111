"""
환경 변수 기본값. 진입 스크립트가 load_dotenv() 를 먼저 호출하므로 .env 값도 여기서 읽힌다.
CLI 플래그가 주어지면 플래그가 우선한다.
"""
import os

from src.errors import ConfigError
from src.planner import DEFAULT_POINT_BUDGET


def _int_env(name: str, default: int, lowest: int = 1) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        raise ConfigError(f"{name} 는 정수여야 합니다: {raw!r}") from None
    if value < lowest:
        raise ConfigError(f"{name} 는 {lowest} 이상이어야 합니다: {value}")
    return value


def log_level() -> str:
    return os.getenv("SEEU_LOG_LEVEL", "INFO").upper()


def workers() -> int:
    """동시에 돌릴 실행 수"""
    return _int_env("SEEU_WORKERS", 1)


def output_dir() -> str:
    return os.getenv("SEEU_OUTPUT_DIR", "results")


def grid_point_budget() -> int:
    return _int_env("SEEU_GRID_POINT_BUDGET", DEFAULT_POINT_BUDGET)
