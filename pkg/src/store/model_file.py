import orjson

from pathlib import Path

from src.errors import ConfigError
from src.model import HmmBanditModel, validate_model

REQUIRED_KEYS = ("P", "mu")


def load_model(path) -> HmmBanditModel:
    """
    JSON 모델 파일을 읽어 검증된 모델을 돌려준다.

    Args:
        path: 키 M, I (선택), P, mu, initial_belief (선택) 를 가진 JSON 파일

    Returns:
        HmmBanditModel: 가정 1~3 을 통과한 모델

    Raises:
        ConfigError: 파일이 없거나 형식이 잘못됐을 때
        ModelValidationError: 가정 위반
    """
    path = Path(path)
    try:
        document = orjson.loads(path.read_bytes())
    except FileNotFoundError:
        raise ConfigError(f"모델 파일이 없습니다: {path}") from None
    except orjson.JSONDecodeError as e:
        raise ConfigError(f"모델 파일 JSON 오류 ({path}): {e}") from None

    if not isinstance(document, dict):
        raise ConfigError(f"모델 파일 최상위는 객체여야 합니다: {path}")
    missing = [key for key in REQUIRED_KEYS if key not in document]
    if missing:
        raise ConfigError(f"모델 파일에 {', '.join(missing)} 키가 없습니다: {path}")

    try:
        model = validate_model(document["P"], document["mu"], document.get("initial_belief"))
    except (ValueError, TypeError) as e:
        raise ConfigError(f"모델 파일 행렬 모양이 잘못됐습니다 ({path}): {e}") from None
    for key, actual in (("M", model.M), ("I", model.I)):
        if key in document and int(document[key]) != actual:
            raise ConfigError(f"모델 파일의 {key}={document[key]} 가 행렬 모양({actual})과 다릅니다")
    return model


def save_model(model: HmmBanditModel, path) -> Path:
    document = {
        "M": model.M,
        "I": model.I,
        "P": model.P.tolist(),
        "mu": model.mu.tolist(),
    }
    if model.initial_belief is not None:
        document["initial_belief"] = model.initial_belief.tolist()
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(orjson.dumps(document, option=orjson.OPT_INDENT_2) + b"\n")
    return path
