import platform

from importlib import metadata
from pathlib import Path

VERSIONED_PACKAGES = ("numpy", "scipy", "pandas", "pydantic", "click", "orjson")


def package_versions() -> dict[str, str]:
    versions = {"python": platform.python_version()}
    for name in VERSIONED_PACKAGES:
        try:
            versions[name] = metadata.version(name)
        except metadata.PackageNotFoundError:
            versions[name] = "unknown"
    return versions


def write_meta(path, items: dict) -> Path:
    """
    key=value 줄로 된 meta.txt 를 쓴다. 키 순서는 넣은 순서 그대로이고 시각은 기록하지 않는다.

    Args:
        path: 출력 파일
        items (dict): 기록할 값. 실수는 %.12g 로 쓴다
    """
    lines = []
    for key, value in {**items, **{f"version.{k}": v for k, v in package_versions().items()}}.items():
        if isinstance(value, float):
            value = f"{value:.12g}"
        lines.append(f"{key}={value}")
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def read_meta(path) -> dict[str, str]:
    items = {}
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        if "=" in line:
            key, value = line.split("=", 1)
            items[key] = value
    return items
