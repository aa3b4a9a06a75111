import importlib
import logging
import click

from dotenv import load_dotenv

# env 로드
load_dotenv()

from src import settings  # noqa: E402  (.env 를 먼저 읽어야 한다)

# 로깅 설정
logging.basicConfig(level=getattr(logging, settings.log_level(), logging.INFO))
logger = logging.getLogger("seeu_bench")

COMMAND_MODULES = [
    "src.commands.simulate",
    "src.commands.estimate",
    "src.commands.plan",
    "src.commands.seeu",
    "src.commands.baseline",
    "src.commands.bench",
    "src.commands.slope",
    "src.commands.bound",
]


@click.group(help="은닉 체제 전환 밴딧 SEEU 벤치마크")
def cli():
    pass


def load_commands(group: click.Group) -> tuple[list[str], list[str]]:
    """모든 명령 모듈을 불러와 setup(group) 을 호출합니다."""
    loaded, failed = [], []
    for module_name in COMMAND_MODULES:
        try:
            logger.debug("🔄 %s 로드 시작...", module_name)
            importlib.import_module(module_name).setup(group)
            loaded.append(module_name)
        except Exception as e:
            logger.error("❌ %s 로드 실패: %s: %s", module_name, type(e).__name__, e)
            failed.append(module_name)

    logger.debug("📊 명령 로드 결과: 성공 %d개", len(loaded))
    if failed:
        logger.warning("⚠️ 실패한 명령(%s)은 사용할 수 없습니다", ", ".join(failed))
    return loaded, failed


load_commands(cli)

if __name__ == "__main__":
    cli()
