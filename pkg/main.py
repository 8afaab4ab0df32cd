import logging
import os
import sys
import threading

from app.config import Config
from app.handlers.cli import main

logger = logging.getLogger(__name__)

# Стек рабочих потоков поиска: глубокая рекурсия при больших границах
THREAD_STACK_SIZE = 256 * 1024 * 1024


def setup_logging(config: Config) -> None:
    """Настройка логирования: stderr и, при LOG_FILE, файл"""
    handlers: list[logging.Handler] = [logging.StreamHandler(sys.stderr)]
    if config.LOG_FILE:
        directory = os.path.dirname(config.LOG_FILE)
        if directory:
            os.makedirs(directory, exist_ok=True)
        handlers.append(logging.FileHandler(config.LOG_FILE))

    logging.basicConfig(
        level=getattr(logging, config.LOG_LEVEL, logging.WARNING),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        handlers=handlers,
    )


def setup_runtime(config: Config) -> None:
    """Лимит рекурсии и размер стека потоков для поиска"""
    sys.setrecursionlimit(config.NOMCHECK_RECURSION_LIMIT)
    try:
        threading.stack_size(THREAD_STACK_SIZE)
    except (ValueError, RuntimeError) as e:
        logger.warning(f"Could not enlarge thread stack: {e}")


def run() -> None:
    config = Config()
    setup_logging(config)
    setup_runtime(config)
    sys.exit(main(config=config))


if __name__ == "__main__":
    run()
