"""
Загрузка файлов спецификаций: чтение, разбор, раскрытие функций и элаборация
"""
import logging
from pathlib import Path

import aiofiles

from ..core.exceptions import CorpusError
from ..models.program import Program
from ..syntax import elaborate, flatten_functions, parse_program

logger = logging.getLogger(__name__)


class LoaderService:
    """Сервис загрузки программ"""

    def __init__(self, encoding: str = "utf-8"):
        self.encoding = encoding

    def load_text(self, text: str, path: str = "") -> Program:
        """Разобрать и элаборировать текст спецификации"""
        parsed = parse_program(text, path)
        flat = flatten_functions(parsed)
        return elaborate(flat, source=parsed)

    async def read(self, path: str) -> str:
        if not Path(path).is_file():
            raise CorpusError(f"file not found: {path}")
        async with aiofiles.open(path, "r", encoding=self.encoding) as f:
            text = await f.read()
        logger.debug(f"Read {len(text)} characters from {path}")
        return text

    async def load(self, path: str) -> Program:
        """Прочитать файл и элаборировать программу"""
        text = await self.read(path)
        program = self.load_text(text, path)
        logger.info(f"Loaded {path}: {len(program.checks)} checks")
        return program
