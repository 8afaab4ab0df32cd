"""
Сервис устранения отрицания: синтез Δ⁻, выгрузка в файл и повторная загрузка
"""
import logging
from typing import Optional

import aiofiles

from ..core.base import BaseService
from ..models.program import Program
from ..negation import NegatedProgram, negate_program
from ..repositories.program_repository import ProgramRepository
from ..syntax import print_core_program
from .loader_service import LoaderService

logger = logging.getLogger(__name__)


class NegationService(BaseService):
    """Δ⁻ для одной программы; результат синтеза кэшируется"""

    def __init__(self, program: Program, inline: bool = False):
        super().__init__(program)
        self.inline = inline
        self._negated: Optional[NegatedProgram] = None
        self._repository: Optional[ProgramRepository] = None

    def synthesize(self) -> NegatedProgram:
        if self._negated is None:
            self._negated = negate_program(self.program, inline=self.inline)
        return self._negated

    def use(self, negated: NegatedProgram) -> None:
        """Подставить готовую Δ⁻ (например, загруженную из файла)"""
        self._negated = negated
        self._repository = None

    def repository(self) -> ProgramRepository:
        """Δ ∪ Δ⁻ с расширенной сигнатурой"""
        if self._repository is None:
            negated = self.synthesize()
            self._repository = ProgramRepository(self.program).with_layer(negated.clauses, negated.signature)
        return self._repository

    def render(self) -> str:
        negated = self.synthesize()
        return print_core_program(negated.signature, negated.clauses)

    async def dump(self, path: str) -> None:
        text = self.render()
        async with aiofiles.open(path, "w", encoding="utf-8") as f:
            await f.write(text)
        logger.info(f"Negated program written to {path}: {len(self.synthesize().clauses)} clauses")

    def parse_dump(self, text: str, path: str = "") -> NegatedProgram:
        """Элаборировать выгруженную Δ⁻; сигнатура файла заменяет пользовательскую"""
        loaded = LoaderService().load_text(text, path)
        user = set(self.program.signature.predicates)
        generated = [p for p in loaded.signature.predicates if p not in user]
        return NegatedProgram(loaded.signature, loaded.clauses, generated)

    async def load(self, path: str) -> NegatedProgram:
        text = await LoaderService().read(path)
        negated = self.parse_dump(text, path)
        self.use(negated)
        logger.info(f"Negated program loaded from {path}: {len(negated.clauses)} clauses")
        return negated
