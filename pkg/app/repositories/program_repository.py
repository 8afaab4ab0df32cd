from dataclasses import replace
from typing import Iterable, List, Optional
import logging

from ..core.base import BaseRepository
from ..models.program import Clause, Program, Signature

logger = logging.getLogger(__name__)


class ProgramRepository(BaseRepository):
    """База клауз для поиска: Δ и подключённые слои (генераторы, Δ⁻, neq/nfr)"""

    def __init__(self, program: Program, extra: Iterable[Clause] = ()):
        super().__init__(program)
        self._index: dict[str, List[Clause]] = {}
        for clause in program.clauses:
            self._index.setdefault(clause.pred, []).append(clause)
        self._extra: List[Clause] = []
        for clause in extra:
            self._extra.append(clause)
            self._index.setdefault(clause.pred, []).append(clause)

    def def_of(self, pred: str) -> List[Clause]:
        """def(p, Δ): клаузы с головой p в порядке следования"""
        return self._index.get(pred, [])

    def count(self, pred: str) -> int:
        return len(self._index.get(pred, []))

    def has_definition(self, pred: str) -> bool:
        return pred in self._index

    def predicates(self) -> List[str]:
        return list(self.signature.predicates)

    @property
    def extra_clauses(self) -> List[Clause]:
        return list(self._extra)

    def with_layer(self, clauses: Iterable[Clause], signature: Optional[Signature] = None) -> "ProgramRepository":
        """Новый репозиторий с дополнительным слоем клауз (исходный не меняется)"""
        program = self.program
        if signature is not None:
            program = replace(program, signature=signature)
        layered = ProgramRepository(program, self._extra + list(clauses))
        logger.debug(f"Layered repository: {len(layered._extra)} generated clauses over {len(program.clauses)}")
        return layered
