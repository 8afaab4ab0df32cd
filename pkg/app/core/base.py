"""
Базовые классы для архитектуры
"""
from abc import ABC
import logging

from ..models.program import Program, Signature

logger = logging.getLogger(__name__)


class BaseRepository(ABC):
    """Базовый класс для всех репозиториев: доступ к элаборированной программе"""

    def __init__(self, program: Program):
        self.program = program

    @property
    def signature(self) -> Signature:
        return self.program.signature


class BaseService(ABC):
    """Базовый класс для всех сервисов"""

    def __init__(self, program: Program):
        self.program = program
