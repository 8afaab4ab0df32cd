"""
Иерархия ошибок nomcheck
"""
from dataclasses import dataclass
from typing import Optional


@dataclass(frozen=True, slots=True)
class SourcePos:
    """Позиция в исходном файле (строки и столбцы с единицы)"""
    line: int
    column: int
    path: str = ""

    def __str__(self) -> str:
        prefix = f"{self.path}:" if self.path else ""
        return f"{prefix}{self.line}:{self.column}"


class NomcheckError(Exception):
    """Базовая ошибка"""

    def __init__(self, message: str, pos: Optional[SourcePos] = None):
        super().__init__(message)
        self.message = message
        self.pos = pos

    def __str__(self) -> str:
        if self.pos is not None:
            return f"{self.pos}: {self.message}"
        return self.message


class ParseError(NomcheckError):
    """Лексическая или синтаксическая ошибка, необъявленный символ, неверная арность"""


class TypeCheckError(NomcheckError):
    """Ошибка типизации клаузы или директивы"""


class FragmentViolation(NomcheckError):
    """Вход вне фрагмента, замкнутого относительно дополнения"""


class SynthesisError(NomcheckError):
    """Имя сгенерированного предиката конфликтует с пользовательским символом"""


class SearchTimeout(NomcheckError):
    """Истёк кооперативный дедлайн поиска"""


class CorpusError(NomcheckError):
    """Отсутствует файл корпуса или испорчено описание ожиданий"""
