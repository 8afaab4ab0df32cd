"""
Константы nomcheck
"""


class Backend:
    """Бэкенды поиска контрпримеров"""

    NAF = "naf"            # Отрицание как неудача
    NE = "ne"              # Элиминация отрицания
    NE_MINUS = "ne-"       # Элиминация отрицания только с обобщённым ∀*

    @classmethod
    def get_display_name(cls, backend: str) -> str:
        """Получить название бэкенда для отчётов"""
        display_names = {
            cls.NAF: "NAF",
            cls.NE: "NE",
            cls.NE_MINUS: "NE-",
        }
        return display_names.get(backend, backend)

    @classmethod
    def get_all(cls) -> list:
        return [cls.NAF, cls.NE, cls.NE_MINUS]

    @classmethod
    def is_valid(cls, backend: str) -> bool:
        return backend in cls.get_all()

    @classmethod
    def uses_negation(cls, backend: str) -> bool:
        """Нужна ли бэкенду программа Δ⁻"""
        return backend in (cls.NE, cls.NE_MINUS)


class Mode:
    """Протоколы измерений"""

    TFCE = "tfce"   # До первого контрпримера
    TESS = "tess"   # Исчерпать пространство поиска до границы

    @classmethod
    def get_all(cls) -> list:
        return [cls.TFCE, cls.TESS]


class OutputFormat:
    TEXT = "text"
    JSON = "json"

    @classmethod
    def get_all(cls) -> list:
        return [cls.TEXT, cls.JSON]


class Reorder:
    """Порядок подцелей директивы"""

    AS_WRITTEN = "none"
    MOST_CONSTRAINED = "most-constrained"

    @classmethod
    def get_all(cls) -> list:
        return [cls.AS_WRITTEN, cls.MOST_CONSTRAINED]


class CheckOutcome:
    """Итог проверки одной директивы"""

    COUNTEREXAMPLE = "counterexample"
    NO_COUNTEREXAMPLE = "none"
    RESOURCE_LIMIT = "resource-limit"
    # ожидание корпуса: контрпример не найден ни в пределах границы, ни до таймаута
    NOT_FOUND = "not-found"

    @classmethod
    def get_display_name(cls, outcome: str) -> str:
        display_names = {
            cls.COUNTEREXAMPLE: "counterexample found",
            cls.NO_COUNTEREXAMPLE: "no counterexample",
            cls.RESOURCE_LIMIT: "t.o.",
            cls.NOT_FOUND: "not found",
        }
        return display_names.get(outcome, outcome)

    @classmethod
    def get_all(cls) -> list:
        return [cls.COUNTEREXAMPLE, cls.NO_COUNTEREXAMPLE, cls.RESOURCE_LIMIT]


class NafOutcome:
    """Результат отрицания как неудачи"""

    FAILS_FINITELY = "fails-finitely"
    SUCCEEDS = "succeeds"
    OUT_OF_BUDGET = "out-of-budget"


class Entailment:
    """Результат суждения Γ;K ⊨ C"""

    TRUE = "true"
    FALSE = "false"
    UNKNOWN = "unknown"


class ExitCode:
    """Коды завершения CLI"""

    OK = 0                 # Контрпримеров нет
    COUNTEREXAMPLE = 1     # Найден хотя бы один контрпример
    USAGE = 2              # Ошибка запуска, разбора или типизации
    TIMEOUT = 3            # Хотя бы одна проверка упёрлась в лимит


# Бюджет отрицаемого заключения в режиме NAF: 3·n + 10
NAF_CONCLUSION_FACTOR = 3
NAF_CONCLUSION_MARGIN = 10

# Повторная проверка заключения в режиме NE идёт с удвоенным бюджетом
NE_REPLAY_FACTOR = 2

DEFAULT_TIMEOUT = 40
DEFAULT_JOBS = 1
DEFAULT_RECURSION_LIMIT = 20000

# Префиксы сгенерированных предикатов
NOT_PREFIX = "not_"
CLAUSE_SEPARATOR = "__"
NEQ_PREFIX = "neq_"
NFR_PREFIX = "nfr_"
GEN_PREFIX = "gen_"

# Встроенные списочные конструкторы
NIL = "[]"
CONS = "[|]"
