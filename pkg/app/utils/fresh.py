import itertools
import logging
import threading

logger = logging.getLogger(__name__)


class StampSource:
    """Глобальный монотонный счётчик штампов для переменных и имён

    Штамп задаёт порядок в контексте Γ: имя, введённое квантором Ν, свежо для
    всех переменных с меньшим штампом.
    """

    def __init__(self, start: int = 1):
        self._counter = itertools.count(start)
        self._lock = threading.Lock()

    def next(self) -> int:
        """Выдать следующий штамп"""
        with self._lock:
            return next(self._counter)


_source = StampSource()


def next_stamp() -> int:
    return _source.next()


def stamp_source() -> StampSource:
    return _source
