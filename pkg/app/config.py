from dataclasses import dataclass
from os import getenv

from dotenv import load_dotenv

from .core.constants import DEFAULT_JOBS, DEFAULT_RECURSION_LIMIT, DEFAULT_TIMEOUT, Backend

# Загружаем переменные окружения из файла .env
load_dotenv()


@dataclass
class Config:
    """Конфигурация приложения"""

    def __init__(self):
        """Инициализация конфигурации"""
        self.NOMCHECK_BACKEND = getenv("NOMCHECK_BACKEND", Backend.NAF)
        self.LOG_LEVEL = getenv("LOG_LEVEL", "WARNING").upper()
        self.LOG_FILE = getenv("LOG_FILE", "")

        # Таймаут одной проверки в секундах
        try:
            self.NOMCHECK_TIMEOUT = float(getenv("NOMCHECK_TIMEOUT", str(DEFAULT_TIMEOUT)))
            if self.NOMCHECK_TIMEOUT <= 0:
                raise ValueError
        except (ValueError, TypeError):
            self.NOMCHECK_TIMEOUT = float(DEFAULT_TIMEOUT)

        # Ширина пула проверок
        try:
            self.NOMCHECK_JOBS = max(1, int(getenv("NOMCHECK_JOBS", str(DEFAULT_JOBS))))
        except (ValueError, TypeError):
            self.NOMCHECK_JOBS = DEFAULT_JOBS

        try:
            self.NOMCHECK_RECURSION_LIMIT = int(getenv("NOMCHECK_RECURSION_LIMIT", str(DEFAULT_RECURSION_LIMIT)))
        except (ValueError, TypeError):
            self.NOMCHECK_RECURSION_LIMIT = DEFAULT_RECURSION_LIMIT

        if not Backend.is_valid(self.NOMCHECK_BACKEND):
            self.NOMCHECK_BACKEND = Backend.NAF
