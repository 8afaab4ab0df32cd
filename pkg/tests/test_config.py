"""
Тесты конфигурации из переменных окружения
"""
import pytest

from app.config import Config
from app.core.constants import DEFAULT_JOBS, DEFAULT_RECURSION_LIMIT, DEFAULT_TIMEOUT, Backend


class TestConfig:
    def test_values_from_environment(self, monkeypatch):
        monkeypatch.setenv("NOMCHECK_BACKEND", "ne-")
        monkeypatch.setenv("NOMCHECK_TIMEOUT", "2.5")
        monkeypatch.setenv("NOMCHECK_JOBS", "4")
        monkeypatch.setenv("LOG_LEVEL", "debug")
        config = Config()
        assert config.NOMCHECK_BACKEND == Backend.NE_MINUS
        assert config.NOMCHECK_TIMEOUT == 2.5
        assert config.NOMCHECK_JOBS == 4
        assert config.LOG_LEVEL == "DEBUG"

    def test_defaults(self, monkeypatch):
        for key in ("NOMCHECK_BACKEND", "NOMCHECK_TIMEOUT", "NOMCHECK_JOBS", "NOMCHECK_RECURSION_LIMIT", "LOG_FILE"):
            monkeypatch.delenv(key, raising=False)
        config = Config()
        assert config.NOMCHECK_BACKEND == Backend.NAF
        assert config.NOMCHECK_TIMEOUT == float(DEFAULT_TIMEOUT)
        assert config.NOMCHECK_JOBS == DEFAULT_JOBS
        assert config.NOMCHECK_RECURSION_LIMIT == DEFAULT_RECURSION_LIMIT
        assert config.LOG_FILE == ""

    @pytest.mark.parametrize("value", ["soon", "0", "-3"])
    def test_invalid_timeout_falls_back(self, monkeypatch, value):
        monkeypatch.setenv("NOMCHECK_TIMEOUT", value)
        assert Config().NOMCHECK_TIMEOUT == float(DEFAULT_TIMEOUT)

    def test_jobs_at_least_one(self, monkeypatch):
        monkeypatch.setenv("NOMCHECK_JOBS", "0")
        assert Config().NOMCHECK_JOBS == 1
        monkeypatch.setenv("NOMCHECK_JOBS", "many")
        assert Config().NOMCHECK_JOBS == DEFAULT_JOBS

    def test_unknown_backend_falls_back(self, monkeypatch):
        monkeypatch.setenv("NOMCHECK_BACKEND", "smt")
        assert Config().NOMCHECK_BACKEND == Backend.NAF

    def test_pytest_environment(self):
        # значения из секции env в pytest.ini
        config = Config()
        assert config.NOMCHECK_TIMEOUT == 60.0
        assert config.LOG_LEVEL == "WARNING"
