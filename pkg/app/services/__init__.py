"""
Пакет с сервисами приложения
"""

from .check_service import CheckLimits, CheckResult, CheckService, Counterexample, run_pool
from .loader_service import LoaderService
from .negation_service import NegationService
from .regression_service import RegressionService
from .report_service import ReportService

__all__ = [
    'CheckLimits',
    'CheckResult',
    'CheckService',
    'Counterexample',
    'run_pool',
    'LoaderService',
    'NegationService',
    'RegressionService',
    'ReportService',
]
