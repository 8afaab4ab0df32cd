"""
Модели запуска и отчёта (pydantic): конфигурация CLI и результаты проверок
"""
from typing import List, Optional

from pydantic import BaseModel, Field, field_validator, model_validator

from ..core.constants import (
    DEFAULT_JOBS, DEFAULT_TIMEOUT, Backend, CheckOutcome, Mode, OutputFormat, Reorder,
)


class RunConfig(BaseModel):
    """Параметры одного запуска"""
    paths: List[str] = Field(default_factory=list)
    label: Optional[str] = None
    backend: str = Backend.NAF
    bound: Optional[int] = Field(default=None, ge=1)
    timeout: float = Field(default=DEFAULT_TIMEOUT, gt=0)
    mode: str = Mode.TFCE
    format: str = OutputFormat.TEXT
    dump_negation: Optional[str] = None
    load_negation: Optional[str] = None
    inline: bool = False
    reorder: str = Reorder.AS_WRITTEN
    jobs: int = Field(default=DEFAULT_JOBS, ge=1)
    list_only: bool = False

    @field_validator("backend")
    @classmethod
    def _backend(cls, value: str) -> str:
        if not Backend.is_valid(value):
            raise ValueError(f"unknown backend {value}")
        return value

    @field_validator("mode")
    @classmethod
    def _mode(cls, value: str) -> str:
        if value not in Mode.get_all():
            raise ValueError(f"unknown mode {value}")
        return value

    @field_validator("format")
    @classmethod
    def _format(cls, value: str) -> str:
        if value not in OutputFormat.get_all():
            raise ValueError(f"unknown output format {value}")
        return value

    @field_validator("reorder")
    @classmethod
    def _reorder(cls, value: str) -> str:
        if value not in Reorder.get_all():
            raise ValueError(f"unknown ordering {value}")
        return value


class CheckReport(BaseModel):
    """Результат одной проверки в машиночитаемом виде"""
    label: str
    backend: str
    result: str
    bindings: List[str] = Field(default_factory=list)
    depth: Optional[int] = None
    millis: int = Field(default=0, ge=0)
    exhausted_to: Optional[int] = None
    any_branch_hit_budget: Optional[bool] = None

    @field_validator("result")
    @classmethod
    def _result(cls, value: str) -> str:
        if value not in CheckOutcome.get_all():
            raise ValueError(f"unknown result {value}")
        return value


class RunSummary(BaseModel):
    counterexamples: int = 0
    no_counterexample: int = 0
    resource_limit: int = 0
    total: int = 0

    @model_validator(mode="after")
    def _counts(self) -> "RunSummary":
        if self.counterexamples + self.no_counterexample + self.resource_limit != self.total:
            raise ValueError("summary counts must sum to the number of checks")
        return self


class RunReport(BaseModel):
    """Все проверки запуска в порядке следования в исходных файлах"""
    checks: List[CheckReport] = Field(default_factory=list)
    summary: RunSummary = Field(default_factory=RunSummary)

    @model_validator(mode="after")
    def _consistent(self) -> "RunReport":
        if self.summary.total != len(self.checks):
            raise ValueError("summary total must equal the number of checks")
        return self

    @classmethod
    def from_checks(cls, checks: List[CheckReport]) -> "RunReport":
        summary = RunSummary(
            counterexamples=sum(1 for c in checks if c.result == CheckOutcome.COUNTEREXAMPLE),
            no_counterexample=sum(1 for c in checks if c.result == CheckOutcome.NO_COUNTEREXAMPLE),
            resource_limit=sum(1 for c in checks if c.result == CheckOutcome.RESOURCE_LIMIT),
            total=len(checks),
        )
        return cls(checks=checks, summary=summary)


class Expectation(BaseModel):
    """Ожидаемый результат одной проверки корпуса"""
    file: str
    label: str
    backend: str = Backend.NAF
    mode: str = Mode.TFCE
    expected: str
    max_depth: Optional[int] = Field(default=None, ge=1)
    bound: Optional[int] = Field(default=None, ge=1)
    timeout: Optional[float] = Field(default=None, gt=0)
    slow: bool = False

    @field_validator("backend")
    @classmethod
    def _backend(cls, value: str) -> str:
        if not Backend.is_valid(value):
            raise ValueError(f"unknown backend {value}")
        return value

    @field_validator("expected")
    @classmethod
    def _expected(cls, value: str) -> str:
        if value not in CheckOutcome.get_all() + [CheckOutcome.NOT_FOUND]:
            raise ValueError(f"unknown expectation {value}")
        return value


class ExpectationSet(BaseModel):
    entries: List[Expectation] = Field(default_factory=list)


class RegressionRow(BaseModel):
    file: str
    check: str
    backend: str
    mode: str
    expected: str
    result: str
    depth: Optional[int] = None
    millis: int = 0
    passed: bool = False
