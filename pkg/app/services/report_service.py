"""
Сервис отчётов: текстовый формат сессии проверки и JSON по одной записи на проверку
"""
import logging
from typing import List

from ..core.constants import CheckOutcome, ExitCode, Mode, OutputFormat
from ..models.report import CheckReport, RunReport
from ..utils.formatters import format_check_header, format_outcome, format_rounds, format_summary
from .check_service import CheckResult

logger = logging.getLogger(__name__)

# поля JSON-записи о проверке
JSON_FIELDS = ("label", "backend", "result", "bindings", "depth", "millis")
SEPARATOR = "--------"


class ReportService:
    """Преобразование результатов проверок в отчёты"""

    def __init__(self, output_format: str = OutputFormat.TEXT, mode: str = Mode.TFCE):
        self.output_format = output_format
        self.mode = mode

    def to_report(self, result: CheckResult) -> CheckReport:
        report = CheckReport(
            label=result.label,
            backend=result.backend,
            result=result.outcome,
            bindings=result.counterexample.lines() if result.counterexample else [],
            depth=result.depth,
            millis=result.millis,
        )
        if self.mode == Mode.TESS and result.outcome == CheckOutcome.NO_COUNTEREXAMPLE:
            report.exhausted_to = result.exhausted_to
            report.any_branch_hit_budget = result.hit_budget
        return report

    def build(self, results: List[CheckResult]) -> RunReport:
        return RunReport.from_checks([self.to_report(r) for r in results])

    def render_text(self, result: CheckResult) -> str:
        """Блок отчёта одной проверки"""
        lines = format_check_header(result.label, result.formula)
        if result.rounds:
            lines.append(format_rounds(result.rounds))
        hit_budget = result.hit_budget if self.mode == Mode.TESS else None
        lines += format_outcome(
            result.outcome,
            result.counterexample.lines() if result.counterexample else [],
            exhausted_to=result.exhausted_to,
            hit_budget=hit_budget,
            reason=result.reason,
        )
        return "\n".join(lines)

    def render_json(self, result: CheckResult) -> str:
        report = self.to_report(result)
        fields = set(JSON_FIELDS)
        if report.exhausted_to is not None:
            fields |= {"exhausted_to", "any_branch_hit_budget"}
        return report.model_dump_json(include=fields)

    def render(self, results: List[CheckResult]) -> str:
        if self.output_format == OutputFormat.JSON:
            return "\n".join(self.render_json(r) for r in results)
        blocks = [self.render_text(r) for r in results]
        report = self.build(results)
        counts = {
            CheckOutcome.COUNTEREXAMPLE: report.summary.counterexamples,
            CheckOutcome.NO_COUNTEREXAMPLE: report.summary.no_counterexample,
            CheckOutcome.RESOURCE_LIMIT: report.summary.resource_limit,
        }
        return f"\n{SEPARATOR}\n".join(blocks) + "\n\n" + format_summary(counts, report.summary.total)

    @staticmethod
    def parse_json(text: str) -> List[CheckReport]:
        """Прочитать вывод в формате JSON (по одному объекту на строку)"""
        return [CheckReport.model_validate_json(line) for line in text.splitlines() if line.strip()]

    @staticmethod
    def exit_code(report: RunReport) -> int:
        """Код завершения зависит только от агрегированных результатов"""
        if report.summary.resource_limit:
            return ExitCode.TIMEOUT
        if report.summary.counterexamples:
            return ExitCode.COUNTEREXAMPLE
        return ExitCode.OK

    @staticmethod
    def dumps(report: RunReport) -> str:
        return report.model_dump_json()

    @staticmethod
    def loads(text: str) -> RunReport:
        return RunReport.model_validate_json(text)

