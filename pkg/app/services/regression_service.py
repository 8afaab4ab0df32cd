"""
Регрессионный прогон корпуса: ожидания из expectations.json, таблица результатов
и выгрузка в Excel
"""
import logging
from pathlib import Path
from typing import Dict, List, Optional

import aiofiles
import pandas as pd
from pydantic import ValidationError

from ..core.constants import CheckOutcome
from ..core.exceptions import CorpusError
from ..models.program import CheckDirective, Program
from ..models.report import Expectation, ExpectationSet, RegressionRow
from ..utils.formatters import format_backend, format_millis, format_table
from .check_service import CheckLimits, CheckResult, CheckService, run_pool
from .loader_service import LoaderService
from .negation_service import NegationService

logger = logging.getLogger(__name__)

EXPECTATIONS_FILE = "expectations.json"

TABLE_COLUMNS = ["check", "backend", "expected", "result", "depth", "millis"]


class RegressionService:
    """Сервис регрессионного тестирования спецификаций"""

    def __init__(
        self,
        corpus_dir: str,
        jobs: int = 1,
        timeout: Optional[float] = None,
        include_slow: bool = True,
        inline: bool = False,
    ):
        self.corpus_dir = Path(corpus_dir)
        self.jobs = jobs
        self.timeout = timeout
        self.include_slow = include_slow
        self.inline = inline
        self.loader = LoaderService()

    async def load_expectations(self) -> ExpectationSet:
        path = self.corpus_dir / EXPECTATIONS_FILE
        if not path.is_file():
            raise CorpusError(f"missing {path}")
        async with aiofiles.open(path, "r", encoding="utf-8") as f:
            text = await f.read()
        try:
            expectations = ExpectationSet.model_validate_json(text)
        except ValidationError as e:
            raise CorpusError(f"malformed {path}: {e.error_count()} errors") from e
        logger.info(f"Loaded {len(expectations.entries)} expectations from {path}")
        return expectations

    async def _load_programs(self, entries: List[Expectation]) -> Dict[str, CheckService]:
        services: Dict[str, CheckService] = {}
        for entry in entries:
            if entry.file in services:
                continue
            path = self.corpus_dir / entry.file
            if not path.is_file():
                raise CorpusError(f"missing corpus file {path}")
            program = await self.loader.load(str(path))
            services[entry.file] = CheckService(program, NegationService(program, inline=self.inline))
        return services

    @staticmethod
    def _directive(program: Program, entry: Expectation) -> CheckDirective:
        for directive in program.checks:
            if directive.label == entry.label:
                return directive
        raise CorpusError(f"{entry.file} has no check labelled {entry.label!r}")

    @staticmethod
    def passed(entry: Expectation, result: CheckResult) -> bool:
        """Совпадение итога с ожиданием; для контрпримеров ещё и глубина не больше max_depth"""
        if entry.expected == CheckOutcome.NOT_FOUND:
            return result.outcome != CheckOutcome.COUNTEREXAMPLE
        if result.outcome != entry.expected:
            return False
        if entry.max_depth is not None and result.depth is not None:
            return result.depth <= entry.max_depth
        return True

    async def run(self, labels: Optional[List[str]] = None) -> List[RegressionRow]:
        expectations = await self.load_expectations()
        entries = [
            e for e in expectations.entries
            if (self.include_slow or not e.slow) and (labels is None or e.label in labels)
        ]
        services = await self._load_programs(entries)
        tasks = []
        for entry in entries:
            service = services[entry.file]
            service.prepare([entry.backend])
            directive = self._directive(service.program, entry)
            limits = CheckLimits(
                mode=entry.mode,
                bound=entry.bound,
                timeout=entry.timeout or self.timeout,
            )
            tasks.append(
                lambda s=service, d=directive, b=entry.backend, lim=limits: s.run_check(d, b, lim)
            )
        results = await run_pool(tasks, self.jobs)

        rows = []
        for entry, result in zip(entries, results):
            row = RegressionRow(
                file=entry.file,
                check=entry.label,
                backend=entry.backend,
                mode=entry.mode,
                expected=entry.expected,
                result=result.outcome,
                depth=result.depth if result.depth is not None else result.exhausted_to,
                millis=result.millis,
                passed=self.passed(entry, result),
            )
            if not row.passed:
                logger.error(f"Regression failed: {entry.file} {entry.label} ({entry.backend}): {result.outcome}")
            rows.append(row)
        logger.info(f"Regression finished: {sum(r.passed for r in rows)}/{len(rows)} passed")
        return rows

    @staticmethod
    def table(rows: List[RegressionRow]) -> str:
        """Таблица по файлам корпуса: проверка, бэкенд, ожидание, итог, глубина, время"""
        blocks = []
        for file in dict.fromkeys(r.file for r in rows):
            body = [
                [
                    r.check,
                    format_backend(r.backend),
                    CheckOutcome.get_display_name(r.expected),
                    CheckOutcome.get_display_name(r.result) + ("" if r.passed else "  FAIL"),
                    "-" if r.depth is None else str(r.depth),
                    format_millis(r.millis),
                ]
                for r in rows if r.file == file
            ]
            blocks.append(f"{file}\n" + format_table(TABLE_COLUMNS, body))
        passed = sum(r.passed for r in rows)
        return "\n\n".join(blocks) + f"\n\n{passed}/{len(rows)} expectations met"

    @staticmethod
    def export_excel(rows: List[RegressionRow], path: str) -> None:
        """Один лист на файл корпуса"""
        from openpyxl.styles import Font, PatternFill

        header_fill = PatternFill(start_color="366092", end_color="366092", fill_type="solid")
        fail_fill = PatternFill(start_color="F8D7DA", end_color="F8D7DA", fill_type="solid")
        with pd.ExcelWriter(path, engine="openpyxl") as writer:
            for file in dict.fromkeys(r.file for r in rows):
                data = [r.model_dump(exclude={"file"}) for r in rows if r.file == file]
                df = pd.DataFrame(data)
                sheet = Path(file).stem[:31]
                df.to_excel(writer, index=False, sheet_name=sheet)
                worksheet = writer.sheets[sheet]
                for col in range(1, worksheet.max_column + 1):
                    cell = worksheet.cell(row=1, column=col)
                    cell.font = Font(bold=True, color="FFFFFF")
                    cell.fill = header_fill
                for i, record in enumerate(data, start=2):
                    if not record["passed"]:
                        for col in range(1, worksheet.max_column + 1):
                            worksheet.cell(row=i, column=col).fill = fail_fill
                for column in worksheet.columns:
                    width = max(len(str(cell.value or "")) for cell in column)
                    worksheet.column_dimensions[column[0].column_letter].width = min(width + 2, 60)
        logger.info(f"Regression table exported to {path}")
