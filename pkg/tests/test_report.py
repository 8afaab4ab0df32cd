"""
Тесты отчётов: текстовый формат, JSON, коды завершения и валидация моделей
"""
import json

import pytest
from pydantic import ValidationError

from app.core.constants import Backend, CheckOutcome, ExitCode, Mode, OutputFormat
from app.models.report import CheckReport, RunConfig, RunReport, RunSummary
from app.services.check_service import CheckResult, Counterexample
from app.services.report_service import ReportService
from app.utils.formatters import format_millis, format_outcome, format_summary, format_table


def counterexample_result(label="sub_id"):
    return CheckResult(
        label=label,
        backend=Backend.NAF,
        formula="sub(M,x,var(x)) = M",
        outcome=CheckOutcome.COUNTEREXAMPLE,
        rounds=[1],
        depth=1,
        counterexample=Counterexample(bindings=[("M", "var(V)")], residual=["x # V"]),
        millis=3,
    )


def exhausted_result(label="add_id", hit_budget=True):
    return CheckResult(
        label=label,
        backend=Backend.NE,
        formula="add(z,N,M) => N = M",
        outcome=CheckOutcome.NO_COUNTEREXAMPLE,
        rounds=[1, 2, 3],
        exhausted_to=3,
        hit_budget=hit_budget,
        millis=40,
    )


def timeout_result(label="tc_sound"):
    return CheckResult(
        label=label,
        backend=Backend.NAF,
        formula="tc([],M,T) => progress(M)",
        outcome=CheckOutcome.RESOURCE_LIMIT,
        rounds=[1, 2],
        reason="timeout",
        millis=40000,
    )


class TestFormatters:
    def test_counterexample_lines(self):
        assert format_outcome(CheckOutcome.COUNTEREXAMPLE, ["N = z"]) == ["Counterexample found:", "N = z"]

    def test_exhausted(self):
        lines = format_outcome(CheckOutcome.NO_COUNTEREXAMPLE, [], exhausted_to=4, hit_budget=False)
        assert lines == ["No counterexample found up to depth 4", "any_branch_hit_budget: false"]

    def test_resource_limit(self):
        assert format_outcome(CheckOutcome.RESOURCE_LIMIT, [], reason="recursion") == [
            "Resource limit reached (recursion)",
        ]

    @pytest.mark.parametrize("millis, text", [(None, "-"), (3, "<0.01"), (1234, "1.23")])
    def test_millis(self, millis, text):
        assert format_millis(millis) == text

    def test_table_alignment(self):
        table = format_table(["a", "bb"], [["xxx", "y"]]).splitlines()
        assert table == ["a    bb", "---  --", "xxx  y"]

    def test_summary_skips_zero_counts(self):
        counts = {CheckOutcome.COUNTEREXAMPLE: 2, CheckOutcome.RESOURCE_LIMIT: 0}
        assert format_summary(counts, 2) == "2 checks (counterexample found: 2)"


class TestTextReport:
    def test_counterexample_block(self):
        text = ReportService().render([counterexample_result()])
        assert text.splitlines()[:6] == [
            "Checking for counterexamples to",
            "sub_id: sub(M,x,var(x)) = M",
            "Checking depth 1",
            "Counterexample found:",
            "M = var(V)",
            "x # V",
        ]
        assert text.endswith("1 checks (counterexample found: 1)")

    def test_hit_budget_only_in_tess(self):
        tfce = ReportService(mode=Mode.TFCE).render_text(exhausted_result())
        tess = ReportService(mode=Mode.TESS).render_text(exhausted_result())
        assert "any_branch_hit_budget" not in tfce
        assert tess.splitlines()[-1] == "any_branch_hit_budget: true"

    def test_blocks_are_separated(self):
        text = ReportService().render([counterexample_result(), exhausted_result()])
        assert "\n--------\n" in text


class TestJsonReport:
    def test_one_object_per_check(self):
        service = ReportService(OutputFormat.JSON)
        lines = service.render([counterexample_result(), timeout_result()]).splitlines()
        assert len(lines) == 2
        first = json.loads(lines[0])
        assert first == {
            "label": "sub_id",
            "backend": "naf",
            "result": "counterexample",
            "bindings": ["M = var(V)", "x # V"],
            "depth": 1,
            "millis": 3,
        }

    def test_tess_fields(self):
        service = ReportService(OutputFormat.JSON, Mode.TESS)
        record = json.loads(service.render([exhausted_result(hit_budget=False)]))
        assert record["exhausted_to"] == 3
        assert record["any_branch_hit_budget"] is False

    def test_parse_back(self):
        service = ReportService(OutputFormat.JSON)
        reports = ReportService.parse_json(service.render([counterexample_result(), exhausted_result()]))
        assert [r.result for r in reports] == ["counterexample", "none"]
        assert reports[1].bindings == []

    def test_run_report_round_trip(self):
        report = ReportService().build([counterexample_result(), exhausted_result()])
        assert ReportService.loads(ReportService.dumps(report)) == report


class TestExitCodes:
    @pytest.mark.parametrize("results, code", [
        ([], ExitCode.OK),
        ([exhausted_result()], ExitCode.OK),
        ([exhausted_result(), counterexample_result()], ExitCode.COUNTEREXAMPLE),
        ([counterexample_result(), timeout_result()], ExitCode.TIMEOUT),
    ])
    def test_precedence(self, results, code):
        assert ReportService.exit_code(ReportService().build(results)) == code


class TestModels:
    def test_unknown_result(self):
        with pytest.raises(ValidationError):
            CheckReport(label="x", backend="naf", result="maybe")

    def test_summary_must_add_up(self):
        with pytest.raises(ValidationError):
            RunSummary(counterexamples=1, total=2)

    def test_report_total_must_match(self):
        with pytest.raises(ValidationError):
            RunReport(checks=[], summary=RunSummary(counterexamples=1, total=1))

    @pytest.mark.parametrize("field, value", [
        ("backend", "smt"),
        ("mode", "forever"),
        ("format", "xml"),
        ("reorder", "random"),
        ("bound", 0),
        ("timeout", 0),
        ("jobs", 0),
    ])
    def test_run_config_rejects(self, field, value):
        with pytest.raises(ValidationError):
            RunConfig(**{field: value})

    def test_run_config_defaults(self):
        run = RunConfig(paths=["a.apl"])
        assert run.backend == Backend.NAF
        assert run.mode == Mode.TFCE
        assert run.bound is None
