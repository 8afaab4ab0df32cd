"""
Тесты регрессионного прогона корпуса
"""
import json

import pandas as pd
import pytest

from app.core.constants import Backend, CheckOutcome, Mode
from app.core.exceptions import CorpusError
from app.models.report import Expectation, RegressionRow
from app.services.check_service import CheckResult
from app.services.regression_service import RegressionService
from tests.conftest import NAT_SPEC


def expectation(**overrides):
    data = {"file": "nat.apl", "label": "even_succ", "expected": CheckOutcome.COUNTEREXAMPLE}
    data.update(overrides)
    return Expectation(**data)


def result(outcome, depth=None):
    return CheckResult("even_succ", Backend.NAF, "", outcome, depth=depth)


def row(check, passed=True, file="nat.apl"):
    return RegressionRow(
        file=file, check=check, backend=Backend.NAF, mode=Mode.TFCE,
        expected=CheckOutcome.COUNTEREXAMPLE, result=CheckOutcome.COUNTEREXAMPLE,
        depth=1, millis=12, passed=passed,
    )


@pytest.fixture
def nat_corpus(tmp_path):
    (tmp_path / "nat.apl").write_text(NAT_SPEC, encoding="utf-8")
    entries = [
        {"file": "nat.apl", "label": "add_id", "expected": "none"},
        {"file": "nat.apl", "label": "add_id", "backend": "ne", "mode": "tess", "expected": "none"},
        {"file": "nat.apl", "label": "even_succ", "expected": "counterexample", "max_depth": 1},
        {"file": "nat.apl", "label": "even_succ", "backend": "ne", "expected": "counterexample",
         "max_depth": 2, "slow": True},
    ]
    (tmp_path / "expectations.json").write_text(json.dumps({"entries": entries}), encoding="utf-8")
    return tmp_path


class TestPassed:
    def test_counterexample_within_depth(self):
        entry = expectation(max_depth=3)
        assert RegressionService.passed(entry, result(CheckOutcome.COUNTEREXAMPLE, depth=3))
        assert not RegressionService.passed(entry, result(CheckOutcome.COUNTEREXAMPLE, depth=4))

    def test_outcome_mismatch(self):
        assert not RegressionService.passed(expectation(), result(CheckOutcome.NO_COUNTEREXAMPLE))

    def test_not_found_accepts_timeouts(self):
        entry = expectation(expected=CheckOutcome.NOT_FOUND)
        assert RegressionService.passed(entry, result(CheckOutcome.RESOURCE_LIMIT))
        assert RegressionService.passed(entry, result(CheckOutcome.NO_COUNTEREXAMPLE))
        assert not RegressionService.passed(entry, result(CheckOutcome.COUNTEREXAMPLE, depth=1))

    def test_unknown_expectation(self):
        with pytest.raises(ValueError):
            expectation(expected="maybe")


class TestTable:
    def test_grouped_by_file(self):
        text = RegressionService.table([row("a"), row("b", passed=False), row("c", file="other.apl")])
        lines = text.splitlines()
        assert lines[0] == "nat.apl"
        assert lines[1].split() == ["check", "backend", "expected", "result", "depth", "millis"]
        assert any(line.startswith("b ") and "FAIL" in line for line in lines)
        assert "other.apl" in lines
        assert lines[-1] == "2/3 expectations met"

    def test_excel_export(self, tmp_path):
        path = tmp_path / "regression.xlsx"
        RegressionService.export_excel([row("a"), row("b", passed=False), row("c", file="other.apl")], str(path))
        sheets = pd.read_excel(path, sheet_name=None)
        assert list(sheets) == ["nat", "other"]
        assert list(sheets["nat"]["check"]) == ["a", "b"]
        assert "file" not in sheets["nat"].columns


class TestRun:
    @pytest.mark.asyncio
    async def test_small_corpus(self, nat_corpus):
        rows = await RegressionService(str(nat_corpus)).run()
        assert len(rows) == 4
        assert all(r.passed for r in rows)
        assert rows[2].depth == 1
        assert rows[0].depth == 4

    @pytest.mark.asyncio
    async def test_skip_slow_and_labels(self, nat_corpus):
        service = RegressionService(str(nat_corpus), include_slow=False)
        rows = await service.run(labels=["even_succ"])
        assert [(r.check, r.backend) for r in rows] == [("even_succ", Backend.NAF)]

    @pytest.mark.asyncio
    async def test_missing_expectations(self, tmp_path):
        with pytest.raises(CorpusError, match="missing"):
            await RegressionService(str(tmp_path)).run()

    @pytest.mark.asyncio
    async def test_malformed_expectations(self, tmp_path):
        (tmp_path / "expectations.json").write_text('{"entries": [{"file": "x.apl"}]}', encoding="utf-8")
        with pytest.raises(CorpusError, match="malformed"):
            await RegressionService(str(tmp_path)).run()

    @pytest.mark.asyncio
    async def test_unknown_label(self, nat_corpus):
        entries = [{"file": "nat.apl", "label": "odd", "expected": "none"}]
        (nat_corpus / "expectations.json").write_text(json.dumps({"entries": entries}), encoding="utf-8")
        with pytest.raises(CorpusError, match="odd"):
            await RegressionService(str(nat_corpus)).run()

    @pytest.mark.asyncio
    async def test_missing_corpus_file(self, tmp_path):
        entries = [{"file": "gone.apl", "label": "x", "expected": "none"}]
        (tmp_path / "expectations.json").write_text(json.dumps({"entries": entries}), encoding="utf-8")
        with pytest.raises(CorpusError, match="gone.apl"):
            await RegressionService(str(tmp_path)).run()

    @pytest.mark.asyncio
    async def test_expectations_file_is_valid(self, corpus_dir):
        expectations = await RegressionService(str(corpus_dir)).load_expectations()
        files = {e.file for e in expectations.entries}
        assert files == {p.name for p in corpus_dir.glob("*.apl")}
        assert any(not e.slow for e in expectations.entries)


@pytest.mark.slow
class TestCorpus:
    @pytest.mark.asyncio
    async def test_fast_entries(self, corpus_dir):
        rows = await RegressionService(str(corpus_dir), jobs=2, include_slow=False).run()
        failed = [(r.file, r.check, r.backend, r.result) for r in rows if not r.passed]
        assert failed == []
