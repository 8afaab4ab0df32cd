"""
Тесты командной строки: разбор аргументов, коды завершения и форматы вывода
"""
import json

import pytest

from app.config import Config
from app.core.constants import ExitCode
from app.handlers.cli import main
from tests.conftest import NAT_SPEC


@pytest.fixture
def nat_file(tmp_path):
    path = tmp_path / "nat.apl"
    path.write_text(NAT_SPEC, encoding="utf-8")
    return path


def run(argv):
    return main([str(a) for a in argv], config=Config())


class TestArguments:
    def test_help(self, capsys):
        assert run(["--help"]) == ExitCode.OK
        assert "nomcheck" in capsys.readouterr().out

    def test_regression_help(self, capsys):
        assert run(["regression", "--help"]) == ExitCode.OK
        assert "corpus" in capsys.readouterr().out

    def test_no_files(self):
        assert run([]) == ExitCode.USAGE

    def test_unknown_backend(self, nat_file):
        assert run([nat_file, "--backend", "smt"]) == ExitCode.USAGE

    def test_invalid_jobs(self, nat_file, capsys):
        assert run([nat_file, "--jobs", "0"]) == ExitCode.USAGE
        assert "invalid jobs" in capsys.readouterr().err

    def test_missing_file(self, tmp_path, capsys):
        assert run([tmp_path / "absent.apl"]) == ExitCode.USAGE
        assert "file not found" in capsys.readouterr().err

    def test_parse_error(self, tmp_path, capsys):
        path = tmp_path / "broken.apl"
        path.write_text("nat : type.\nz : nat\n", encoding="utf-8")
        assert run([path]) == ExitCode.USAGE
        assert "expected" in capsys.readouterr().err


class TestChecks:
    def test_list(self, nat_file, capsys):
        assert run([nat_file, "--list"]) == ExitCode.OK
        assert capsys.readouterr().out.splitlines() == [
            f"{nat_file}: add_id",
            f"{nat_file}: even_succ",
        ]

    def test_counterexample_exit_code(self, nat_file, capsys):
        assert run([nat_file]) == ExitCode.COUNTEREXAMPLE
        out = capsys.readouterr().out
        assert "even_succ: even(N) => even(s(N))" in out
        assert "Counterexample found:\nN = z" in out
        assert "No counterexample found up to depth 4" in out

    def test_label_filter(self, nat_file, capsys):
        assert run([nat_file, "--label", "add_*", "--backend", "ne"]) == ExitCode.OK
        assert "even_succ" not in capsys.readouterr().out

    def test_no_matching_label(self, nat_file, capsys):
        assert run([nat_file, "--label", "missing"]) == ExitCode.OK
        assert capsys.readouterr().out == ""

    def test_json(self, nat_file, capsys):
        assert run([nat_file, "--format", "json", "--mode", "tess"]) == ExitCode.COUNTEREXAMPLE
        records = [json.loads(line) for line in capsys.readouterr().out.splitlines()]
        assert [r["label"] for r in records] == ["add_id", "even_succ"]
        assert records[0]["exhausted_to"] == 4
        assert records[1]["bindings"] == ["N = z"]

    def test_bound_override(self, nat_file, capsys):
        run([nat_file, "--label", "add_id", "--bound", "2"])
        assert "up to depth 2" in capsys.readouterr().out

    def test_dump_and_load_negation(self, nat_file, tmp_path, capsys):
        dump = tmp_path / "nat_neg.apl"
        assert run([nat_file, "--backend", "ne", "--dump-negation", dump]) == ExitCode.COUNTEREXAMPLE
        text = dump.read_text(encoding="utf-8")
        assert "pred not_even(nat)." in text
        assert "neq_nat(" in text
        capsys.readouterr()
        assert run([nat_file, "--backend", "ne", "--load-negation", dump]) == ExitCode.COUNTEREXAMPLE
        assert "N = z" in capsys.readouterr().out

    def test_dump_needs_single_file(self, nat_file, tmp_path):
        other = tmp_path / "other.apl"
        other.write_text(NAT_SPEC, encoding="utf-8")
        argv = [nat_file, other, "--dump-negation", tmp_path / "out.apl"]
        assert run(argv) == ExitCode.USAGE

    def test_inline_negation(self, nat_file):
        assert run([nat_file, "--backend", "ne", "--inline"]) == ExitCode.COUNTEREXAMPLE


class TestRegressionCommand:
    def test_missing_expectations(self, tmp_path, capsys):
        assert run(["regression", tmp_path]) == ExitCode.USAGE
        assert "expectations.json" in capsys.readouterr().err
