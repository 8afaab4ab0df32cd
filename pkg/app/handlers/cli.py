"""
Командная строка: проверка файлов спецификаций и регрессионный прогон корпуса
"""
import argparse
import asyncio
import fnmatch
import logging
import sys
from typing import List, Optional, TextIO

from pydantic import ValidationError

from ..config import Config
from ..core.constants import Backend, ExitCode, Mode, OutputFormat, Reorder
from ..core.exceptions import NomcheckError
from ..models.report import RunConfig
from ..services.check_service import CheckLimits, CheckService, run_pool
from ..services.loader_service import LoaderService
from ..services.negation_service import NegationService
from ..services.regression_service import RegressionService
from ..services.report_service import ReportService

logger = logging.getLogger(__name__)

PROG = "nomcheck"
DEFAULT_CORPUS = "corpus"


def build_check_parser(config: Config) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog=PROG,
        description="Bounded counterexample search for nominal logic specifications",
        epilog=f"Run '{PROG} regression --help' for the corpus regression suite.",
    )
    parser.add_argument("paths", nargs="+", metavar="FILE", help="specification files")
    parser.add_argument("--backend", choices=Backend.get_all(), default=config.NOMCHECK_BACKEND)
    parser.add_argument("--bound", type=int, help="override the depth bound of every check")
    parser.add_argument("--timeout", type=float, default=config.NOMCHECK_TIMEOUT, help="seconds per check")
    parser.add_argument("--mode", choices=Mode.get_all(), default=Mode.TFCE)
    parser.add_argument("--format", choices=OutputFormat.get_all(), default=OutputFormat.TEXT)
    parser.add_argument("--label", help="only run checks whose label matches this glob")
    parser.add_argument("--dump-negation", metavar="PATH", help="write the negated program to PATH")
    parser.add_argument("--load-negation", metavar="PATH", help="use a previously dumped negated program")
    parser.add_argument("--inline", action="store_true", help="inline per-clause negations")
    parser.add_argument("--reorder", choices=Reorder.get_all(), default=Reorder.AS_WRITTEN)
    parser.add_argument("--jobs", type=int, default=config.NOMCHECK_JOBS)
    parser.add_argument("--list", action="store_true", dest="list_only", help="list check labels and exit")
    return parser


def build_regression_parser(config: Config) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog=f"{PROG} regression", description="Run the corpus regression suite")
    parser.add_argument("corpus", nargs="?", default=DEFAULT_CORPUS, help="corpus directory")
    parser.add_argument("--jobs", type=int, default=config.NOMCHECK_JOBS)
    parser.add_argument("--timeout", type=float, default=config.NOMCHECK_TIMEOUT)
    parser.add_argument("--label", action="append", help="restrict to these check labels")
    parser.add_argument("--skip-slow", action="store_true", help="skip entries marked slow")
    parser.add_argument("--inline", action="store_true")
    parser.add_argument("--excel", metavar="PATH", help="also export the table to an Excel workbook")
    return parser


def run_config_from_args(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        paths=args.paths,
        label=args.label,
        backend=args.backend,
        bound=args.bound,
        timeout=args.timeout,
        mode=args.mode,
        format=args.format,
        dump_negation=args.dump_negation,
        load_negation=args.load_negation,
        inline=args.inline,
        reorder=args.reorder,
        jobs=args.jobs,
        list_only=args.list_only,
    )


async def run_checks(run: RunConfig, out: Optional[TextIO] = None) -> int:
    """Загрузить файлы, выполнить отобранные проверки и напечатать отчёт"""
    out = out or sys.stdout
    loader = LoaderService()
    programs = [await loader.load(path) for path in run.paths]

    if run.list_only:
        for program in programs:
            for directive in program.checks:
                out.write(f"{program.path}: {directive.label}\n")
        return ExitCode.OK

    if (run.dump_negation or run.load_negation) and len(programs) > 1:
        raise NomcheckError("--dump-negation and --load-negation take a single input file")

    limits = CheckLimits(mode=run.mode, bound=run.bound, timeout=run.timeout, reorder=run.reorder)
    tasks = []
    for program in programs:
        negation = NegationService(program, inline=run.inline)
        if run.load_negation:
            await negation.load(run.load_negation)
        if run.dump_negation:
            await negation.dump(run.dump_negation)
        service = CheckService(program, negation)
        selected = [
            d for d in program.checks
            if run.label is None or fnmatch.fnmatchcase(d.label, run.label)
        ]
        if selected:
            service.prepare([run.backend])
        for directive in selected:
            tasks.append(lambda s=service, d=directive: s.run_check(d, run.backend, limits))

    results = await run_pool(tasks, run.jobs)
    reports = ReportService(run.format, run.mode)
    if results:
        out.write(reports.render(results) + "\n")
    return ReportService.exit_code(reports.build(results))


async def run_regression(args: argparse.Namespace, out: Optional[TextIO] = None) -> int:
    out = out or sys.stdout
    service = RegressionService(
        args.corpus,
        jobs=max(1, args.jobs),
        timeout=args.timeout,
        include_slow=not args.skip_slow,
        inline=args.inline,
    )
    rows = await service.run(args.label)
    out.write(service.table(rows) + "\n")
    if args.excel:
        service.export_excel(rows, args.excel)
    return ExitCode.OK if all(r.passed for r in rows) else ExitCode.COUNTEREXAMPLE


def main(argv: Optional[List[str]] = None, config: Optional[Config] = None) -> int:
    """Точка входа CLI; возвращает код завершения"""
    argv = list(sys.argv[1:] if argv is None else argv)
    config = config or Config()
    regression = bool(argv) and argv[0] == "regression"
    parser = build_regression_parser(config) if regression else build_check_parser(config)
    try:
        args = parser.parse_args(argv[1:] if regression else argv)
    except SystemExit as e:
        # argparse завершает работу сам: 0 для --help, 2 для ошибок
        return int(e.code or 0)

    try:
        if regression:
            return asyncio.run(run_regression(args))
        run = run_config_from_args(args)
        return asyncio.run(run_checks(run))
    except ValidationError as e:
        for error in e.errors():
            field = ".".join(str(p) for p in error["loc"])
            print(f"{PROG}: invalid {field}: {error['msg']}", file=sys.stderr)
        return ExitCode.USAGE
    except NomcheckError as e:
        logger.error(f"{type(e).__name__}: {e}")
        print(f"{PROG}: {e}", file=sys.stderr)
        return ExitCode.USAGE
    except OSError as e:
        print(f"{PROG}: {e}", file=sys.stderr)
        return ExitCode.USAGE
    except Exception as e:
        logger.error(f"Unexpected error: {type(e).__name__}: {e}")
        raise
