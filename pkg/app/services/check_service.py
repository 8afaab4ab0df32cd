"""
Проверка директив #check: компиляция в план поиска для NAF, NE и NE⁻,
ограниченный поиск контрпримеров (TFCE/TESS), воспроизведение и извлечение
контрпримера для отчёта
"""
import asyncio
import logging
import time
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Callable, Iterator, Optional, Sequence

from ..core.base import BaseService
from ..core.constants import (
    GEN_PREFIX, NAF_CONCLUSION_FACTOR, NAF_CONCLUSION_MARGIN, NE_REPLAY_FACTOR,
    Backend, CheckOutcome, Mode, NafOutcome, Reorder,
)
from ..core.exceptions import FragmentViolation, SearchTimeout
from ..kernel.nominal import fresh_name, fresh_var, free_names
from ..models.goals import ForallStar, Goal, atoms_of, conj, free_vars, iter_goals
from ..models.program import CheckDirective, Program, Signature
from ..models.terms import ID, Abs, App, Conc, Name, Pair, Susp, Term, Var, term_vars, var_term
from ..models.types import NameType
from ..negation import gen_goal, generator_clauses, not_goal, user_generators
from ..repositories.program_repository import ProgramRepository
from ..search.engine import Answer, Deadline, Engine, Found, deepen, exhaust
from ..solver.constraints import EMPTY, ConstraintSet, consistent, extend
from ..syntax import CorePrinter, Namer
from .negation_service import NegationService

logger = logging.getLogger(__name__)


@dataclass
class CheckLimits:
    """Параметры запуска одной проверки"""
    mode: str = Mode.TFCE
    bound: Optional[int] = None
    timeout: Optional[float] = None
    reorder: str = Reorder.AS_WRITTEN

    def bound_for(self, directive: CheckDirective) -> int:
        return self.bound if self.bound is not None else directive.bound


@dataclass
class Counterexample:
    """Подстановка для переменных директивы и остаточные атомы свежести"""
    bindings: list[tuple[str, str]] = field(default_factory=list)
    residual: list[str] = field(default_factory=list)

    def lines(self) -> list[str]:
        return [f"{var} = {value}" for var, value in self.bindings] + self.residual


@dataclass
class CheckResult:
    label: str
    backend: str
    formula: str
    outcome: str
    rounds: list[int] = field(default_factory=list)
    depth: Optional[int] = None
    counterexample: Optional[Counterexample] = None
    exhausted_to: Optional[int] = None
    hit_budget: bool = False
    reason: str = ""
    millis: int = 0


# -- планы поиска --------------------------------------------------------------

class SearchPlan(ABC):
    """Поиск контрпримеров одной директивы на одном движке"""

    def __init__(self, directive: CheckDirective, engine: Engine, hypotheses: Sequence[Goal]):
        self.directive = directive
        self.engine = engine
        self.hypotheses = tuple(hypotheses)
        self.conclusion = directive.conclusion

    @abstractmethod
    def answers(self, bound: int) -> Iterator[Answer]:
        """Кандидаты в контрпримеры при бюджете `bound`"""

    @abstractmethod
    def _replay(self, constraints: ConstraintSet, bound: int) -> bool:
        """Независимая перепроверка найденного контрпримера"""

    def replay(self, answer: Answer, bound: int) -> bool:
        stats = self.engine.stats
        saved = stats.hit_budget
        try:
            return self._replay(answer.constraints, bound)
        finally:
            stats.hit_budget = saved

    def search(self, bound: int) -> Iterator[Answer]:
        for answer in self.answers(bound):
            if not consistent(answer.constraints):
                continue
            if self.replay(answer, bound):
                yield answer
            else:
                logger.warning(f"{self.directive.label}: counterexample at depth {bound} failed replay, discarded")


class NafPlan(SearchPlan):
    """Νa⃗.∃X⃗. G ∧ gen(X⃗ из FV(A)) ∧ not(A)"""

    @staticmethod
    def conclusion_budget(bound: int) -> int:
        return NAF_CONCLUSION_FACTOR * bound + NAF_CONCLUSION_MARGIN

    @property
    def signature(self) -> Signature:
        return self.engine.repository.signature

    def reachable(self, constraints: ConstraintSet) -> list[Var]:
        """Несвязанные переменные, достижимые из FV(A) через подстановку K"""
        found: dict[Var, None] = {}
        for var in free_vars(self.conclusion):
            for unbound in constraints.unbound_vars(var_term(var)):
                found.setdefault(unbound, None)
        return list(found)

    def generators(self, constraints: ConstraintSet) -> Goal:
        targets = [v for v in self.reachable(constraints) if not isinstance(v.type, NameType)]
        return conj([gen_goal(self.signature, v.type, var_term(v)) for v in targets])

    def answers(self, bound: int) -> Iterator[Answer]:
        budget = self.conclusion_budget(bound)
        for derived in self.engine.solve(conj(self.hypotheses), EMPTY, bound):
            if not consistent(derived.constraints):
                continue
            goal = self.generators(derived.constraints)
            for grounded in self.engine.solve(goal, derived.constraints, bound):
                for named in self.split_names(grounded.constraints):
                    if self.engine.naf(self.conclusion, named, budget) == NafOutcome.FAILS_FINITELY:
                        yield Answer(named, max(derived.depth, grounded.depth))

    def scope_names(self, constraints: ConstraintSet) -> list[Name]:
        names: dict[Name, None] = {n: None for n in self.directive.names}
        for var in free_vars(self.conclusion):
            value = constraints.resolve(var_term(var))
            for name in sorted(free_names(value), key=lambda n: n.stamp):
                names.setdefault(name, None)
        return list(names)

    def split_names(self, constraints: ConstraintSet) -> Iterator[ConstraintSet]:
        """Разбор случаев для несвязанных именных переменных: имя из области видимости,
        ранее выбранное свежее имя или совсем новое имя"""
        pending = [v for v in self.reachable(constraints) if isinstance(v.type, NameType)]
        yield from self._assign(pending, constraints, self.scope_names(constraints), [])

    def _assign(
        self, pending: list[Var], constraints: ConstraintSet, scope: list[Name], chosen: list[Name],
    ) -> Iterator[ConstraintSet]:
        if not pending:
            yield constraints
            return
        var, rest = pending[0], pending[1:]
        if constraints.is_bound(var):
            yield from self._assign(rest, constraints, scope, chosen)
            return
        sort = var.type.name
        for name in [n for n in scope + chosen if n.sort == sort]:
            extended, _ = extend(constraints, [(var_term(var), name)])
            if extended is not None:
                yield from self._assign(rest, extended, scope, chosen)
        # свежее имя печатается в отчёте как переменная
        name = fresh_name(sort, var.spelling)
        extended, _ = extend(constraints, [(var_term(var), name)])
        if extended is not None:
            yield from self._assign(rest, extended, scope, chosen + [name])

    def _replay(self, constraints: ConstraintSet, bound: int) -> bool:
        values = [(var_term(v), constraints.resolve(var_term(v))) for v in self.directive.variables]
        start, _ = extend(EMPTY, values)
        if start is None:
            return False
        if self.engine.first_answer(conj(self.hypotheses), start, bound) is None:
            return False
        outcome = self.engine.naf(self.conclusion, start, self.conclusion_budget(bound))
        return outcome == NafOutcome.FAILS_FINITELY


class NePlan(SearchPlan):
    """Νa⃗.∃X⃗. G ∧ not^G(A) над Δ ∪ Δ⁻"""

    def __init__(self, directive: CheckDirective, engine: Engine, hypotheses: Sequence[Goal], negated: Goal):
        super().__init__(directive, engine, hypotheses)
        self.negated = negated

    @property
    def goal(self) -> Goal:
        return conj(list(self.hypotheses) + [self.negated])

    def answers(self, bound: int) -> Iterator[Answer]:
        yield from self.engine.solve(self.goal, EMPTY, bound)

    def _replay(self, constraints: ConstraintSet, bound: int) -> bool:
        return self.engine.first_answer(self.conclusion, constraints, NE_REPLAY_FACTOR * bound) is None


# -- сервис --------------------------------------------------------------------

class CheckService(BaseService):
    """Сервис проверки директив одной программы"""

    def __init__(self, program: Program, negation: Optional[NegationService] = None):
        super().__init__(program)
        self.negation = negation or NegationService(program)
        self._naf_repository: Optional[ProgramRepository] = None

    def prepare(self, backends: Sequence[str]) -> None:
        """Построить общие базы клауз до запуска проверок в потоках"""
        for backend in set(backends):
            if backend == Backend.NAF:
                self.naf_repository()
            else:
                self.negation.repository()

    def naf_repository(self) -> ProgramRepository:
        """Δ и генераторы gen_δ (пользовательские генераторы имеют приоритет)"""
        if self._naf_repository is None:
            _, clauses = generator_clauses(self.program.signature, skip=user_generators(self.program))
            self._naf_repository = ProgramRepository(self.program).with_layer(clauses)
        return self._naf_repository

    def order_hypotheses(
        self, hypotheses: Sequence[Goal], repository: ProgramRepository, reorder: str,
    ) -> list[Goal]:
        """Порядок подцелей: как записано или сначала наиболее ограниченные"""
        if reorder != Reorder.MOST_CONSTRAINED:
            return list(hypotheses)

        def weight(goal: Goal) -> int:
            counts = [
                0 if a.pred.startswith(GEN_PREFIX) else repository.count(a.pred)
                for a in atoms_of(goal)
            ]
            return min(counts) if counts else 0

        return sorted(hypotheses, key=weight)

    # -- компиляция ---------------------------------------------------------

    def compile_naf(
        self, directive: CheckDirective, deadline: Optional[Deadline] = None, reorder: str = Reorder.AS_WRITTEN,
    ) -> NafPlan:
        if any(isinstance(g, ForallStar) for g in iter_goals(directive.conclusion)):
            raise FragmentViolation(
                f"{directive.label}: forall* in the conclusion is not supported by negation as failure",
                directive.pos,
            )
        for clause in self.program.clauses:
            if any(isinstance(g, ForallStar) for g in iter_goals(clause.body)):
                raise FragmentViolation(
                    f"forall* in clause {clause.index} of {clause.pred} is not supported by negation as failure",
                    clause.pos,
                )
        repository = self.naf_repository()
        engine = Engine(repository, deadline or Deadline())
        return NafPlan(directive, engine, self.order_hypotheses(directive.hypotheses, repository, reorder))

    def compile_ne(
        self,
        directive: CheckDirective,
        deadline: Optional[Deadline] = None,
        reorder: str = Reorder.AS_WRITTEN,
        generic_only: bool = False,
    ) -> NePlan:
        repository = self.negation.repository()
        try:
            negated = not_goal(directive.conclusion, repository.signature)
        except FragmentViolation as e:
            raise FragmentViolation(f"{directive.label}: {e.message}", directive.pos) from e
        engine = Engine(repository, deadline or Deadline(), generic_only=generic_only)
        hypotheses = self.order_hypotheses(directive.hypotheses, repository, reorder)
        return NePlan(directive, engine, hypotheses, negated)

    def compile(self, directive: CheckDirective, backend: str, limits: CheckLimits) -> SearchPlan:
        deadline = Deadline(limits.timeout)
        if backend == Backend.NAF:
            return self.compile_naf(directive, deadline, limits.reorder)
        if backend == Backend.NE:
            return self.compile_ne(directive, deadline, limits.reorder)
        if backend == Backend.NE_MINUS:
            return self.compile_ne(directive, deadline, limits.reorder, generic_only=True)
        raise ValueError(f"unknown backend {backend}")

    # -- запуск -------------------------------------------------------------

    def run_check(self, directive: CheckDirective, backend: str, limits: Optional[CheckLimits] = None) -> CheckResult:
        """Итеративное углубление 1..n (TFCE) или исчерпание всех раундов (TESS)"""
        limits = limits or CheckLimits()
        started = time.perf_counter()
        bound = limits.bound_for(directive)
        result = CheckResult(directive.label, backend, directive.text, CheckOutcome.NO_COUNTEREXAMPLE)
        logger.info(
            f"Checking {directive.label} with {Backend.get_display_name(backend)} "
            f"({limits.mode}) up to depth {bound}"
        )
        plan = self.compile(directive, backend, limits)
        driver = exhaust if limits.mode == Mode.TESS else deepen
        try:
            outcome = driver(plan.search, bound, plan.engine.stats, result.rounds.append)
        except SearchTimeout as e:
            result.outcome = CheckOutcome.RESOURCE_LIMIT
            result.reason = "timeout"
            logger.warning(f"{directive.label}: {e.message}")
        except RecursionError:
            result.outcome = CheckOutcome.RESOURCE_LIMIT
            result.reason = "recursion"
            logger.warning(f"{directive.label}: recursion limit exceeded at depth {result.rounds[-1] if result.rounds else 0}")
        else:
            if isinstance(outcome, Found):
                result.outcome = CheckOutcome.COUNTEREXAMPLE
                result.depth = outcome.bound
                result.counterexample = self.extract_counterexample(
                    outcome.answer, directive, plan.engine.repository.signature,
                )
            else:
                result.exhausted_to = outcome.bound
                result.hit_budget = outcome.hit_budget
        result.millis = int((time.perf_counter() - started) * 1000)
        logger.info(
            f"Finished {directive.label} with {Backend.get_display_name(backend)}: "
            f"{CheckOutcome.get_display_name(result.outcome)} in {result.millis} ms"
        )
        return result

    # -- отчёт --------------------------------------------------------------

    def extract_counterexample(
        self, answer: Answer, directive: CheckDirective, signature: Optional[Signature] = None,
    ) -> Counterexample:
        """Ограничить решение переменными директивы. Свободные имена, не введённые Ν
        и не принадлежащие директиве, печатаются как переменные с атомами a # V"""
        constraints = answer.constraints
        namer = Namer()
        for name in directive.names:
            namer.name(name)
        for var in directive.variables:
            namer.var(var)
        printer = CorePrinter(signature or self.program.signature, namer)
        presenter = _Presenter(set(directive.names), set(directive.variables), namer)

        result = Counterexample()
        for var in directive.variables:
            if var.spelling == "_":
                continue
            value = presenter.present(constraints.resolve(var_term(var)))
            if isinstance(value, Susp) and value.var == var and value.perm.is_identity():
                continue
            result.bindings.append((namer.var(var), printer.term(value)))
        result.bindings.sort(key=lambda b: b[0])

        residual: dict[str, None] = {}
        for name, var in presenter.placeholders.items():
            for a in directive.names:
                if a.sort == name.sort:
                    residual.setdefault(f"{namer.name(a)} # {namer.var(var)}", None)
        for var in presenter.seen_vars:
            for a in sorted(constraints.fresh_for(var), key=lambda n: n.stamp):
                if a.nu and a not in presenter.directive_names:
                    continue
                residual.setdefault(f"{printer.term(a)} # {namer.var(var)}", None)
        result.residual = sorted(residual)
        return result


class _Presenter:
    """Подготовка терма к печати: несвязанные переменные получают имена V, V1, ...,
    свежие имена из разбора случаев заменяются переменными"""

    def __init__(self, directive_names: set[Name], directive_vars: set[Var], namer: Namer):
        self.directive_names = directive_names
        self.directive_vars = directive_vars
        self.namer = namer
        self.placeholders: dict[Name, Var] = {}
        self.seen_vars: dict[Var, None] = {}

    def present(self, term: Term, bound: frozenset[Name] = frozenset()) -> Term:
        if isinstance(term, Name):
            if term in bound or term.nu or term in self.directive_names:
                return term
            if term not in self.placeholders:
                var = fresh_var(NameType(term.sort), "V")
                self.placeholders[term] = var
                self.namer.rename(var, "V")
            return Susp(ID, self.placeholders[term])
        if isinstance(term, Susp):
            for var in term_vars(term):
                if var not in self.directive_vars:
                    self.namer.rename(var, "V")
                self.seen_vars.setdefault(var, None)
            return term
        if isinstance(term, Pair):
            return Pair(self.present(term.left, bound), self.present(term.right, bound))
        if isinstance(term, App):
            return App(term.fn, self.present(term.arg, bound))
        if isinstance(term, Abs):
            return Abs(term.name, self.present(term.body, bound | {term.name}))
        if isinstance(term, Conc):
            return Conc(self.present(term.term, bound), term.name, term.type)
        return term


async def run_pool(tasks: Sequence[Callable[[], CheckResult]], jobs: int = 1) -> list[CheckResult]:
    """Выполнить проверки в потоках, не более `jobs` одновременно; порядок результатов
    совпадает с порядком задач"""
    semaphore = asyncio.Semaphore(max(1, jobs))

    async def run(task: Callable[[], CheckResult]) -> CheckResult:
        async with semaphore:
            return await asyncio.to_thread(task)

    return list(await asyncio.gather(*(run(t) for t in tasks)))
