"""
Поиск доказательств с бэкчейнингом и ограничением глубины.

Бюджет ограничивает глубину резолюций вдоль каждой ветви: шаг back решает тело
клаузы с бюджетом на единицу меньше, все конъюнкты тела получают один и тот же
остаток. Раскрытие ∀* по конструкторам типа данных стоит одну единицу.
"""
from __future__ import annotations

import logging
import time
from dataclasses import dataclass
from typing import Callable, Iterator, Optional, Union

from ..core.constants import NafOutcome
from ..core.exceptions import SearchTimeout
from ..kernel.nominal import fresh_name, fresh_var
from ..kernel.substitution import rename_goal, subst_goal, subst_term
from ..models.goals import (
    Atom, Bottom, Conj, Disj, Eq, Exists, ForallStar, Fresh, Goal, New, Top,
)
from ..models.program import Clause
from ..models.terms import UNIT_TERM, Abs, App, Pair, Term, Var, tuple_term, var_term
from ..models.types import AbsType, BaseType, NameType, ProdType, UnitType
from ..repositories.program_repository import ProgramRepository
from ..solver.constraints import EMPTY, ConstraintSet, consistent, expand_concretions, extend

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class Answer:
    """Завершённый вывод: итоговый K и глубина резолюций вдоль самой длинной ветви"""
    constraints: ConstraintSet
    depth: int = 0


@dataclass
class SearchStats:
    """Счётчики одного запуска поиска"""
    hit_budget: bool = False
    back_steps: int = 0
    expansions: int = 0


@dataclass(frozen=True, slots=True)
class Found:
    answer: Answer
    bound: int


@dataclass(frozen=True, slots=True)
class Exhausted:
    bound: int
    hit_budget: bool


DeepeningResult = Union[Found, Exhausted]


class Deadline:
    """Кооперативный дедлайн: поиск периодически вызывает check()"""

    def __init__(self, seconds: Optional[float] = None):
        self.seconds = seconds
        self._expires = None if seconds is None else time.monotonic() + seconds

    def check(self) -> None:
        if self._expires is not None and time.monotonic() > self._expires:
            raise SearchTimeout(f"search exceeded {self.seconds:g} s")

    @property
    def expired(self) -> bool:
        return self._expires is not None and time.monotonic() > self._expires


NO_DEADLINE = Deadline()


class Engine:
    """Γ;Δ;K ⇒ G. `generic_only` оставляет для ∀* только правило собственной переменной"""

    def __init__(
        self,
        repository: ProgramRepository,
        deadline: Deadline = NO_DEADLINE,
        generic_only: bool = False,
    ):
        self.repository = repository
        self.deadline = deadline
        self.generic_only = generic_only
        self.stats = SearchStats()

    # -- основной цикл ------------------------------------------------------

    def solve(self, goal: Goal, constraints: ConstraintSet = EMPTY, budget: int = 0) -> Iterator[Answer]:
        """Лениво перечислить ответы цели при бюджете `budget`"""
        if isinstance(goal, Top):
            yield Answer(constraints)
        elif isinstance(goal, Bottom):
            return
        elif isinstance(goal, Eq):
            left, eqs_left = expand_concretions(goal.left)
            right, eqs_right = expand_concretions(goal.right)
            result, _ = extend(constraints, eqs_left + eqs_right + [(left, right)])
            if result is not None:
                yield Answer(result)
        elif isinstance(goal, Fresh):
            name, eqs_name = expand_concretions(goal.name)
            term, eqs_term = expand_concretions(goal.term)
            result, _ = extend(constraints, eqs_name + eqs_term, [(name, term)])
            if result is not None:
                yield Answer(result)
        elif isinstance(goal, Atom):
            yield from self._back(goal, constraints, budget)
        elif isinstance(goal, Conj):
            yield from self._conj(goal.goals, 0, constraints, budget, 0)
        elif isinstance(goal, Disj):
            for branch in goal.goals:
                yield from self.solve(branch, constraints, budget)
        elif isinstance(goal, Exists):
            var = fresh_var(goal.var.type, goal.var.spelling)
            yield from self.solve(subst_goal(goal.body, {goal.var: var_term(var)}), constraints, budget)
        elif isinstance(goal, New):
            name = fresh_name(goal.name.sort, goal.name.spelling, nu=True)
            yield from self.solve(rename_goal(goal.body, goal.name, name), constraints.introduce(name), budget)
        elif isinstance(goal, ForallStar):
            yield from self.solve_forall_star(goal.var, goal.body, constraints, budget)
        else:
            raise TypeError(f"unexpected goal {goal!r}")

    def _conj(
        self, goals: tuple[Goal, ...], index: int, constraints: ConstraintSet, budget: int, depth: int,
    ) -> Iterator[Answer]:
        if index == len(goals):
            yield Answer(constraints, depth)
            return
        for partial in self.solve(goals[index], constraints, budget):
            yield from self._conj(goals, index + 1, partial.constraints, budget, max(depth, partial.depth))

    def _back(self, atom: Atom, constraints: ConstraintSet, budget: int) -> Iterator[Answer]:
        self.deadline.check()
        for clause in self.repository.def_of(atom.pred):
            head, body = self._rename_apart(clause)
            arg, eqs = expand_concretions(atom.arg)
            unified, _ = extend(constraints, eqs + [(head, arg)])
            if unified is None:
                continue
            if budget <= 0:
                # голова подходит, но глубины не осталось
                self.stats.hit_budget = True
                return
            self.stats.back_steps += 1
            for answer in self.solve(body, unified, budget - 1):
                yield Answer(answer.constraints, answer.depth + 1)

    @staticmethod
    def _rename_apart(clause: Clause) -> tuple[Term, Goal]:
        mapping = {v: var_term(fresh_var(v.type, v.spelling)) for v in clause.variables}
        return subst_term(clause.head, mapping), subst_goal(clause.body, mapping)

    # -- экстенсиональный квантор -------------------------------------------

    def solve_forall_star(
        self, var: Var, body: Goal, constraints: ConstraintSet, budget: int,
    ) -> Iterator[Answer]:
        """∀*X:τ.G: сначала собственная переменная, при неудаче раскрытие на один слой"""
        eigen = fresh_var(var.type, var.spelling, rigid=True)
        produced = False
        for answer in self.solve(subst_goal(body, {var: var_term(eigen)}), constraints, budget):
            if consistent(answer.constraints):
                produced = True
            yield answer
        if produced or self.generic_only:
            return
        yield from self._expand(var, body, constraints, budget)

    def _expand(self, var: Var, body: Goal, constraints: ConstraintSet, budget: int) -> Iterator[Answer]:
        tp = var.type
        if isinstance(tp, UnitType):
            yield from self.solve(subst_goal(body, {var: UNIT_TERM}), constraints, budget)
        elif isinstance(tp, ProdType):
            left = fresh_var(tp.left, var.spelling)
            right = fresh_var(tp.right, var.spelling)
            split = subst_goal(body, {var: Pair(var_term(left), var_term(right))})
            yield from self.solve(ForallStar(left, ForallStar(right, split)), constraints, budget)
        elif isinstance(tp, AbsType):
            name = fresh_name(tp.nu, "a")
            inner = fresh_var(tp.body, var.spelling)
            opened = subst_goal(body, {var: Abs(name, var_term(inner))})
            yield from self.solve(New(name, ForallStar(inner, opened)), constraints, budget)
        elif isinstance(tp, BaseType):
            if budget <= 0:
                self.stats.hit_budget = True
                return
            self.stats.expansions += 1
            branches = []
            for constructor in self.repository.signature.constructors_of(tp.name):
                params = [fresh_var(p, var.spelling) for p in constructor.params]
                instance = App(constructor.name, tuple_term([var_term(p) for p in params]))
                branch = subst_goal(body, {var: instance})
                for p in reversed(params):
                    branch = ForallStar(p, branch)
                branches.append(branch)
            for answer in self._conj(tuple(branches), 0, constraints, budget - 1, 0):
                yield Answer(answer.constraints, answer.depth + 1)
        elif isinstance(tp, NameType):
            # для именных типов есть только правило собственной переменной
            return
        else:
            raise TypeError(f"cannot expand forall* over type {tp}")

    # -- отрицание как неудача и углубление ---------------------------------

    def naf(self, goal: Goal, constraints: ConstraintSet, budget: int) -> str:
        """not(A): FailsFinitely только если дерево исчерпано без обрыва по бюджету"""
        saved = self.stats.hit_budget
        self.stats.hit_budget = False
        try:
            for answer in self.solve(goal, constraints, budget):
                if consistent(answer.constraints):
                    return NafOutcome.SUCCEEDS
            if self.stats.hit_budget:
                return NafOutcome.OUT_OF_BUDGET
            return NafOutcome.FAILS_FINITELY
        finally:
            self.stats.hit_budget = saved or self.stats.hit_budget

    def first_answer(self, goal: Goal, constraints: ConstraintSet, budget: int) -> Optional[Answer]:
        for answer in self.solve(goal, constraints, budget):
            if consistent(answer.constraints):
                return answer
        return None

    def iterative_deepening(
        self,
        goal: Goal,
        max_bound: int,
        constraints: ConstraintSet = EMPTY,
        on_round: Optional[Callable[[int], None]] = None,
    ) -> DeepeningResult:
        """Первый ответ при бюджетах 1..max_bound или Exhausted(max_bound)"""
        return deepen(
            lambda bound: self.solve(goal, constraints, bound),
            max_bound,
            self.stats,
            on_round,
        )


def deepen(
    search: Callable[[int], Iterator[Answer]],
    max_bound: int,
    stats: SearchStats,
    on_round: Optional[Callable[[int], None]] = None,
) -> DeepeningResult:
    """Итеративное углубление по произвольной функции поиска"""
    if max_bound < 1:
        raise ValueError("max_bound must be at least 1")
    hit_budget = False
    for bound in range(1, max_bound + 1):
        if on_round is not None:
            on_round(bound)
        stats.hit_budget = False
        for answer in search(bound):
            if consistent(answer.constraints):
                logger.debug(f"Answer found at bound {bound}")
                return Found(answer, bound)
        hit_budget = stats.hit_budget
        logger.debug(f"Bound {bound} exhausted (hit budget: {hit_budget})")
    return Exhausted(max_bound, hit_budget)


def exhaust(
    search: Callable[[int], Iterator[Answer]],
    max_bound: int,
    stats: SearchStats,
    on_round: Optional[Callable[[int], None]] = None,
) -> DeepeningResult:
    """Пройти все раунды 1..max_bound целиком; первый найденный ответ запоминается,
    поиск останавливается после завершения его раунда"""
    if max_bound < 1:
        raise ValueError("max_bound must be at least 1")
    hit_budget = False
    for bound in range(1, max_bound + 1):
        if on_round is not None:
            on_round(bound)
        stats.hit_budget = False
        first: Optional[Answer] = None
        explored = 0
        for answer in search(bound):
            if consistent(answer.constraints):
                explored += 1
                if first is None:
                    first = answer
        hit_budget = stats.hit_budget
        logger.debug(f"Bound {bound} exhausted: {explored} answers (hit budget: {hit_budget})")
        if first is not None:
            return Found(first, bound)
    return Exhausted(max_bound, hit_budget)
