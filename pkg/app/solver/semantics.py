"""
Выполнимость формул ограничений: θ ⊨ C и Γ;K ⊨ C.

Контекст Γ представлен штампами переменных и имён, поэтому отдельным аргументом
не передаётся.
"""
from __future__ import annotations

import logging
from typing import Iterator, Mapping

from ..core.constants import Entailment
from ..kernel.nominal import fresh_name, fresh_var
from ..kernel.substitution import rename_goal, subst_goal
from ..models.goals import Bottom, Conj, Disj, Eq, Exists, Fresh, Goal, New, Top
from ..models.terms import Term, Var, var_term
from .constraints import ConstraintSet, consistent, expand_concretions, extend

logger = logging.getLogger(__name__)


class _ConstraintProver:
    """Перебор решений формулы ограничений без предикатов"""

    def __init__(self):
        self.undecided = False

    def solve(self, goal: Goal, constraints: ConstraintSet) -> Iterator[ConstraintSet]:
        if isinstance(goal, Top):
            yield constraints
        elif isinstance(goal, Bottom):
            return
        elif isinstance(goal, Eq):
            left, eqs_left = expand_concretions(goal.left)
            right, eqs_right = expand_concretions(goal.right)
            result, undecided = extend(constraints, eqs_left + eqs_right + [(left, right)])
            self.undecided |= undecided
            if result is not None:
                yield result
        elif isinstance(goal, Fresh):
            name, eqs_name = expand_concretions(goal.name)
            term, eqs_term = expand_concretions(goal.term)
            result, undecided = extend(constraints, eqs_name + eqs_term, [(name, term)])
            self.undecided |= undecided
            if result is not None:
                yield result
        elif isinstance(goal, Conj):
            yield from self._conj(list(goal.goals), constraints)
        elif isinstance(goal, Disj):
            for sub in goal.goals:
                yield from self.solve(sub, constraints)
        elif isinstance(goal, Exists):
            var = fresh_var(goal.var.type, goal.var.spelling)
            yield from self.solve(subst_goal(goal.body, {goal.var: var_term(var)}), constraints)
        elif isinstance(goal, New):
            name = fresh_name(goal.name.sort, goal.name.spelling, nu=True)
            yield from self.solve(rename_goal(goal.body, goal.name, name), constraints.introduce(name))
        else:
            raise ValueError(f"constraint formula expected, got {type(goal).__name__}")

    def _conj(self, goals: list[Goal], constraints: ConstraintSet) -> Iterator[ConstraintSet]:
        if not goals:
            yield constraints
            return
        for partial in self.solve(goals[0], constraints):
            yield from self._conj(goals[1:], partial)


def satisfies(valuation: Mapping[Var, Term], goal: Goal) -> bool:
    """θ ⊨ C для формулы C, замкнутой подстановкой θ"""
    prover = _ConstraintProver()
    start = ConstraintSet(bindings=dict(valuation))
    return any(consistent(k) for k in prover.solve(goal, start))


def entails(constraints: ConstraintSet, goal: Goal) -> str:
    """Γ;K ⊨ C через расширение K и финальную проверку согласованности"""
    prover = _ConstraintProver()
    for k in prover.solve(goal, constraints):
        if consistent(k):
            return Entailment.TRUE
    if prover.undecided:
        logger.debug("entailment undecided because of a delayed constraint on an eigenvariable")
        return Entailment.UNKNOWN
    return Entailment.FALSE
