"""
Подстановка переменных и переименование имён в термах и целях
"""
from __future__ import annotations

from typing import Callable, Mapping

from ..models.goals import (
    Atom, Bottom, Conj, Disj, Eq, Exists, ForallStar, Fresh, Goal, New, Top,
)
from ..models.terms import Abs, App, Conc, Name, Pair, Perm, Susp, Term, UnitTerm, Var
from .nominal import perm_term


def subst_term(term: Term, mapping: Mapping[Var, Term]) -> Term:
    """t[u⃗/X⃗]; на подвешенной переменной π·X даёт π·u"""
    if not mapping:
        return term
    if isinstance(term, Susp):
        value = mapping.get(term.var)
        if value is None:
            return term
        return perm_term(term.perm, value)
    if isinstance(term, Pair):
        return Pair(subst_term(term.left, mapping), subst_term(term.right, mapping))
    if isinstance(term, App):
        return App(term.fn, subst_term(term.arg, mapping))
    if isinstance(term, Abs):
        return Abs(term.name, subst_term(term.body, mapping))
    if isinstance(term, Conc):
        return Conc(subst_term(term.term, mapping), term.name, term.type)
    return term


def _rename_perm(perm: Perm, old: Name, new: Name) -> Perm:
    return Perm(tuple(
        (new if a == old else a, new if b == old else b) for a, b in perm.swaps
    ))


def rename_term(term: Term, old: Name, new: Name) -> Term:
    """Заменить имя `old` на `new` во всех позициях, включая связывающие и перестановки"""
    if isinstance(term, Name):
        return new if term == old else term
    if isinstance(term, UnitTerm):
        return term
    if isinstance(term, Pair):
        return Pair(rename_term(term.left, old, new), rename_term(term.right, old, new))
    if isinstance(term, App):
        return App(term.fn, rename_term(term.arg, old, new))
    if isinstance(term, Abs):
        name = new if term.name == old else term.name
        return Abs(name, rename_term(term.body, old, new))
    if isinstance(term, Susp):
        if old not in term.perm.support():
            return term
        return Susp(_rename_perm(term.perm, old, new), term.var)
    if isinstance(term, Conc):
        name = new if term.name == old else term.name
        return Conc(rename_term(term.term, old, new), name, term.type)
    raise TypeError(f"unexpected term {term!r}")


def map_goal(goal: Goal, fn: Callable[[Term], Term]) -> Goal:
    """Применить `fn` ко всем термам цели"""
    if isinstance(goal, (Top, Bottom)):
        return goal
    if isinstance(goal, Eq):
        return Eq(fn(goal.left), fn(goal.right), goal.type)
    if isinstance(goal, Fresh):
        return Fresh(fn(goal.name), fn(goal.term), goal.sort, goal.type)
    if isinstance(goal, Atom):
        return Atom(goal.pred, fn(goal.arg))
    if isinstance(goal, Conj):
        return Conj(tuple(map_goal(g, fn) for g in goal.goals))
    if isinstance(goal, Disj):
        return Disj(tuple(map_goal(g, fn) for g in goal.goals))
    if isinstance(goal, Exists):
        return Exists(goal.var, map_goal(goal.body, fn))
    if isinstance(goal, ForallStar):
        return ForallStar(goal.var, map_goal(goal.body, fn))
    if isinstance(goal, New):
        return New(goal.name, map_goal(goal.body, fn))
    raise TypeError(f"unexpected goal {goal!r}")


def subst_goal(goal: Goal, mapping: Mapping[Var, Term]) -> Goal:
    if not mapping:
        return goal
    return map_goal(goal, lambda t: subst_term(t, mapping))


def rename_goal(goal: Goal, old: Name, new: Name) -> Goal:
    """Переименовать имя в цели, включая связывающие вхождения Ν"""
    if isinstance(goal, New):
        name = new if goal.name == old else goal.name
        return New(name, rename_goal(goal.body, old, new))
    if isinstance(goal, (Conj, Disj)):
        return type(goal)(tuple(rename_goal(g, old, new) for g in goal.goals))
    if isinstance(goal, (Exists, ForallStar)):
        return type(goal)(goal.var, rename_goal(goal.body, old, new))
    return map_goal(goal, lambda t: rename_term(t, old, new))
