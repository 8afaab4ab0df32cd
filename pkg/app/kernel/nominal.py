"""
Основные суждения номинальной логики на термах: действие перестановок,
свежесть и α-равенство для замкнутых термов
"""
from __future__ import annotations

import logging

from ..models.terms import (
    Abs, App, Conc, Name, Pair, Perm, Susp, Term, UnitTerm, Var, iter_subterms,
)
from ..models.types import TypeExpr
from ..utils.fresh import next_stamp

logger = logging.getLogger(__name__)


def perm_apply(perm: Perm, name: Name) -> Name:
    """π(a): id(a) = a, ((a b)∘π)(c) меняет a и b в π(c)"""
    return perm.apply(name)


def perm_term(perm: Perm, term: Term) -> Term:
    """π·t; на подвешенных переменных перестановка накапливается: π·(σ·X) = (π∘σ)·X"""
    if perm.is_identity():
        return term
    if isinstance(term, Name):
        return perm.apply(term)
    if isinstance(term, UnitTerm):
        return term
    if isinstance(term, Pair):
        return Pair(perm_term(perm, term.left), perm_term(perm, term.right))
    if isinstance(term, Abs):
        return Abs(perm.apply(term.name), perm_term(perm, term.body))
    if isinstance(term, App):
        return App(term.fn, perm_term(perm, term.arg))
    if isinstance(term, Susp):
        return Susp(perm.compose(term.perm), term.var)
    if isinstance(term, Conc):
        return Conc(perm_term(perm, term.term), perm.apply(term.name), term.type)
    raise TypeError(f"unexpected term {term!r}")


def swap_term(a: Name, b: Name, term: Term) -> Term:
    if a == b:
        return term
    return perm_term(Perm.swap(a, b), term)


def fresh_ground(name: Name, term: Term) -> bool:
    """a # t для замкнутого t"""
    if isinstance(term, Name):
        return name != term
    if isinstance(term, UnitTerm):
        return True
    if isinstance(term, Pair):
        return fresh_ground(name, term.left) and fresh_ground(name, term.right)
    if isinstance(term, Abs):
        return term.name == name or fresh_ground(name, term.body)
    if isinstance(term, App):
        return fresh_ground(name, term.arg)
    raise ValueError(f"fresh_ground expects a ground term, got {term!r}")


def alpha_eq_ground(left: Term, right: Term) -> bool:
    """t ≈ u для замкнутых термов одного типа"""
    if isinstance(left, Name) or isinstance(right, Name):
        return left == right
    if isinstance(left, UnitTerm) and isinstance(right, UnitTerm):
        return True
    if isinstance(left, Pair) and isinstance(right, Pair):
        return alpha_eq_ground(left.left, right.left) and alpha_eq_ground(left.right, right.right)
    if isinstance(left, App) and isinstance(right, App):
        return left.fn == right.fn and alpha_eq_ground(left.arg, right.arg)
    if isinstance(left, Abs) and isinstance(right, Abs):
        a, b = left.name, right.name
        if a == b:
            return alpha_eq_ground(left.body, right.body)
        return fresh_ground(a, right.body) and alpha_eq_ground(left.body, swap_term(a, b, right.body))
    if isinstance(left, (Susp, Conc)) or isinstance(right, (Susp, Conc)):
        raise ValueError("alpha_eq_ground expects ground terms")
    return False


def support(term: Term) -> set[Name]:
    """Все имена, синтаксически входящие в терм (связанные тоже)"""
    names: set[Name] = set()
    for t in iter_subterms(term):
        if isinstance(t, Name):
            names.add(t)
        elif isinstance(t, Abs):
            names.add(t.name)
        elif isinstance(t, Susp):
            names |= t.perm.support()
    return names


def free_names(term: Term) -> set[Name]:
    """Имена, для которых терм не свеж (только для замкнутых термов)"""
    if isinstance(term, Name):
        return {term}
    if isinstance(term, Pair):
        return free_names(term.left) | free_names(term.right)
    if isinstance(term, Abs):
        return free_names(term.body) - {term.name}
    if isinstance(term, App):
        return free_names(term.arg)
    return set()


def fresh_name(sort: str, spelling: str = "n", nu: bool = False) -> Name:
    """Новое имя сорта `sort`. Штампы не повторяются, поэтому имя заведомо отлично
    от всех ранее созданных"""
    return Name(next_stamp(), spelling, sort, nu)


def canonical(term: Term) -> Term:
    """Переименовать все связанные имена в глобально свежие: после этого a # t
    равносильно a ∉ support(canonical(t))"""
    if isinstance(term, Pair):
        return Pair(canonical(term.left), canonical(term.right))
    if isinstance(term, App):
        return App(term.fn, canonical(term.arg))
    if isinstance(term, Abs):
        new = fresh_name(term.name.sort, spelling=term.name.spelling)
        return Abs(new, canonical(swap_term(term.name, new, term.body)))
    return term


def nameless_form(term: Term) -> object:
    """Детерминированная каноническая форма: связанные имена заменяются на позиционные
    (де Брёйн-подобные) ключи; два замкнутых терма α-равны тогда и только тогда,
    когда их формы совпадают структурно"""
    return _debruijn(term, [])


def _debruijn(term: Term, scope: list[Name]) -> object:
    if isinstance(term, Name):
        for i in range(len(scope) - 1, -1, -1):
            if scope[i] == term:
                return ("bound", len(scope) - 1 - i)
        return ("free", term.stamp)
    if isinstance(term, UnitTerm):
        return ("unit",)
    if isinstance(term, Pair):
        return ("pair", _debruijn(term.left, scope), _debruijn(term.right, scope))
    if isinstance(term, App):
        return ("app", term.fn, _debruijn(term.arg, scope))
    if isinstance(term, Abs):
        return ("abs", _debruijn(term.body, scope + [term.name]))
    raise ValueError(f"canonical form expects ground terms, got {term!r}")


def fresh_var(tp: TypeExpr, spelling: str = "X", rigid: bool = False) -> Var:
    """Новая логическая переменная типа `tp`"""
    return Var(next_stamp(), spelling, tp, rigid)
