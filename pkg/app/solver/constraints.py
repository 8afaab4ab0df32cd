"""
Номинальная унификация (в духе Urban-Pitts-Gabbay) и решение ограничений свежести.

ConstraintSet персистентен: любая операция возвращает новый набор, старый остаётся
пригодным для возврата при бэктрекинге.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Iterable, Optional

from ..kernel.nominal import fresh_name, fresh_var, perm_term, swap_term
from ..models.terms import (
    ID, Abs, App, Conc, Name, Pair, Perm, Susp, Term, UnitTerm, Var, iter_subterms, term_names,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class DelayedAtom:
    """Отложенный атом π·X # t, где X - переменная именного типа, а t - подвешенная переменная"""
    lhs: Susp
    rhs: Term


@dataclass(frozen=True, slots=True)
class ConstraintSet:
    """K: треугольная подстановка, остаточные атомы свежести a # X и отложенные атомы"""
    bindings: dict[Var, Term] = field(default_factory=dict)
    fresh: dict[Var, frozenset[Name]] = field(default_factory=dict)
    delayed: tuple[DelayedAtom, ...] = ()
    ages: dict[Var, int] = field(default_factory=dict)
    nu_names: tuple[Name, ...] = ()

    def walk(self, term: Term) -> Term:
        """Разыменовать верхний уровень терма"""
        while isinstance(term, Susp):
            value = self.bindings.get(term.var)
            if value is None:
                return term
            term = perm_term(term.perm, value)
        return term

    def resolve(self, term: Term) -> Term:
        """Полностью применить подстановку"""
        term = self.walk(term)
        if isinstance(term, Pair):
            return Pair(self.resolve(term.left), self.resolve(term.right))
        if isinstance(term, App):
            return App(term.fn, self.resolve(term.arg))
        if isinstance(term, Abs):
            return Abs(term.name, self.resolve(term.body))
        if isinstance(term, Conc):
            return Conc(self.resolve(term.term), term.name, term.type)
        return term

    def is_bound(self, var: Var) -> bool:
        return var in self.bindings

    def fresh_for(self, var: Var) -> frozenset[Name]:
        return self.fresh.get(var, frozenset())

    def age(self, var: Var) -> int:
        """Штамп переменной с учётом связывания со старшими переменными;
        определяет, от каких собственных переменных ∀* она может зависеть"""
        return self.ages.get(var, var.stamp)

    def introduce(self, name: Name) -> ConstraintSet:
        """Зарегистрировать имя, введённое Ν"""
        return ConstraintSet(self.bindings, self.fresh, self.delayed, self.ages, self.nu_names + (name,))

    def unbound_vars(self, term: Term) -> list[Var]:
        seen: dict[Var, None] = {}
        for t in iter_subterms(self.resolve(term)):
            if isinstance(t, Susp):
                seen.setdefault(t.var, None)
        return list(seen)


EMPTY = ConstraintSet()


class _Clash(Exception):
    """Внутренний сигнал неудачи решения"""


class _Undecided(_Clash):
    """Отложенный атом на собственной переменной: решение неизвестно, считаем неудачей"""


def _disagreement(left: Perm, right: Perm) -> list[Name]:
    names = sorted(left.support() | right.support(), key=lambda n: n.stamp)
    return [a for a in names if left.apply(a) != right.apply(a)]


class _Solver:
    """Изменяемая рабочая копия ConstraintSet на время одной операции"""

    def __init__(self, constraints: ConstraintSet):
        self.bindings = dict(constraints.bindings)
        self.fresh = dict(constraints.fresh)
        self.delayed = list(constraints.delayed)
        self.ages = dict(constraints.ages)
        self.nu_names = constraints.nu_names

    def freeze(self) -> ConstraintSet:
        return ConstraintSet(self.bindings, self.fresh, tuple(self.delayed), self.ages, self.nu_names)

    def walk(self, term: Term) -> Term:
        while isinstance(term, Susp):
            value = self.bindings.get(term.var)
            if value is None:
                return term
            term = perm_term(term.perm, value)
        return term

    def resolve(self, term: Term) -> Term:
        term = self.walk(term)
        if isinstance(term, Pair):
            return Pair(self.resolve(term.left), self.resolve(term.right))
        if isinstance(term, App):
            return App(term.fn, self.resolve(term.arg))
        if isinstance(term, Abs):
            return Abs(term.name, self.resolve(term.body))
        return term

    # -- унификация ---------------------------------------------------------

    def unify(self, left: Term, right: Term) -> None:
        stack = [(left, right)]
        while stack:
            t, u = stack.pop()
            t = self.walk(t)
            u = self.walk(u)
            if isinstance(t, Conc) or isinstance(u, Conc):
                raise ValueError("concretions must be expanded before unification")
            if isinstance(t, Susp) and isinstance(u, Susp) and t.var == u.var:
                for a in _disagreement(t.perm, u.perm):
                    self.fresh_atom(a, Susp(ID, t.var))
                continue
            if isinstance(t, Susp) and not t.var.rigid:
                self.bind(t.var, perm_term(t.perm.inverse(), u))
                continue
            if isinstance(u, Susp) and not u.var.rigid:
                self.bind(u.var, perm_term(u.perm.inverse(), t))
                continue
            if isinstance(t, Susp) or isinstance(u, Susp):
                raise _Clash()
            if isinstance(t, Name) or isinstance(u, Name):
                if t != u:
                    raise _Clash()
                continue
            if isinstance(t, UnitTerm) and isinstance(u, UnitTerm):
                continue
            if isinstance(t, Pair) and isinstance(u, Pair):
                stack.append((t.right, u.right))
                stack.append((t.left, u.left))
                continue
            if isinstance(t, App) and isinstance(u, App):
                if t.fn != u.fn:
                    raise _Clash()
                stack.append((t.arg, u.arg))
                continue
            if isinstance(t, Abs) and isinstance(u, Abs):
                if t.name == u.name:
                    stack.append((t.body, u.body))
                else:
                    self.fresh_atom(t.name, u.body)
                    stack.append((t.body, swap_term(t.name, u.name, u.body)))
                continue
            raise _Clash()

    def age(self, var: Var) -> int:
        return self.ages.get(var, var.stamp)

    def bind(self, var: Var, value: Term) -> None:
        resolved = self.resolve(value)
        age = self.age(var)
        younger: list[Var] = []
        for t in iter_subterms(resolved):
            if isinstance(t, Susp):
                if t.var == var:
                    raise _Clash()
                # старшая переменная не может зависеть от собственной переменной ∀*
                if t.var.rigid and self.age(t.var) > age:
                    raise _Clash()
                if self.age(t.var) > age:
                    younger.append(t.var)
        self.bindings[var] = resolved
        for y in younger:
            self.ages[y] = age
        # ν-имя моложе переменной свежо для её значения, в том числе для
        # более молодых переменных внутри него
        nu_names = {n for n in self.nu_names if n.stamp > var.stamp}
        nu_names.update(n for n in term_names(resolved) if n.nu and n.stamp > var.stamp)
        for n in sorted(nu_names, key=lambda n: n.stamp):
            self.fresh_atom(n, resolved)
        pending = self.fresh.pop(var, frozenset())
        for a in sorted(pending, key=lambda n: n.stamp):
            self.fresh_atom(a, resolved)
        self.wake(var)

    def wake(self, var: Var) -> None:
        woken = [d for d in self.delayed if self._mentions(d, var)]
        if not woken:
            return
        self.delayed = [d for d in self.delayed if not self._mentions(d, var)]
        for atom in woken:
            self.fresh_atom(atom.lhs, atom.rhs)

    @staticmethod
    def _mentions(atom: DelayedAtom, var: Var) -> bool:
        if atom.lhs.var == var:
            return True
        return isinstance(atom.rhs, Susp) and atom.rhs.var == var

    # -- свежесть -----------------------------------------------------------

    def fresh_atom(self, lhs: Term, term: Term) -> None:
        lhs = self.walk(lhs)
        if isinstance(lhs, Name):
            self._fresh_name(lhs, term)
        elif isinstance(lhs, Susp):
            self._fresh_susp(lhs, term)
        else:
            raise ValueError(f"freshness left-hand side must have a name type: {lhs!r}")

    def _fresh_name(self, a: Name, term: Term) -> None:
        stack = [term]
        while stack:
            t = self.walk(stack.pop())
            if isinstance(t, Name):
                if t == a:
                    raise _Clash()
            elif isinstance(t, UnitTerm):
                continue
            elif isinstance(t, Pair):
                stack.append(t.left)
                stack.append(t.right)
            elif isinstance(t, App):
                stack.append(t.arg)
            elif isinstance(t, Abs):
                if t.name != a:
                    stack.append(t.body)
            elif isinstance(t, Susp):
                self._fresh_var(t.perm.inverse().apply(a), t.var)
            else:
                raise ValueError(f"unexpected term in freshness constraint: {t!r}")

    def _fresh_var(self, a: Name, var: Var) -> None:
        # имя, введённое Ν после переменной, свежо для неё по построению
        if a.nu and a.stamp > var.stamp:
            return
        if var.rigid:
            raise _Clash()
        current = self.fresh.get(var, frozenset())
        if a not in current:
            self.fresh[var] = current | {a}

    def _fresh_susp(self, lhs: Susp, term: Term) -> None:
        if lhs.var.rigid:
            raise _Undecided()
        stack = [term]
        while stack:
            t = self.walk(stack.pop())
            if isinstance(t, UnitTerm):
                continue
            if isinstance(t, Pair):
                stack.append(t.left)
                stack.append(t.right)
            elif isinstance(t, App):
                stack.append(t.arg)
            elif isinstance(t, Name):
                # π·X # b  <=>  π⁻¹(b) # X
                self._fresh_var(lhs.perm.inverse().apply(t), lhs.var)
            elif isinstance(t, Abs):
                if t.name.sort != lhs.var.type.name:
                    stack.append(t.body)
                else:
                    renamed = fresh_name(t.name.sort, t.name.spelling)
                    stack.append(swap_term(t.name, renamed, t.body))
            elif isinstance(t, Susp):
                if t.var.rigid:
                    raise _Undecided()
                self.delayed.append(DelayedAtom(lhs, t))
            else:
                raise ValueError(f"unexpected term in freshness constraint: {t!r}")


def unify(left: Term, right: Term, constraints: ConstraintSet = EMPTY) -> Optional[ConstraintSet]:
    """Решить t ≈ u в контексте K; None при неудаче"""
    solver = _Solver(constraints)
    try:
        solver.unify(left, right)
    except _Clash:
        return None
    return solver.freeze()


def unify_all(pairs: Iterable[tuple[Term, Term]], constraints: ConstraintSet = EMPTY) -> Optional[ConstraintSet]:
    solver = _Solver(constraints)
    try:
        for left, right in pairs:
            solver.unify(left, right)
    except _Clash:
        return None
    return solver.freeze()


def solve_fresh(lhs: Term, term: Term, constraints: ConstraintSet = EMPTY) -> Optional[ConstraintSet]:
    """Решить a # t (a - имя или подвешенная переменная именного типа); None при неудаче"""
    solver = _Solver(constraints)
    try:
        solver.fresh_atom(lhs, term)
    except _Clash:
        return None
    return solver.freeze()


def consistent(constraints: ConstraintSet) -> bool:
    """Выполнимость K. Атомы π·X # π'·X решаются перебором по именам из π, π' и одному
    свежему имени; атомы на разных переменных всегда выполнимы"""
    same_var: dict[Var, list[DelayedAtom]] = {}
    for atom in constraints.delayed:
        rhs = constraints.walk(atom.rhs)
        lhs = constraints.walk(atom.lhs)
        if isinstance(lhs, Susp) and isinstance(rhs, Susp) and lhs.var == rhs.var:
            same_var.setdefault(lhs.var, []).append(DelayedAtom(lhs, rhs))
    for var, atoms in same_var.items():
        if not _brute_force(var, atoms, constraints.fresh_for(var)):
            return False
    return True


def _brute_force(var: Var, atoms: list[DelayedAtom], excluded: frozenset[Name]) -> bool:
    candidates: set[Name] = set()
    for atom in atoms:
        candidates |= atom.lhs.perm.support()
        candidates |= atom.rhs.perm.support()
    candidates.add(fresh_name(var.type.name, "w"))
    for c in sorted(candidates, key=lambda n: n.stamp):
        if c in excluded or c.sort != var.type.name:
            continue
        if all(atom.lhs.perm.apply(c) != atom.rhs.perm.apply(c) for atom in atoms):
            return True
    return False


def extend(
    constraints: ConstraintSet,
    equations: Iterable[tuple[Term, Term]] = (),
    freshness: Iterable[tuple[Term, Term]] = (),
) -> tuple[Optional[ConstraintSet], bool]:
    """Добавить к K равенства и атомы свежести. Второй элемент - признак того, что
    неудача вызвана отложенным атомом на собственной переменной"""
    solver = _Solver(constraints)
    try:
        for left, right in equations:
            solver.unify(left, right)
        for lhs, term in freshness:
            solver.fresh_atom(lhs, term)
    except _Undecided:
        return None, True
    except _Clash:
        return None, False
    return solver.freeze(), False


def expand_concretions(term: Term) -> tuple[Term, list[tuple[Term, Term]]]:
    """Заменить каждую конкрецию t@a новой переменной X с равенством t ≈ ⟨a⟩X
    (вложенные конкреции раскрываются изнутри наружу)"""
    equations: list[tuple[Term, Term]] = []

    def walk(t: Term) -> Term:
        if isinstance(t, Conc):
            inner = walk(t.term)
            var = fresh_var(t.type, "C")
            equations.append((inner, Abs(t.name, Susp(ID, var))))
            return Susp(ID, var)
        if isinstance(t, Pair):
            return Pair(walk(t.left), walk(t.right))
        if isinstance(t, App):
            return App(t.fn, walk(t.arg))
        if isinstance(t, Abs):
            return Abs(t.name, walk(t.body))
        return t

    return walk(term), equations
