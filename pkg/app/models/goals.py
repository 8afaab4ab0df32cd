"""
Цели: ⊥ | ⊤ | t ≈ u | a # t | p(t) | G∧G' | G∨G' | ∃X.G | Νa.G, а также ∀*X.G
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Union

from .terms import Name, Term, Var, iter_subterms, Susp, Conc
from .types import TypeExpr


@dataclass(frozen=True, slots=True)
class Top:
    pass


@dataclass(frozen=True, slots=True)
class Bottom:
    pass


@dataclass(frozen=True, slots=True)
class Eq:
    """t ≈τ u"""
    left: Term
    right: Term
    type: TypeExpr = field(compare=False)


@dataclass(frozen=True, slots=True)
class Fresh:
    """a #τ t; `name` - терм именного типа `sort`, `type` - тип правой части"""
    name: Term
    term: Term
    sort: str = field(compare=False)
    type: TypeExpr = field(compare=False)


@dataclass(frozen=True, slots=True)
class Atom:
    pred: str
    arg: Term


@dataclass(frozen=True, slots=True)
class Conj:
    goals: tuple["Goal", ...]


@dataclass(frozen=True, slots=True)
class Disj:
    goals: tuple["Goal", ...]


@dataclass(frozen=True, slots=True)
class Exists:
    var: Var
    body: "Goal"


@dataclass(frozen=True, slots=True)
class New:
    name: Name
    body: "Goal"


@dataclass(frozen=True, slots=True)
class ForallStar:
    """Экстенсиональный квантор ∀*X:τ.G (только в Δ⁻)"""
    var: Var
    body: "Goal"


Goal = Union[Top, Bottom, Eq, Fresh, Atom, Conj, Disj, Exists, New, ForallStar]

TOP = Top()
BOTTOM = Bottom()


def conj(goals: list[Goal] | tuple[Goal, ...]) -> Goal:
    """Конъюнкция с упрощением ⊤ и одиночных целей"""
    items: list[Goal] = []
    for g in goals:
        if isinstance(g, Top):
            continue
        if isinstance(g, Conj):
            items.extend(g.goals)
        else:
            items.append(g)
    if not items:
        return TOP
    if len(items) == 1:
        return items[0]
    return Conj(tuple(items))


def disj(goals: list[Goal] | tuple[Goal, ...]) -> Goal:
    """Дизъюнкция с упрощением ⊥ и одиночных целей"""
    items: list[Goal] = []
    for g in goals:
        if isinstance(g, Bottom):
            continue
        if isinstance(g, Disj):
            items.extend(g.goals)
        else:
            items.append(g)
    if not items:
        return BOTTOM
    if len(items) == 1:
        return items[0]
    return Disj(tuple(items))


def exists_many(variables: list[Var] | tuple[Var, ...], body: Goal) -> Goal:
    for v in reversed(variables):
        body = Exists(v, body)
    return body


def new_many(names: list[Name] | tuple[Name, ...], body: Goal) -> Goal:
    for n in reversed(names):
        body = New(n, body)
    return body


def goal_terms(goal: Goal) -> Iterator[Term]:
    """Термы, непосредственно входящие в цель (без спуска в подцели)"""
    if isinstance(goal, Eq):
        yield goal.left
        yield goal.right
    elif isinstance(goal, Fresh):
        yield goal.name
        yield goal.term
    elif isinstance(goal, Atom):
        yield goal.arg


def iter_goals(goal: Goal) -> Iterator[Goal]:
    stack = [goal]
    while stack:
        g = stack.pop()
        yield g
        if isinstance(g, (Conj, Disj)):
            stack.extend(reversed(g.goals))
        elif isinstance(g, (Exists, New, ForallStar)):
            stack.append(g.body)


def free_vars(goal: Goal) -> list[Var]:
    """Свободные переменные цели в порядке первого вхождения"""
    seen: dict[Var, None] = {}

    def walk(g: Goal, bound: frozenset[Var]) -> None:
        if isinstance(g, (Conj, Disj)):
            for sub in g.goals:
                walk(sub, bound)
        elif isinstance(g, (Exists, ForallStar)):
            walk(g.body, bound | {g.var})
        elif isinstance(g, New):
            walk(g.body, bound)
        else:
            for term in goal_terms(g):
                for t in iter_subterms(term):
                    if isinstance(t, Susp) and t.var not in bound:
                        seen.setdefault(t.var, None)

    walk(goal, frozenset())
    return list(seen)


def has_concretion(goal: Goal) -> bool:
    return any(isinstance(t, Conc) for term in goal_terms(goal) for t in iter_subterms(term))


def atoms_of(goal: Goal) -> list[Atom]:
    return [g for g in iter_goals(goal) if isinstance(g, Atom)]
