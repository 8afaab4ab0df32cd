"""
Номинальные термы: ⟨⟩, пары, имена, подвешенные перестановки π·X, абстракции ⟨a⟩t,
применения конструкторов f(t) и конкреции t@a
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Union

from .types import TypeExpr


@dataclass(frozen=True, slots=True)
class Name:
    """Именная константа. Равенство определяется только штампом"""
    stamp: int
    spelling: str = field(compare=False)
    sort: str = field(compare=False)
    # Имя введено квантором Ν: свежо для всех переменных со штампом меньше своего
    nu: bool = field(default=False, compare=False)

    def __str__(self) -> str:
        return self.spelling

    def __repr__(self) -> str:
        return f"Name({self.spelling}#{self.stamp})"


@dataclass(frozen=True, slots=True)
class Var:
    """Логическая переменная X:τ"""
    stamp: int
    spelling: str = field(compare=False)
    type: TypeExpr = field(compare=False)
    # Собственная переменная правила ∀*∀: никогда не связывается
    rigid: bool = field(default=False, compare=False)

    def __str__(self) -> str:
        return self.spelling

    def __repr__(self) -> str:
        return f"Var({self.spelling}#{self.stamp})"


@dataclass(frozen=True, slots=True)
class Perm:
    """Перестановка как список транспозиций (a b)∘π; первая транспозиция внешняя"""
    swaps: tuple[tuple[Name, Name], ...] = ()

    def apply(self, name: Name) -> Name:
        for a, b in reversed(self.swaps):
            if name == a:
                name = b
            elif name == b:
                name = a
        return name

    def compose(self, inner: "Perm") -> "Perm":
        """self ∘ inner"""
        if not inner.swaps:
            return self
        if not self.swaps:
            return inner
        return Perm(self.swaps + inner.swaps)

    def inverse(self) -> "Perm":
        return Perm(tuple(reversed(self.swaps)))

    def support(self) -> frozenset[Name]:
        return frozenset(n for swap in self.swaps for n in swap)

    def is_identity(self) -> bool:
        return not self.swaps

    @staticmethod
    def swap(a: Name, b: Name) -> "Perm":
        return Perm(((a, b),))


ID = Perm()


@dataclass(frozen=True, slots=True)
class UnitTerm:
    def __str__(self) -> str:
        return "()"


@dataclass(frozen=True, slots=True)
class Pair:
    left: "Term"
    right: "Term"


@dataclass(frozen=True, slots=True)
class Susp:
    perm: Perm
    var: Var


@dataclass(frozen=True, slots=True)
class Abs:
    name: Name
    body: "Term"


@dataclass(frozen=True, slots=True)
class App:
    fn: str
    arg: "Term"


@dataclass(frozen=True, slots=True)
class Conc:
    """Конкреция t@a; `type` - тип результата (тело абстракции)"""
    term: "Term"
    name: Name
    type: TypeExpr = field(compare=False)


Term = Union[UnitTerm, Pair, Name, Susp, Abs, App, Conc]

UNIT_TERM = UnitTerm()


def var_term(var: Var) -> Susp:
    return Susp(ID, var)


def tuple_term(items: list[Term] | tuple[Term, ...]) -> Term:
    """Правая вложенная пара для списка аргументов"""
    if not items:
        return UNIT_TERM
    result = items[-1]
    for item in reversed(items[:-1]):
        result = Pair(item, result)
    return result


def split_tuple(term: Term, arity: int) -> list[Term] | None:
    """Разложить аргумент на `arity` компонент; None, если форма не пара"""
    if arity == 0:
        return []
    items: list[Term] = []
    for _ in range(arity - 1):
        if not isinstance(term, Pair):
            return None
        items.append(term.left)
        term = term.right
    items.append(term)
    return items


def iter_subterms(term: Term) -> Iterator[Term]:
    stack = [term]
    while stack:
        t = stack.pop()
        yield t
        if isinstance(t, Pair):
            stack.append(t.right)
            stack.append(t.left)
        elif isinstance(t, Abs):
            stack.append(t.body)
        elif isinstance(t, App):
            stack.append(t.arg)
        elif isinstance(t, Conc):
            stack.append(t.term)


def term_vars(term: Term) -> list[Var]:
    """Переменные терма в порядке первого вхождения"""
    seen: dict[Var, None] = {}
    for t in iter_subterms(term):
        if isinstance(t, Susp):
            seen.setdefault(t.var, None)
    return list(seen)


def term_names(term: Term) -> set[Name]:
    """Все имена терма, включая связывающие и имена из перестановок"""
    found: set[Name] = set()
    for t in iter_subterms(term):
        if isinstance(t, Name):
            found.add(t)
        elif isinstance(t, Abs):
            found.add(t.name)
        elif isinstance(t, Susp):
            found |= t.perm.support()
        elif isinstance(t, Conc):
            found.add(t.name)
    return found


def is_ground(term: Term) -> bool:
    return not any(isinstance(t, (Susp, Conc)) for t in iter_subterms(term))


def term_size(term: Term) -> int:
    """Число конструкторов и имён в терме (пары и ⟨⟩ не считаются)"""
    return sum(1 for t in iter_subterms(term) if isinstance(t, (App, Name, Susp)))
