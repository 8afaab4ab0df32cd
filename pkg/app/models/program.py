"""
Сигнатура, элаборированные клаузы, директивы #check и программа
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from ..core.exceptions import SourcePos
from .goals import Goal
from .terms import Name, Term, Var
from .types import BaseType, TypeExpr, product_of


@dataclass(frozen=True, slots=True)
class Constructor:
    """Функциональный символ f : τ → δ; `params` - типы аргументов в записи f(t1,...,tn)"""
    name: str
    params: tuple[TypeExpr, ...]
    result: str

    @property
    def arity(self) -> int:
        return len(self.params)

    @property
    def arg_type(self) -> TypeExpr:
        return product_of(self.params)


@dataclass
class Signature:
    """Σ = (ΣD, ΣN, ΣP, ΣF) после раскрытия алиасов и списков"""
    name_types: list[str] = field(default_factory=list)
    data_types: list[str] = field(default_factory=list)
    constructors: dict[str, list[Constructor]] = field(default_factory=dict)
    predicates: dict[str, tuple[TypeExpr, ...]] = field(default_factory=dict)
    infix: dict[str, tuple[str, int]] = field(default_factory=dict)
    # базовый тип списка -> тип элемента
    list_types: dict[str, TypeExpr] = field(default_factory=dict)

    def constructors_of(self, data_type: str) -> list[Constructor]:
        return self.constructors.get(data_type, [])

    def constructor(self, data_type: str, name: str) -> Constructor:
        for c in self.constructors_of(data_type):
            if c.name == name:
                return c
        raise KeyError(f"{name} is not a constructor of {data_type}")

    def lookup_constructor(self, name: str) -> Optional[Constructor]:
        """Поиск пользовательского конструктора по имени (списочные конструкторы перегружены)"""
        for data_type in self.data_types:
            if data_type in self.list_types:
                continue
            for c in self.constructors_of(data_type):
                if c.name == name:
                    return c
        return None

    def pred_type(self, pred: str) -> TypeExpr:
        return product_of(self.predicates[pred])

    def pred_arity(self, pred: str) -> int:
        return len(self.predicates[pred])

    def symbols(self) -> set[str]:
        names = set(self.name_types) | set(self.data_types) | set(self.predicates)
        for cons in self.constructors.values():
            names.update(c.name for c in cons)
        return names

    def copy(self) -> "Signature":
        return Signature(
            name_types=list(self.name_types),
            data_types=list(self.data_types),
            constructors={k: list(v) for k, v in self.constructors.items()},
            predicates=dict(self.predicates),
            infix=dict(self.infix),
            list_types=dict(self.list_types),
        )

    def add_predicate(self, pred: str, params: tuple[TypeExpr, ...]) -> None:
        self.predicates[pred] = params

    def is_data_type(self, tp: TypeExpr) -> bool:
        return isinstance(tp, BaseType) and tp.name in self.constructors


@dataclass(frozen=True)
class Clause:
    """∀x⃗. G ⊃ p(t)"""
    pred: str
    head: Term
    variables: tuple[Var, ...]
    body: Goal
    index: int = 0
    pos: Optional[SourcePos] = None


@dataclass(frozen=True)
class CheckDirective:
    """#check "label" n : H1, ..., Hk => A"""
    label: str
    bound: int
    hypotheses: tuple[Goal, ...]
    conclusion: Goal
    names: tuple[Name, ...]
    variables: tuple[Var, ...]
    text: str = ""
    pos: Optional[SourcePos] = None


@dataclass
class Program:
    """Элаборированная программа Δ с директивами"""
    signature: Signature
    clauses: list[Clause] = field(default_factory=list)
    checks: list[CheckDirective] = field(default_factory=list)
    path: str = ""

    def clauses_of(self, pred: str) -> list[Clause]:
        return [c for c in self.clauses if c.pred == pred]
