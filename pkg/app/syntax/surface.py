"""
Поверхностное AST спецификации: то, что написал пользователь, с позициями
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

from ..core.exceptions import SourcePos


# -- типы ------------------------------------------------------------------

@dataclass(frozen=True)
class STypeName:
    """Имя типа: тип данных, именной тип или алиас"""
    name: str
    pos: Optional[SourcePos] = field(default=None, compare=False)


@dataclass(frozen=True)
class STypeUnit:
    pos: Optional[SourcePos] = field(default=None, compare=False)


@dataclass(frozen=True)
class STypeTuple:
    items: tuple["SType", ...]
    pos: Optional[SourcePos] = field(default=None, compare=False)


@dataclass(frozen=True)
class STypeList:
    elem: "SType"
    pos: Optional[SourcePos] = field(default=None, compare=False)


@dataclass(frozen=True)
class STypeAbs:
    """ν\\τ"""
    nu: str
    body: "SType"
    pos: Optional[SourcePos] = field(default=None, compare=False)


SType = Union[STypeName, STypeUnit, STypeTuple, STypeList, STypeAbs]


# -- термы -----------------------------------------------------------------

@dataclass(frozen=True)
class SVar:
    name: str
    pos: Optional[SourcePos] = field(default=None, compare=False)


@dataclass(frozen=True)
class SWild:
    pos: Optional[SourcePos] = field(default=None, compare=False)


@dataclass(frozen=True)
class SIdent:
    """Идентификатор со строчной буквы без аргументов: константа или имя"""
    name: str
    pos: Optional[SourcePos] = field(default=None, compare=False)


@dataclass(frozen=True)
class SApp:
    """f(t1,...,tn), в том числе инфиксная запись t1 op t2"""
    fn: str
    args: tuple["STerm", ...]
    infix: bool = False
    pos: Optional[SourcePos] = field(default=None, compare=False)


@dataclass(frozen=True)
class SUnit:
    pos: Optional[SourcePos] = field(default=None, compare=False)


@dataclass(frozen=True)
class STuple:
    items: tuple["STerm", ...]
    pos: Optional[SourcePos] = field(default=None, compare=False)


@dataclass(frozen=True)
class SAbs:
    """x\\t"""
    name: str
    body: "STerm"
    pos: Optional[SourcePos] = field(default=None, compare=False)


@dataclass(frozen=True)
class SConc:
    """t@a"""
    term: "STerm"
    name: str
    pos: Optional[SourcePos] = field(default=None, compare=False)


@dataclass(frozen=True)
class SList:
    """[t1,...,tn | tail]"""
    items: tuple["STerm", ...]
    tail: Optional["STerm"] = None
    pos: Optional[SourcePos] = field(default=None, compare=False)


STerm = Union[SVar, SWild, SIdent, SApp, SUnit, STuple, SAbs, SConc, SList]


# -- цели ------------------------------------------------------------------

@dataclass(frozen=True)
class STrue:
    pos: Optional[SourcePos] = field(default=None, compare=False)


@dataclass(frozen=True)
class SFalse:
    pos: Optional[SourcePos] = field(default=None, compare=False)


@dataclass(frozen=True)
class SAtom:
    term: STerm
    pos: Optional[SourcePos] = field(default=None, compare=False)


@dataclass(frozen=True)
class SEq:
    left: STerm
    right: STerm
    pos: Optional[SourcePos] = field(default=None, compare=False)


@dataclass(frozen=True)
class SFresh:
    name: STerm
    term: STerm
    pos: Optional[SourcePos] = field(default=None, compare=False)


@dataclass(frozen=True)
class SConj:
    goals: tuple["SGoal", ...]
    pos: Optional[SourcePos] = field(default=None, compare=False)


@dataclass(frozen=True)
class SDisj:
    goals: tuple["SGoal", ...]
    pos: Optional[SourcePos] = field(default=None, compare=False)


@dataclass(frozen=True)
class SQuant:
    """new x⃗. G | exists X⃗. G | forall* X⃗. G"""
    kind: str
    binders: tuple[str, ...]
    body: "SGoal"
    pos: Optional[SourcePos] = field(default=None, compare=False)


SGoal = Union[STrue, SFalse, SAtom, SEq, SFresh, SConj, SDisj, SQuant]

NEW = "new"
EXISTS = "exists"
FORALL_STAR = "forall*"


# -- объявления ------------------------------------------------------------

@dataclass(frozen=True)
class NameTypeDecl:
    name: str
    pos: Optional[SourcePos] = field(default=None, compare=False)


@dataclass(frozen=True)
class DataTypeDecl:
    name: str
    pos: Optional[SourcePos] = field(default=None, compare=False)


@dataclass(frozen=True)
class AliasDecl:
    name: str
    type: SType
    pos: Optional[SourcePos] = field(default=None, compare=False)


@dataclass(frozen=True)
class ConstructorDecl:
    """f : τ1 -> ... -> δ"""
    name: str
    params: tuple[SType, ...]
    result: str
    pos: Optional[SourcePos] = field(default=None, compare=False)


@dataclass(frozen=True)
class PredDecl:
    name: str
    params: tuple[SType, ...]
    pos: Optional[SourcePos] = field(default=None, compare=False)


@dataclass(frozen=True)
class FuncDecl:
    name: str
    params: tuple[SType, ...]
    result: SType
    pos: Optional[SourcePos] = field(default=None, compare=False)


@dataclass(frozen=True)
class InfixDecl:
    """infixl / infixr / infix"""
    symbol: str
    assoc: str
    precedence: int
    pos: Optional[SourcePos] = field(default=None, compare=False)


@dataclass(frozen=True)
class ClauseDecl:
    head: STerm
    body: Optional[SGoal] = None
    pos: Optional[SourcePos] = field(default=None, compare=False)


@dataclass(frozen=True)
class FuncClause:
    """f(t⃗) = u :- G"""
    call: SApp
    result: STerm
    body: Optional[SGoal] = None
    pos: Optional[SourcePos] = field(default=None, compare=False)


@dataclass(frozen=True)
class CheckDecl:
    label: str
    bound: int
    hypotheses: tuple[SGoal, ...]
    conclusion: SGoal
    pos: Optional[SourcePos] = field(default=None, compare=False)


Decl = Union[
    NameTypeDecl, DataTypeDecl, AliasDecl, ConstructorDecl, PredDecl, FuncDecl,
    InfixDecl, ClauseDecl, FuncClause, CheckDecl,
]


@dataclass
class SurfaceProgram:
    items: list[Decl] = field(default_factory=list)
    path: str = ""

    def of_kind(self, kind: type) -> list:
        return [item for item in self.items if isinstance(item, kind)]

    def infix_table(self) -> dict[str, tuple[str, int]]:
        return {d.symbol: (d.assoc, d.precedence) for d in self.of_kind(InfixDecl)}
