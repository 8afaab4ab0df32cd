"""
Типы языка спецификаций: 1 | δ | τ×τ' | ν | ⟨ν⟩τ, а также списки и алиасы до элаборации
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Union


@dataclass(frozen=True, slots=True)
class UnitType:
    """Тип 1 с единственным значением ⟨⟩"""

    def __str__(self) -> str:
        return "()"


@dataclass(frozen=True, slots=True)
class BaseType:
    """Пользовательский тип данных δ (в том числе сгенерированный тип списка)"""
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True, slots=True)
class ProdType:
    left: "TypeExpr"
    right: "TypeExpr"

    def __str__(self) -> str:
        return "(" + ",".join(str(t) for t in flatten_product(self)) + ")"


@dataclass(frozen=True, slots=True)
class NameType:
    """Тип имён ν"""
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True, slots=True)
class AbsType:
    """Тип абстракций ⟨ν⟩τ"""
    nu: str
    body: "TypeExpr"

    def __str__(self) -> str:
        body = str(self.body)
        if isinstance(self.body, AbsType):
            body = f"({body})"
        return f"{self.nu}\\{body}"


@dataclass(frozen=True, slots=True)
class ListType:
    """Списочный тип [τ]; после элаборации превращается в BaseType"""
    elem: "TypeExpr"

    def __str__(self) -> str:
        return f"[{self.elem}]"


@dataclass(frozen=True, slots=True)
class AliasType:
    """Ссылка на `type x = ...`; раскрывается при разборе сигнатуры"""
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True, slots=True)
class TypeVar:
    """Переменная типа, используется только выводом типов"""
    ident: int

    def __str__(self) -> str:
        return f"?{self.ident}"


TypeExpr = Union[UnitType, BaseType, ProdType, NameType, AbsType, ListType, AliasType, TypeVar]

UNIT = UnitType()


def product_of(types: list[TypeExpr] | tuple[TypeExpr, ...]) -> TypeExpr:
    """Правая вложенная пара для списка типов аргументов: [] -> 1, [a] -> a, [a,b,c] -> a×(b×c)"""
    if not types:
        return UNIT
    result = types[-1]
    for item in reversed(types[:-1]):
        result = ProdType(item, result)
    return result


def flatten_product(tp: TypeExpr) -> list[TypeExpr]:
    items: list[TypeExpr] = []
    while isinstance(tp, ProdType):
        items.append(tp.left)
        tp = tp.right
    items.append(tp)
    return items


def split_product(tp: TypeExpr, arity: int) -> list[TypeExpr]:
    """Разложить тип аргумента конструктора/предиката на `arity` параметров"""
    if arity == 0:
        return []
    items: list[TypeExpr] = []
    for _ in range(arity - 1):
        if not isinstance(tp, ProdType):
            raise ValueError(f"type {tp} has fewer than {arity} components")
        items.append(tp.left)
        tp = tp.right
    items.append(tp)
    return items


def list_type_name(elem: TypeExpr) -> str:
    """Имя базового типа, в который превращается [elem]"""
    return f"[{elem}]"
