"""
Вывод типов клауз и директив и перевод поверхностных термов в ядро.

Вывод двухфазный: сначала переменным и именам назначаются переменные типа и
решаются уравнения, затем по найденным типам строятся термы ядра. Списочные
типы [τ] превращаются в базовые типы с конструкторами "[]" и "[|]".
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from typing import Optional, Union

from ..core.constants import CONS, GEN_PREFIX, NIL
from ..core.exceptions import ParseError, SourcePos, TypeCheckError
from ..models.goals import (
    BOTTOM, TOP, Atom, Eq, Exists, ForallStar, Fresh, Goal, New, conj, disj,
)
from ..models.program import Constructor, Signature
from ..models.terms import UNIT_TERM, Abs, App, Conc, Name, Pair, Term, Var, tuple_term, var_term
from ..models.types import (
    AbsType, BaseType, ListType, NameType, ProdType, TypeExpr, TypeVar, UnitType,
    list_type_name, product_of,
)
from ..utils.fresh import next_stamp
from .surface import (
    EXISTS, FORALL_STAR, NEW,
    SAbs, SApp, SAtom, SConc, SConj, SDisj, SEq, SFalse, SFresh, SGoal, SIdent, SList,
    SQuant, STerm, STrue, STuple, SUnit, SVar, SWild,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class _AbsT:
    """Тип абстракции во время вывода: сорт имени может быть ещё неизвестен"""
    nu: TypeExpr
    body: TypeExpr

    def __str__(self) -> str:
        return f"{self.nu}\\{self.body}"


_Type = Union[TypeExpr, _AbsT]


@dataclass(eq=False)
class _Entity:
    """Переменная или имя одной клаузы/директивы"""
    spelling: str
    type: _Type
    is_name: bool
    pos: Optional[SourcePos] = None
    core: Union[Var, Name, None] = None


@dataclass
class TypedClause:
    pred: str
    args: list[Term]
    body: Goal
    variables: list[Var]
    names: list[Name]
    pos: Optional[SourcePos] = None


@dataclass
class TypedDirective:
    hypotheses: list[Goal]
    conclusion: Goal
    variables: list[Var]
    names: list[Name]


def register_list_type(signature: Signature, elem: TypeExpr) -> BaseType:
    """Базовый тип для [elem]; конструкторы добавляются в сигнатуру при первом обращении"""
    name = list_type_name(elem)
    if name not in signature.list_types:
        signature.list_types[name] = elem
        signature.data_types.append(name)
        signature.constructors[name] = [
            Constructor(NIL, (), name),
            Constructor(CONS, (elem, BaseType(name)), name),
        ]
        logger.debug(f"Registered list type {name}")
    return BaseType(name)


class TypeChecker:
    """Типизация в рамках одной сигнатуры; состояние сбрасывается на каждую клаузу"""

    def __init__(self, signature: Signature):
        self.signature = signature
        self._ids = itertools.count(1)
        self._reset()

    def _reset(self) -> None:
        self._subst: dict[TypeVar, _Type] = {}
        self._name_vars: set[TypeVar] = set()
        self._var_scopes: list[dict[str, _Entity]] = [{}]
        self._name_scopes: list[dict[str, _Entity]] = [{}]
        self._entities: list[_Entity] = []
        self._free_vars: list[_Entity] = []
        self._free_names: list[_Entity] = []
        self._refs: dict[int, _Entity] = {}
        self._types: dict[int, _Type] = {}
        self._binders: dict[int, list[_Entity]] = {}

    # -- переменные типа ------------------------------------------------------

    def _fresh_tv(self, name: bool = False) -> TypeVar:
        tv = TypeVar(next(self._ids))
        if name:
            self._name_vars.add(tv)
        return tv

    def _resolve(self, tp: _Type) -> _Type:
        while isinstance(tp, TypeVar) and tp in self._subst:
            tp = self._subst[tp]
        return tp

    def _occurs(self, tv: TypeVar, tp: _Type) -> bool:
        tp = self._resolve(tp)
        if tp == tv:
            return True
        if isinstance(tp, ProdType):
            return self._occurs(tv, tp.left) or self._occurs(tv, tp.right)
        if isinstance(tp, ListType):
            return self._occurs(tv, tp.elem)
        if isinstance(tp, _AbsT):
            return self._occurs(tv, tp.nu) or self._occurs(tv, tp.body)
        return False

    def _bind(self, tv: TypeVar, tp: _Type, pos: Optional[SourcePos]) -> None:
        if self._occurs(tv, tp):
            raise TypeCheckError(f"cyclic type {self._show(tp)}", pos)
        if tv in self._name_vars:
            if isinstance(tp, TypeVar):
                self._name_vars.add(tp)
            elif not isinstance(tp, NameType):
                raise TypeCheckError(f"name used at non-name type {self._show(tp)}", pos)
        self._subst[tv] = tp

    def unify(self, expected: _Type, found: _Type, pos: Optional[SourcePos] = None) -> None:
        a = self._resolve(expected)
        b = self._resolve(found)
        if a == b:
            return
        if isinstance(a, TypeVar):
            self._bind(a, b, pos)
        elif isinstance(b, TypeVar):
            self._bind(b, a, pos)
        elif isinstance(a, ProdType) and isinstance(b, ProdType):
            self.unify(a.left, b.left, pos)
            self.unify(a.right, b.right, pos)
        elif isinstance(a, ListType) and isinstance(b, ListType):
            self.unify(a.elem, b.elem, pos)
        elif isinstance(a, _AbsT) and isinstance(b, _AbsT):
            self.unify(a.nu, b.nu, pos)
            self.unify(a.body, b.body, pos)
        else:
            raise TypeCheckError(f"type mismatch: expected {self._show(a)}, found {self._show(b)}", pos)

    def _show(self, tp: _Type) -> str:
        tp = self._resolve(tp)
        if isinstance(tp, ProdType):
            return f"({self._show(tp.left)},{self._show(tp.right)})"
        if isinstance(tp, ListType):
            return f"[{self._show(tp.elem)}]"
        if isinstance(tp, _AbsT):
            return f"{self._show(tp.nu)}\\{self._show(tp.body)}"
        if isinstance(tp, TypeVar):
            return "_"
        return str(tp)

    def lift(self, tp: TypeExpr) -> _Type:
        """Тип сигнатуры -> тип вывода (списки и абстракции раскрываются)"""
        if isinstance(tp, BaseType) and tp.name in self.signature.list_types:
            return ListType(self.lift(self.signature.list_types[tp.name]))
        if isinstance(tp, AbsType):
            return _AbsT(NameType(tp.nu), self.lift(tp.body))
        if isinstance(tp, ProdType):
            return ProdType(self.lift(tp.left), self.lift(tp.right))
        return tp

    def finalize(self, tp: _Type, pos: Optional[SourcePos] = None) -> TypeExpr:
        tp = self._resolve(tp)
        if isinstance(tp, TypeVar):
            if tp in self._name_vars:
                if len(self.signature.name_types) == 1:
                    default = NameType(self.signature.name_types[0])
                    self._subst[tp] = default
                    return default
                raise TypeCheckError("cannot determine the name type", pos)
            raise TypeCheckError("cannot infer a type", pos)
        if isinstance(tp, ProdType):
            return ProdType(self.finalize(tp.left, pos), self.finalize(tp.right, pos))
        if isinstance(tp, ListType):
            return register_list_type(self.signature, self.finalize(tp.elem, pos))
        if isinstance(tp, _AbsT):
            nu = self.finalize(tp.nu, pos)
            if not isinstance(nu, NameType):
                raise TypeCheckError(f"abstraction over non-name type {nu}", pos)
            return AbsType(nu.name, self.finalize(tp.body, pos))
        return tp

    # -- окружение ------------------------------------------------------------

    def _entity(self, spelling: str, is_name: bool, pos: Optional[SourcePos]) -> _Entity:
        entity = _Entity(spelling, self._fresh_tv(name=is_name), is_name, pos)
        self._entities.append(entity)
        return entity

    def _lookup(self, spelling: str, is_name: bool, pos: Optional[SourcePos]) -> _Entity:
        scopes = self._name_scopes if is_name else self._var_scopes
        for scope in reversed(scopes):
            if spelling in scope:
                return scope[spelling]
        entity = self._entity(spelling, is_name, pos)
        scopes[0][spelling] = entity
        (self._free_names if is_name else self._free_vars).append(entity)
        return entity

    # -- первая фаза: вывод ---------------------------------------------------

    def _constructor(self, fn: str, pos: Optional[SourcePos]) -> Constructor:
        c = self.signature.lookup_constructor(fn)
        if c is None:
            if fn in self.signature.predicates:
                raise ParseError(f"predicate {fn} used as a term", pos)
            raise ParseError(f"undeclared constructor {fn}", pos)
        return c

    def infer(self, term: STerm) -> _Type:
        if isinstance(term, SVar):
            entity = self._lookup(term.name, False, term.pos)
            self._refs[id(term)] = entity
            return entity.type
        if isinstance(term, SWild):
            entity = self._entity("_", False, term.pos)
            self._free_vars.append(entity)
            self._refs[id(term)] = entity
            return entity.type
        if isinstance(term, SIdent):
            c = self.signature.lookup_constructor(term.name)
            if c is not None:
                if c.arity:
                    raise ParseError(f"{term.name} expects {c.arity} argument(s)", term.pos)
                return BaseType(c.result)
            if term.name in self.signature.symbols():
                raise ParseError(f"{term.name} is not a term", term.pos)
            entity = self._lookup(term.name, True, term.pos)
            self._refs[id(term)] = entity
            return entity.type
        if isinstance(term, SApp):
            c = self._constructor(term.fn, term.pos)
            if len(term.args) != c.arity:
                raise ParseError(f"{term.fn} expects {c.arity} argument(s), got {len(term.args)}", term.pos)
            for arg, param in zip(term.args, c.params):
                self.unify(self.lift(param), self.infer(arg), getattr(arg, "pos", None) or term.pos)
            return BaseType(c.result)
        if isinstance(term, SUnit):
            return UnitType()
        if isinstance(term, STuple):
            return product_of([self.infer(item) for item in term.items])
        if isinstance(term, SAbs):
            entity = self._lookup(term.name, True, term.pos)
            self._refs[id(term)] = entity
            return _AbsT(entity.type, self.infer(term.body))
        if isinstance(term, SConc):
            entity = self._lookup(term.name, True, term.pos)
            self._refs[id(term)] = entity
            body = self._fresh_tv()
            self.unify(_AbsT(entity.type, body), self.infer(term.term), term.pos)
            self._types[id(term)] = body
            return body
        if isinstance(term, SList):
            elem = self._fresh_tv()
            for item in term.items:
                self.unify(elem, self.infer(item), getattr(item, "pos", None) or term.pos)
            if term.tail is not None:
                self.unify(ListType(elem), self.infer(term.tail), term.pos)
            self._types[id(term)] = ListType(elem)
            return ListType(elem)
        raise TypeError(f"unexpected term {term!r}")

    def _pred_params(self, pred: str, pos: Optional[SourcePos]) -> tuple[TypeExpr, ...]:
        if pred not in self.signature.predicates:
            data_type = pred[len(GEN_PREFIX):] if pred.startswith(GEN_PREFIX) else None
            if data_type and data_type in self.signature.constructors:
                self.signature.add_predicate(pred, (BaseType(data_type),))
            else:
                raise ParseError(f"undeclared predicate {pred}", pos)
        return self.signature.predicates[pred]

    def infer_atom(self, term: STerm, pos: Optional[SourcePos]) -> None:
        if not isinstance(term, SApp) or term.infix:
            raise ParseError("expected a predicate application", pos)
        params = self._pred_params(term.fn, term.pos)
        if len(term.args) != len(params):
            raise ParseError(f"{term.fn} expects {len(params)} argument(s), got {len(term.args)}", term.pos)
        for arg, param in zip(term.args, params):
            self.unify(self.lift(param), self.infer(arg), getattr(arg, "pos", None) or term.pos)

    def infer_goal(self, goal: SGoal) -> None:
        if isinstance(goal, (STrue, SFalse)):
            return
        if isinstance(goal, SAtom):
            self.infer_atom(goal.term, goal.pos)
        elif isinstance(goal, SEq):
            left = self.infer(goal.left)
            self.unify(left, self.infer(goal.right), goal.pos)
            self._types[id(goal)] = left
        elif isinstance(goal, SFresh):
            sort = self._fresh_tv(name=True)
            self.unify(sort, self.infer(goal.name), goal.pos)
            self._types[id(goal)] = self.infer(goal.term)
            self._types[id(goal.name)] = sort
        elif isinstance(goal, (SConj, SDisj)):
            for sub in goal.goals:
                self.infer_goal(sub)
        elif isinstance(goal, SQuant):
            is_name = goal.kind == NEW
            scope = {}
            binders = []
            for spelling in goal.binders:
                entity = self._entity(spelling, is_name, goal.pos)
                scope[spelling] = entity
                binders.append(entity)
            self._binders[id(goal)] = binders
            scopes = self._name_scopes if is_name else self._var_scopes
            scopes.append(scope)
            try:
                self.infer_goal(goal.body)
            finally:
                scopes.pop()
        else:
            raise TypeError(f"unexpected goal {goal!r}")

    # -- вторая фаза: построение ----------------------------------------------

    def _materialize(self, nu: bool) -> None:
        """Создать переменные и имена ядра; имена получают штампы раньше переменных"""
        for entity in self._entities:
            if entity.is_name:
                sort = self.finalize(entity.type, entity.pos)
                entity.core = Name(next_stamp(), entity.spelling, sort.name, nu=nu)
        for entity in self._entities:
            if not entity.is_name:
                entity.core = Var(next_stamp(), entity.spelling, self.finalize(entity.type, entity.pos))

    def build(self, term: STerm) -> Term:
        if isinstance(term, (SVar, SWild)):
            return var_term(self._refs[id(term)].core)
        if isinstance(term, SIdent):
            entity = self._refs.get(id(term))
            if entity is not None:
                return entity.core
            return App(term.name, UNIT_TERM)
        if isinstance(term, SApp):
            return App(term.fn, tuple_term([self.build(a) for a in term.args]))
        if isinstance(term, SUnit):
            return UNIT_TERM
        if isinstance(term, STuple):
            return tuple_term([self.build(item) for item in term.items])
        if isinstance(term, SAbs):
            return Abs(self._refs[id(term)].core, self.build(term.body))
        if isinstance(term, SConc):
            tp = self.finalize(self._types[id(term)], term.pos)
            return Conc(self.build(term.term), self._refs[id(term)].core, tp)
        if isinstance(term, SList):
            self.finalize(self._types[id(term)], term.pos)
            result = self.build(term.tail) if term.tail is not None else App(NIL, UNIT_TERM)
            for item in reversed(term.items):
                result = App(CONS, Pair(self.build(item), result))
            return result
        raise TypeError(f"unexpected term {term!r}")

    def build_goal(self, goal: SGoal) -> Goal:
        if isinstance(goal, STrue):
            return TOP
        if isinstance(goal, SFalse):
            return BOTTOM
        if isinstance(goal, SAtom):
            return Atom(goal.term.fn, tuple_term([self.build(a) for a in goal.term.args]))
        if isinstance(goal, SEq):
            tp = self.finalize(self._types[id(goal)], goal.pos)
            return Eq(self.build(goal.left), self.build(goal.right), tp)
        if isinstance(goal, SFresh):
            sort = self.finalize(self._types[id(goal.name)], goal.pos)
            tp = self.finalize(self._types[id(goal)], goal.pos)
            return Fresh(self.build(goal.name), self.build(goal.term), sort.name, tp)
        if isinstance(goal, SConj):
            return conj([self.build_goal(g) for g in goal.goals])
        if isinstance(goal, SDisj):
            return disj([self.build_goal(g) for g in goal.goals])
        if isinstance(goal, SQuant):
            body = self.build_goal(goal.body)
            for entity in reversed(self._binders[id(goal)]):
                if goal.kind == NEW:
                    body = New(entity.core, body)
                elif goal.kind == EXISTS:
                    body = Exists(entity.core, body)
                elif goal.kind == FORALL_STAR:
                    body = ForallStar(entity.core, body)
            return body
        raise TypeError(f"unexpected goal {goal!r}")

    # -- точки входа ------------------------------------------------------------

    def check_clause(self, head: SApp, body: Optional[SGoal], pos: Optional[SourcePos] = None) -> TypedClause:
        self._reset()
        self.infer_atom(head, pos)
        if body is not None:
            self.infer_goal(body)
        self._materialize(nu=False)
        args = [self.build(a) for a in head.args]
        core_body = TOP if body is None else self.build_goal(body)
        return TypedClause(
            pred=head.fn,
            args=args,
            body=core_body,
            variables=[e.core for e in self._free_vars],
            names=[e.core for e in self._free_names],
            pos=pos,
        )

    def check_directive(self, hypotheses: tuple[SGoal, ...], conclusion: SGoal) -> TypedDirective:
        self._reset()
        for goal in hypotheses:
            self.infer_goal(goal)
        self.infer_goal(conclusion)
        self._materialize(nu=True)
        return TypedDirective(
            hypotheses=[self.build_goal(g) for g in hypotheses],
            conclusion=self.build_goal(conclusion),
            variables=[e.core for e in self._free_vars],
            names=[e.core for e in self._free_names],
        )
