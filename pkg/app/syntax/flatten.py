"""
Раскрытие функционального сахара: func f(τ⃗) = δ превращается в pred f(τ⃗, δ),
вложенные вызовы - в подцели с вспомогательными переменными
"""
import logging
from dataclasses import replace
from typing import Optional

from .surface import (
    EXISTS,
    CheckDecl, ClauseDecl, FuncClause, FuncDecl, PredDecl, SAbs, SApp, SAtom, SConc,
    SConj, SDisj, SEq, SFresh, SGoal, SIdent, SList, SQuant, STerm, STuple, SVar,
    SurfaceProgram,
)

logger = logging.getLogger(__name__)


class _Flattener:
    """Состояние раскрытия одного объявления: вызовы собираются слева направо,
    внутренние раньше внешних"""

    def __init__(self, functions: set[str], used: set[str]):
        self.functions = functions
        self.used = used
        self.counter = 0
        self.created: list[str] = []

    def fresh(self) -> SVar:
        while True:
            self.counter += 1
            name = f"R_{self.counter}"
            if name not in self.used:
                self.used.add(name)
                self.created.append(name)
                return SVar(name)

    def is_call(self, term: STerm) -> bool:
        if isinstance(term, SApp):
            return not term.infix and term.fn in self.functions
        return isinstance(term, SIdent) and term.name in self.functions

    def extract(self, term: STerm, calls: list[SGoal]) -> STerm:
        if self.is_call(term):
            args = term.args if isinstance(term, SApp) else ()
            flat = tuple(self.extract(a, calls) for a in args)
            result = self.fresh()
            calls.append(SAtom(SApp(term_name(term), flat + (result,), False, term.pos), term.pos))
            return result
        if isinstance(term, SApp):
            return replace(term, args=tuple(self.extract(a, calls) for a in term.args))
        if isinstance(term, STuple):
            return replace(term, items=tuple(self.extract(a, calls) for a in term.items))
        if isinstance(term, SList):
            tail = None if term.tail is None else self.extract(term.tail, calls)
            return replace(term, items=tuple(self.extract(a, calls) for a in term.items), tail=tail)
        if isinstance(term, SAbs):
            return replace(term, body=self.extract(term.body, calls))
        if isinstance(term, SConc):
            return replace(term, term=self.extract(term.term, calls))
        return term

    def call_atom(self, call: STerm, result: STerm, calls: list[SGoal]) -> SGoal:
        """f(t⃗) = u  ->  f(t⃗, u)"""
        args = call.args if isinstance(call, SApp) else ()
        flat = tuple(self.extract(a, calls) for a in args)
        return SAtom(SApp(term_name(call), flat + (result,), False, call.pos), call.pos)

    def goal(self, goal: SGoal) -> SGoal:
        if isinstance(goal, (SConj, SDisj)):
            return replace(goal, goals=tuple(self.goal(g) for g in goal.goals))
        if isinstance(goal, SQuant):
            return replace(goal, body=self.goal(goal.body))
        calls: list[SGoal] = []
        start = len(self.created)
        if isinstance(goal, SAtom):
            flat: SGoal = replace(goal, term=self.extract(goal.term, calls))
        elif isinstance(goal, SEq):
            if self.is_call(goal.left):
                flat = self.call_atom(goal.left, self.extract(goal.right, calls), calls)
            elif self.is_call(goal.right):
                left = self.extract(goal.left, calls)
                flat = self.call_atom(goal.right, left, calls)
            else:
                flat = replace(goal, left=self.extract(goal.left, calls), right=self.extract(goal.right, calls))
        elif isinstance(goal, SFresh):
            flat = replace(goal, name=self.extract(goal.name, calls), term=self.extract(goal.term, calls))
        else:
            return goal
        if not calls:
            return flat
        aux = tuple(self.created[start:])
        return SQuant(EXISTS, aux, SConj(tuple(calls) + (flat,), goal.pos), goal.pos)


def term_name(term: STerm) -> str:
    return term.fn if isinstance(term, SApp) else term.name


def _spelled_vars(item) -> set[str]:
    found: set[str] = set()

    def visit(node) -> None:
        if isinstance(node, SVar):
            found.add(node.name)
        elif isinstance(node, SQuant):
            found.update(node.binders)
            visit(node.body)
        elif isinstance(node, tuple):
            for sub in node:
                visit(sub)
        elif hasattr(node, "__dataclass_fields__"):
            for name in node.__dataclass_fields__:
                if name != "pos":
                    visit(getattr(node, name))

    visit(item)
    return found


def _conj(goals: list[Optional[SGoal]]) -> Optional[SGoal]:
    items: list[SGoal] = []
    for g in goals:
        if g is None:
            continue
        if isinstance(g, SConj):
            items.extend(g.goals)
        else:
            items.append(g)
    if not items:
        return None
    if len(items) == 1:
        return items[0]
    return SConj(tuple(items))


def _flatten_clause(head: SApp, body: Optional[SGoal], functions: set[str], used: set[str]) -> tuple[SApp, Optional[SGoal]]:
    flattener = _Flattener(functions, used)
    new_body = None if body is None else flattener.goal(body)
    head_calls: list[SGoal] = []
    new_head = replace(head, args=tuple(flattener.extract(a, head_calls) for a in head.args))
    return new_head, _conj([new_body] + head_calls)


def flatten_functions(program: SurfaceProgram) -> SurfaceProgram:
    """Функции -> предикаты; без объявлений func программа возвращается без изменений"""
    functions = {d.name for d in program.of_kind(FuncDecl)}
    if not functions:
        return program
    items = []
    for item in program.items:
        if isinstance(item, FuncDecl):
            items.append(PredDecl(item.name, item.params + (item.result,), item.pos))
        elif isinstance(item, FuncClause):
            head = SApp(item.call.fn, item.call.args + (item.result,), False, item.call.pos)
            head, body = _flatten_clause(head, item.body, functions, _spelled_vars(item))
            items.append(ClauseDecl(head, body, item.pos))
        elif isinstance(item, ClauseDecl):
            head, body = _flatten_clause(item.head, item.body, functions, _spelled_vars(item))
            items.append(ClauseDecl(head, body, item.pos))
        elif isinstance(item, CheckDecl):
            flattener = _Flattener(functions, _spelled_vars(item))
            hypotheses = tuple(flattener.goal(h) for h in item.hypotheses)
            items.append(replace(item, hypotheses=hypotheses, conclusion=flattener.goal(item.conclusion)))
        else:
            items.append(item)
    logger.debug(f"Flattened {len(functions)} function(s)")
    return SurfaceProgram(items, program.path)
