"""
Печать поверхностного синтаксиса и термов ядра.

Поверхностный принтер обратим: разбор его вывода даёт то же дерево.
Принтер ядра используется для дампа Δ⁻ и для контрпримеров в отчётах.
"""
from __future__ import annotations

from typing import Optional

from ..core.constants import CONS, NIL
from ..models.goals import (
    Atom, Bottom, Conj, Disj, Eq, Exists, ForallStar, Fresh, Goal, New, Top,
)
from ..models.program import Clause, Signature
from ..models.terms import Abs, App, Conc, Name, Pair, Susp, Term, UnitTerm, Var, split_tuple
from ..models.types import TypeExpr
from .surface import (
    AliasDecl, CheckDecl, ClauseDecl, ConstructorDecl, DataTypeDecl, Decl, FuncClause,
    FuncDecl, InfixDecl, NameTypeDecl, PredDecl, SAbs, SApp, SAtom, SConc, SConj, SDisj,
    SEq, SFalse, SFresh, SGoal, SIdent, SList, SQuant, STerm, STrue, STuple, SType,
    STypeAbs, STypeList, STypeName, STypeTuple, STypeUnit, SUnit, SVar, SWild,
    SurfaceProgram,
)


# -- поверхностный синтаксис ---------------------------------------------------

def print_type(tp: SType) -> str:
    if isinstance(tp, STypeName):
        return tp.name
    if isinstance(tp, STypeUnit):
        return "()"
    if isinstance(tp, STypeTuple):
        return "(" + ",".join(print_type(t) for t in tp.items) + ")"
    if isinstance(tp, STypeList):
        return f"[{print_type(tp.elem)}]"
    if isinstance(tp, STypeAbs):
        body = print_type(tp.body)
        return f"{tp.nu}\\{body}"
    raise TypeError(f"unexpected type {tp!r}")


def _is_infix(term: STerm) -> bool:
    return isinstance(term, SApp) and term.infix


def print_term(term: STerm) -> str:
    if isinstance(term, SVar):
        return term.name
    if isinstance(term, SWild):
        return "_"
    if isinstance(term, SIdent):
        return term.name
    if isinstance(term, SApp):
        if term.infix:
            left, right = (_operand(a) for a in term.args)
            return f"{left} {term.fn} {right}"
        return term.fn + "(" + ",".join(print_term(a) for a in term.args) + ")"
    if isinstance(term, SUnit):
        return "()"
    if isinstance(term, STuple):
        return "(" + ",".join(print_term(a) for a in term.items) + ")"
    if isinstance(term, SAbs):
        return f"{term.name}\\{_operand(term.body)}"
    if isinstance(term, SConc):
        inner = print_term(term.term)
        if _is_infix(term.term) or isinstance(term.term, SAbs):
            inner = f"({inner})"
        return f"{inner}@{term.name}"
    if isinstance(term, SList):
        items = ",".join(print_term(a) for a in term.items)
        if term.tail is not None:
            return f"[{items}|{print_term(term.tail)}]"
        return f"[{items}]"
    raise TypeError(f"unexpected term {term!r}")


def _operand(term: STerm) -> str:
    text = print_term(term)
    return f"({text})" if _is_infix(term) else text


def print_atom(term: SApp) -> str:
    if not term.args:
        return term.fn
    return print_term(term)


def print_goal(goal: SGoal) -> str:
    if isinstance(goal, STrue):
        return "true"
    if isinstance(goal, SFalse):
        return "false"
    if isinstance(goal, SAtom):
        return print_atom(goal.term)
    if isinstance(goal, SEq):
        return f"{print_term(goal.left)} = {print_term(goal.right)}"
    if isinstance(goal, SFresh):
        return f"{print_term(goal.name)} # {print_term(goal.term)}"
    if isinstance(goal, SConj):
        return ", ".join(_sub_goal(g, last=i == len(goal.goals) - 1, in_conj=True) for i, g in enumerate(goal.goals))
    if isinstance(goal, SDisj):
        return "; ".join(_sub_goal(g, last=i == len(goal.goals) - 1, in_conj=False) for i, g in enumerate(goal.goals))
    if isinstance(goal, SQuant):
        return f"{goal.kind} {', '.join(goal.binders)}. {print_goal(goal.body)}"
    raise TypeError(f"unexpected goal {goal!r}")


def _sub_goal(goal: SGoal, last: bool, in_conj: bool) -> str:
    text = print_goal(goal)
    if isinstance(goal, SDisj) or (in_conj and isinstance(goal, SConj)):
        return f"({text})"
    if isinstance(goal, SQuant) and not last:
        return f"({text})"
    return text


def _unit(goal: SGoal) -> str:
    text = print_goal(goal)
    if isinstance(goal, (SConj, SDisj)):
        return f"({text})"
    return text


def print_check(decl: CheckDecl) -> str:
    """Формула директивы: H1, ..., Hk => A"""
    conclusion = print_goal(decl.conclusion)
    if not decl.hypotheses:
        return conclusion
    hypotheses = ", ".join(_unit(h) for h in decl.hypotheses)
    return f"{hypotheses} => {conclusion}"


def print_decl(decl: Decl) -> str:
    if isinstance(decl, NameTypeDecl):
        return f"{decl.name} : name_type."
    if isinstance(decl, DataTypeDecl):
        return f"{decl.name} : type."
    if isinstance(decl, AliasDecl):
        return f"type {decl.name} = {print_type(decl.type)}."
    if isinstance(decl, ConstructorDecl):
        if not decl.params:
            return f"{decl.name} : {decl.result}."
        if len(decl.params) == 1:
            return f"{decl.name} : {print_type(decl.params[0])} -> {decl.result}."
        params = ",".join(print_type(p) for p in decl.params)
        return f"{decl.name} : ({params}) -> {decl.result}."
    if isinstance(decl, PredDecl):
        if not decl.params:
            return f"pred {decl.name}."
        return f"pred {decl.name}(" + ",".join(print_type(p) for p in decl.params) + ")."
    if isinstance(decl, FuncDecl):
        params = ",".join(print_type(p) for p in decl.params)
        return f"func {decl.name}({params}) = {print_type(decl.result)}."
    if isinstance(decl, InfixDecl):
        return f"{decl.assoc} {decl.symbol} {decl.precedence}."
    if isinstance(decl, ClauseDecl):
        head = print_atom(decl.head)
        if decl.body is None:
            return f"{head}."
        return f"{head} :- {print_goal(decl.body)}."
    if isinstance(decl, FuncClause):
        call = print_term(decl.call)
        text = f"{call} = {print_term(decl.result)}"
        if decl.body is None:
            return f"{text}."
        return f"{text} :- {print_goal(decl.body)}."
    if isinstance(decl, CheckDecl):
        label = decl.label.replace('"', '\\"')
        return f'#check "{label}" {decl.bound} : {print_check(decl)}.'
    raise TypeError(f"unexpected declaration {decl!r}")


def print_program(program: SurfaceProgram) -> str:
    return "\n".join(print_decl(item) for item in program.items) + "\n"


# -- ядро ----------------------------------------------------------------------

class Namer:
    """Уникальные отображаемые имена для переменных и имён одной клаузы или отчёта"""

    def __init__(self):
        self._assigned: dict[object, str] = {}
        self._used: set[str] = set()

    def _assign(self, key: object, base: str) -> str:
        if key in self._assigned:
            return self._assigned[key]
        candidate = base
        suffix = 1
        while candidate in self._used:
            candidate = f"{base}{suffix}"
            suffix += 1
        self._used.add(candidate)
        self._assigned[key] = candidate
        return candidate

    def var(self, var: Var) -> str:
        if var.spelling == "_":
            # анонимная переменная встречается один раз
            return "_"
        base = var.spelling if var.spelling and var.spelling[0].isupper() else "V"
        return self._assign(var, base)

    def name(self, name: Name) -> str:
        base = name.spelling if name.spelling and name.spelling[0].islower() else "a"
        return self._assign(name, base)

    def rename(self, key: object, base: str) -> str:
        """Закрепить за ключом отображаемое имя с основой `base`"""
        return self._assign(key, base)

    def reserve(self, text: str) -> None:
        self._used.add(text)


class CorePrinter:
    """Печать термов и целей ядра в конкретном синтаксисе"""

    def __init__(self, signature: Signature, namer: Optional[Namer] = None, show_perms: bool = True):
        self.signature = signature
        self.namer = namer or Namer()
        self.show_perms = show_perms

    def _arity(self, fn: str) -> Optional[int]:
        if fn == CONS:
            return 2
        if fn == NIL:
            return 0
        constructor = self.signature.lookup_constructor(fn)
        return None if constructor is None else constructor.arity

    def _args(self, arg: Term, arity: Optional[int]) -> list[Term]:
        if arity is None:
            items: list[Term] = []
            while isinstance(arg, Pair):
                items.append(arg.left)
                arg = arg.right
            return items + ([] if isinstance(arg, UnitTerm) and not items else [arg])
        parts = split_tuple(arg, arity)
        return parts if parts is not None else [arg]

    def _is_infix(self, term: Term) -> bool:
        return isinstance(term, App) and term.fn in self.signature.infix and self._arity(term.fn) == 2

    def _operand(self, term: Term) -> str:
        text = self.term(term)
        return f"({text})" if self._is_infix(term) else text

    def term(self, term: Term) -> str:
        if isinstance(term, Name):
            return self.namer.name(term)
        if isinstance(term, Susp):
            var = self.namer.var(term.var)
            if term.perm.is_identity() or not self.show_perms:
                return var
            swaps = "".join(f"({self.term(a)} {self.term(b)})" for a, b in term.perm.swaps)
            return f"{swaps}·{var}"
        if isinstance(term, UnitTerm):
            return "()"
        if isinstance(term, Pair):
            items = self._args(term, None)
            return "(" + ",".join(self.term(t) for t in items) + ")"
        if isinstance(term, Abs):
            return f"{self.namer.name(term.name)}\\{self._operand(term.body)}"
        if isinstance(term, Conc):
            inner = self.term(term.term)
            if self._is_infix(term.term) or isinstance(term.term, Abs):
                inner = f"({inner})"
            return f"{inner}@{self.namer.name(term.name)}"
        if isinstance(term, App):
            if term.fn == NIL:
                return "[]"
            if term.fn == CONS:
                return self._list(term)
            args = self._args(term.arg, self._arity(term.fn))
            if self._is_infix(term):
                return f"{self._operand(args[0])} {term.fn} {self._operand(args[1])}"
            if not args:
                return term.fn
            return term.fn + "(" + ",".join(self.term(a) for a in args) + ")"
        raise TypeError(f"unexpected term {term!r}")

    def _list(self, term: App) -> str:
        items: list[str] = []
        while isinstance(term, App) and term.fn == CONS and isinstance(term.arg, Pair):
            items.append(self.term(term.arg.left))
            term = term.arg.right
        if isinstance(term, App) and term.fn == NIL:
            return "[" + ",".join(items) + "]"
        return "[" + ",".join(items) + "|" + self.term(term) + "]"

    def atom(self, pred: str, arg: Term) -> str:
        arity = len(self.signature.predicates.get(pred, ())) if pred in self.signature.predicates else None
        args = self._args(arg, arity)
        if not args:
            return pred
        return pred + "(" + ",".join(self.term(a) for a in args) + ")"

    def goal(self, goal: Goal) -> str:
        if isinstance(goal, Top):
            return "true"
        if isinstance(goal, Bottom):
            return "false"
        if isinstance(goal, Eq):
            return f"{self.term(goal.left)} = {self.term(goal.right)}"
        if isinstance(goal, Fresh):
            return f"{self.term(goal.name)} # {self.term(goal.term)}"
        if isinstance(goal, Atom):
            return self.atom(goal.pred, goal.arg)
        if isinstance(goal, (Conj, Disj)):
            separator = ", " if isinstance(goal, Conj) else "; "
            parts = []
            for i, sub in enumerate(goal.goals):
                text = self.goal(sub)
                nested = isinstance(sub, Disj) or (isinstance(goal, Conj) and isinstance(sub, Conj))
                quantified = isinstance(sub, (Exists, New, ForallStar)) and i < len(goal.goals) - 1
                parts.append(f"({text})" if nested or quantified else text)
            return separator.join(parts)
        if isinstance(goal, New):
            return f"new {self.namer.name(goal.name)}. {self.goal(goal.body)}"
        if isinstance(goal, Exists):
            return f"exists {self.namer.var(goal.var)}. {self.goal(goal.body)}"
        if isinstance(goal, ForallStar):
            return f"forall* {self.namer.var(goal.var)}. {self.goal(goal.body)}"
        raise TypeError(f"unexpected goal {goal!r}")

    def clause(self, clause: Clause) -> str:
        head = self.atom(clause.pred, clause.head)
        if isinstance(clause.body, Top):
            return f"{head}."
        return f"{head} :- {self.goal(clause.body)}."


def print_core_term(term: Term, signature: Signature, namer: Optional[Namer] = None) -> str:
    return CorePrinter(signature, namer).term(term)


def print_core_goal(goal: Goal, signature: Signature, namer: Optional[Namer] = None) -> str:
    return CorePrinter(signature, namer).goal(goal)


def print_clause(clause: Clause, signature: Signature) -> str:
    """Каждая клауза печатается со своим пространством имён"""
    return CorePrinter(signature, show_perms=False).clause(clause)


def _type_text(tp: TypeExpr) -> str:
    return str(tp)


def print_signature(signature: Signature) -> list[str]:
    """Объявления Σ в конкретном синтаксисе; списочные типы порождаются заново при разборе"""
    lines = [f"{nu} : name_type." for nu in signature.name_types]
    user_types = [d for d in signature.data_types if d not in signature.list_types]
    lines += [f"{d} : type." for d in user_types]
    for symbol, (assoc, precedence) in signature.infix.items():
        lines.append(f"{assoc} {symbol} {precedence}.")
    for d in user_types:
        for c in signature.constructors_of(d):
            if not c.params:
                lines.append(f"{c.name} : {d}.")
            elif len(c.params) == 1:
                lines.append(f"{c.name} : {_type_text(c.params[0])} -> {d}.")
            else:
                params = ",".join(_type_text(p) for p in c.params)
                lines.append(f"{c.name} : ({params}) -> {d}.")
    for pred, params in signature.predicates.items():
        if params:
            lines.append(f"pred {pred}(" + ",".join(_type_text(p) for p in params) + ").")
        else:
            lines.append(f"pred {pred}.")
    return lines


def print_core_program(signature: Signature, clauses: list[Clause]) -> str:
    """Самодостаточный файл: сигнатура и клаузы"""
    lines = print_signature(signature)
    lines.append("")
    lines += [print_clause(c, signature) for c in clauses]
    return "\n".join(lines) + "\n"
