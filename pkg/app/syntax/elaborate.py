"""
Элаборация: сигнатура из объявлений, клаузы в форме ∀x⃗.G ⊃ p(t), директивы #check.

Голова клаузы после элаборации линейна и не содержит имён и абстракций:
абстракция x\\s заменяется свежей переменной F, а связь восстанавливается в
теле через new x и конкрецию F@x.
"""
import logging
from collections import Counter
from typing import Optional

from ..core.exceptions import ParseError, TypeCheckError
from ..kernel.nominal import fresh_var
from ..kernel.substitution import subst_goal
from ..models.goals import Eq, Fresh, Goal, Conj, conj, exists_many, free_vars, new_many
from ..models.program import CheckDirective, Clause, Constructor, Program, Signature
from ..models.terms import (
    Abs, App, Conc, Name, Pair, Susp, Term, Var, iter_subterms, term_names, term_vars,
    tuple_term, var_term,
)
from ..models.types import AbsType, BaseType, NameType, ProdType, TypeExpr, UnitType, product_of
from .printer import print_check
from .surface import (
    AliasDecl, CheckDecl, ClauseDecl, ConstructorDecl, DataTypeDecl, FuncClause, FuncDecl,
    NameTypeDecl, PredDecl, SType, STypeAbs, STypeList, STypeName, STypeTuple, STypeUnit,
    SurfaceProgram,
)
from .typecheck import TypeChecker, TypedClause, register_list_type

logger = logging.getLogger(__name__)


# -- сигнатура -----------------------------------------------------------------

class _SignatureBuilder:
    def __init__(self, program: SurfaceProgram):
        self.program = program
        self.signature = Signature(infix=program.infix_table())
        self.aliases: dict[str, AliasDecl] = {}
        self._declared: set[str] = set()

    def _declare(self, name: str, pos) -> None:
        if name in self._declared:
            raise ParseError(f"symbol {name} declared twice", pos)
        self._declared.add(name)

    def lower(self, tp: SType, expanding: tuple[str, ...] = ()) -> TypeExpr:
        if isinstance(tp, STypeUnit):
            return UnitType()
        if isinstance(tp, STypeTuple):
            return product_of([self.lower(item, expanding) for item in tp.items])
        if isinstance(tp, STypeList):
            return register_list_type(self.signature, self.lower(tp.elem, expanding))
        if isinstance(tp, STypeAbs):
            if tp.nu not in self.signature.name_types:
                raise TypeCheckError(f"{tp.nu} is not a name type", tp.pos)
            return AbsType(tp.nu, self.lower(tp.body, expanding))
        if isinstance(tp, STypeName):
            if tp.name in self.signature.name_types:
                return NameType(tp.name)
            if tp.name in self.signature.constructors:
                return BaseType(tp.name)
            if tp.name in self.aliases:
                if tp.name in expanding:
                    raise TypeCheckError(f"cyclic type alias {tp.name}", tp.pos)
                return self.lower(self.aliases[tp.name].type, expanding + (tp.name,))
            raise ParseError(f"undeclared type {tp.name}", tp.pos)
        raise TypeError(f"unexpected type {tp!r}")

    def build(self) -> Signature:
        sig = self.signature
        # сначала имена типов, чтобы порядок объявлений не имел значения
        for item in self.program.items:
            if isinstance(item, NameTypeDecl):
                self._declare(item.name, item.pos)
                sig.name_types.append(item.name)
            elif isinstance(item, DataTypeDecl):
                self._declare(item.name, item.pos)
                sig.data_types.append(item.name)
                sig.constructors[item.name] = []
            elif isinstance(item, AliasDecl):
                self._declare(item.name, item.pos)
                self.aliases[item.name] = item
        for item in self.program.items:
            if isinstance(item, ConstructorDecl):
                self._declare(item.name, item.pos)
                if item.result not in sig.constructors or item.result in sig.list_types:
                    raise ParseError(f"undeclared data type {item.result}", item.pos)
                params = tuple(self.lower(p) for p in item.params)
                sig.constructors[item.result].append(Constructor(item.name, params, item.result))
            elif isinstance(item, PredDecl):
                self._declare(item.name, item.pos)
                sig.add_predicate(item.name, tuple(self.lower(p) for p in item.params))
            elif isinstance(item, (FuncDecl, FuncClause)):
                raise ParseError("function definitions must be flattened before elaboration", item.pos)
        for alias in self.aliases.values():
            self.lower(alias.type, (alias.name,))
        return sig


def build_signature(program: SurfaceProgram) -> Signature:
    """Σ из объявлений; алиасы раскрываются, списочные типы регистрируются"""
    return _SignatureBuilder(program).build()


# -- клаузы --------------------------------------------------------------------

class _HeadAbstraction:
    def __init__(self, var: Var, name: Name, body: Term, body_type: TypeExpr):
        self.var = var
        self.name = name
        self.body = body
        self.body_type = body_type


class _HeadStripper:
    """Замена абстракций головы переменными; имена вне абстракций запрещены"""

    def __init__(self, signature: Signature):
        self.signature = signature
        self.abstractions: list[_HeadAbstraction] = []

    def strip(self, term: Term, tp: TypeExpr) -> Term:
        if isinstance(term, Abs):
            if not isinstance(tp, AbsType):
                raise TypeCheckError(f"abstraction at non-abstraction type {tp}")
            var = fresh_var(tp, "F")
            self.abstractions.append(_HeadAbstraction(var, term.name, term.body, tp.body))
            return var_term(var)
        if isinstance(term, (Name, Conc)):
            raise TypeCheckError(f"free name in clause head: {term_names(term).pop()}")
        if isinstance(term, Pair):
            if not isinstance(tp, ProdType):
                raise TypeCheckError(f"pair at non-product type {tp}")
            return Pair(self.strip(term.left, tp.left), self.strip(term.right, tp.right))
        if isinstance(term, App):
            if not isinstance(tp, BaseType):
                raise TypeCheckError(f"constructor {term.fn} at non-data type {tp}")
            constructor = self.signature.constructor(tp.name, term.fn)
            return App(term.fn, self.strip(term.arg, constructor.arg_type))
        return term


def _linearize(args: list[Term]) -> tuple[list[Term], list[Goal]]:
    """Повторное вхождение V заменяется на V2 с уравнением V2 = V"""
    seen: set[Var] = set()
    repeats: Counter = Counter()
    equations: list[Goal] = []

    def walk(term: Term) -> Term:
        if isinstance(term, Susp):
            var = term.var
            if var not in seen:
                seen.add(var)
                return term
            repeats[var] += 1
            copy = fresh_var(var.type, f"{var.spelling}{repeats[var] + 1}")
            equations.append(Eq(var_term(copy), term, var.type))
            return var_term(copy)
        if isinstance(term, Pair):
            left = walk(term.left)
            return Pair(left, walk(term.right))
        if isinstance(term, App):
            return App(term.fn, walk(term.arg))
        return term

    return [walk(a) for a in args], equations


def _implied_freshness(goal: Goal, names: set[Name], head_vars: set[Var]) -> bool:
    """a # t при a из new головы и t только из переменных головы следует из штампов"""
    if not isinstance(goal, Fresh) or goal.name not in names:
        return False
    if term_names(goal.term) or any(isinstance(t, Conc) for t in iter_subterms(goal.term)):
        return False
    return all(v in head_vars for v in term_vars(goal.term))


def elaborate_clause(typed: TypedClause, signature: Signature, index: int = 1) -> Clause:
    """TypedClause -> ∀x⃗.G ⊃ p(t)"""
    params = signature.predicates[typed.pred]
    stripper = _HeadStripper(signature)
    stripped = [stripper.strip(arg, tp) for arg, tp in zip(typed.args, params)]

    original_counts = Counter(v for arg in typed.args for v in term_vars(arg))
    substitution: dict[Var, Term] = {}
    abstraction_eqs: list[Goal] = []
    for abstraction in stripper.abstractions:
        conc_term = Conc(var_term(abstraction.var), abstraction.name, abstraction.body_type)
        body = abstraction.body
        if (
            isinstance(body, Susp)
            and body.perm.is_identity()
            and original_counts[body.var] == 1
            and body.var not in substitution
        ):
            substitution[body.var] = conc_term
        else:
            abstraction_eqs.append(Eq(conc_term, body, abstraction.body_type))

    head_args, linear_eqs = _linearize(stripped)
    head = tuple_term(head_args)
    head_vars = term_vars(head)

    body = subst_goal(typed.body, substitution) if substitution else typed.body
    names = set(typed.names)
    if names:
        conjuncts = body.goals if isinstance(body, Conj) else (body,)
        body = conj([g for g in conjuncts if not _implied_freshness(g, names, set(head_vars))])

    inner = conj(abstraction_eqs + [body])
    head_var_set = set(head_vars)
    local = [v for v in free_vars(inner) if v not in head_var_set]
    full_body = conj(linear_eqs + [new_many(typed.names, exists_many(local, inner))])
    return Clause(
        pred=typed.pred,
        head=head,
        variables=tuple(head_vars),
        body=full_body,
        index=index,
        pos=typed.pos,
    )


# -- программа -----------------------------------------------------------------

def elaborate(program: SurfaceProgram, source: Optional[SurfaceProgram] = None) -> Program:
    """Элаборировать разобранную и раскрытую программу.

    `source` - исходная программа до раскрытия функций; из неё берётся текст
    директив для отчётов.
    """
    signature = build_signature(program)
    checker = TypeChecker(signature)
    result = Program(signature=signature, path=program.path)
    counters: Counter = Counter()
    original_checks = {d.label: d for d in (source or program).of_kind(CheckDecl)}

    for item in program.items:
        if isinstance(item, ClauseDecl):
            typed = checker.check_clause(item.head, item.body, item.pos)
            counters[typed.pred] += 1
            result.clauses.append(elaborate_clause(typed, signature, counters[typed.pred]))
        elif isinstance(item, CheckDecl):
            if any(c.label == item.label for c in result.checks):
                raise ParseError(f"duplicate check label {item.label!r}", item.pos)
            typed = checker.check_directive(item.hypotheses, item.conclusion)
            result.checks.append(CheckDirective(
                label=item.label,
                bound=item.bound,
                hypotheses=tuple(typed.hypotheses),
                conclusion=typed.conclusion,
                names=tuple(typed.names),
                variables=tuple(typed.variables),
                text=print_check(original_checks.get(item.label, item)),
                pos=item.pos,
            ))
    logger.info(
        f"Elaborated {program.path or '<text>'}: {len(result.clauses)} clauses, "
        f"{len(result.checks)} checks"
    )
    return result
