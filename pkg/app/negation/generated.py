"""
Сгенерированные по типам предикаты: неравенство neq, несвежесть nfr и генераторы gen
"""
import logging

from ..core.constants import GEN_PREFIX, NEQ_PREFIX, NFR_PREFIX
from ..kernel.nominal import fresh_name, fresh_var
from ..models.goals import (
    BOTTOM, TOP, Atom, Eq, Exists, Fresh, Goal, New, conj, disj, exists_many,
)
from ..models.program import Clause, Signature
from ..models.terms import UNIT_TERM, Abs, App, Conc, Pair, Term, Var, tuple_term, var_term
from ..models.types import AbsType, BaseType, NameType, ProdType, TypeExpr, UnitType

logger = logging.getLogger(__name__)


def type_key(tp: TypeExpr, signature: Signature) -> str:
    """Часть имени предиката для типа; списочные типы получают имя list_<elem>"""
    if isinstance(tp, BaseType):
        if tp.name in signature.list_types:
            return "list_" + type_key(signature.list_types[tp.name], signature)
        return tp.name
    if isinstance(tp, NameType):
        return tp.name
    if isinstance(tp, UnitType):
        return "unit"
    if isinstance(tp, ProdType):
        return "pair_" + type_key(tp.left, signature) + "_" + type_key(tp.right, signature)
    if isinstance(tp, AbsType):
        return "abs_" + tp.nu + "_" + type_key(tp.body, signature)
    raise TypeError(f"no predicate name for type {tp}")


def neq_name(data_type: str, signature: Signature) -> str:
    return NEQ_PREFIX + type_key(BaseType(data_type), signature)


def nfr_name(nu: str, data_type: str, signature: Signature) -> str:
    return f"{NFR_PREFIX}{nu}_{type_key(BaseType(data_type), signature)}"


def gen_name(data_type: str, signature: Signature) -> str:
    return GEN_PREFIX + type_key(BaseType(data_type), signature)


def param_vars(params: tuple[TypeExpr, ...], spelling: str) -> list[Var]:
    """Отдельная переменная на каждый параметр: X1, ..., Xn"""
    if len(params) == 1:
        return [fresh_var(params[0], spelling)]
    return [fresh_var(p, f"{spelling}{i}") for i, p in enumerate(params, start=1)]


def _split_pair(tp: ProdType, term: Term) -> tuple[Term, Term, list[Var], list[Goal]]:
    """π1(t), π2(t); для не-пары вводятся переменные и уравнение t = (X1,X2)"""
    if isinstance(term, Pair):
        return term.left, term.right, [], []
    left = fresh_var(tp.left, "P")
    right = fresh_var(tp.right, "P")
    pair = Pair(var_term(left), var_term(right))
    return var_term(left), var_term(right), [left, right], [Eq(term, pair, tp)]


# -- неравенство ---------------------------------------------------------------

class GoalBuilder:
    """Типонаправленные цели neq⟦τ⟧, nfr⟦ν,τ⟧ и gen⟦τ⟧ над данной сигнатурой"""

    def __init__(self, signature: Signature):
        self.signature = signature

    def neq(self, tp: TypeExpr, left: Term, right: Term) -> Goal:
        if isinstance(tp, UnitType):
            return BOTTOM
        if isinstance(tp, ProdType):
            l1, r1, vars1, eqs1 = _split_pair(tp, left)
            l2, r2, vars2, eqs2 = _split_pair(tp, right)
            body = disj([self.neq(tp.left, l1, l2), self.neq(tp.right, r1, r2)])
            return exists_many(vars1 + vars2, conj(eqs1 + eqs2 + [body]))
        if isinstance(tp, BaseType):
            return Atom(neq_name(tp.name, self.signature), Pair(left, right))
        if isinstance(tp, AbsType):
            a = fresh_name(tp.nu, "a")
            return New(a, self.neq(tp.body, Conc(left, a, tp.body), Conc(right, a, tp.body)))
        if isinstance(tp, NameType):
            return Fresh(left, right, tp.name, tp)
        raise TypeError(f"neq at unexpected type {tp}")

    def nfr(self, nu: str, tp: TypeExpr, name: Term, term: Term) -> Goal:
        if isinstance(tp, UnitType):
            return BOTTOM
        if isinstance(tp, ProdType):
            left, right, variables, eqs = _split_pair(tp, term)
            body = disj([self.nfr(nu, tp.left, name, left), self.nfr(nu, tp.right, name, right)])
            return exists_many(variables, conj(eqs + [body]))
        if isinstance(tp, BaseType):
            return Atom(nfr_name(nu, tp.name, self.signature), Pair(name, term))
        if isinstance(tp, AbsType):
            b = fresh_name(tp.nu, "b")
            return New(b, self.nfr(nu, tp.body, name, Conc(term, b, tp.body)))
        if isinstance(tp, NameType):
            if tp.name == nu:
                return Eq(name, term, tp)
            return BOTTOM
        raise TypeError(f"nfr at unexpected type {tp}")

    def gen(self, tp: TypeExpr, term: Term) -> Goal:
        if isinstance(tp, UnitType):
            return Eq(term, UNIT_TERM, tp)
        if isinstance(tp, ProdType):
            left, right, variables, eqs = _split_pair(tp, term)
            return exists_many(variables, conj(eqs + [self.gen(tp.left, left), self.gen(tp.right, right)]))
        if isinstance(tp, BaseType):
            return Atom(gen_name(tp.name, self.signature), term)
        if isinstance(tp, AbsType):
            a = fresh_name(tp.nu, "a")
            body = fresh_var(tp.body, "X")
            return New(a, Exists(body, conj([
                Eq(term, Abs(a, var_term(body)), tp),
                self.gen(tp.body, var_term(body)),
            ])))
        if isinstance(tp, NameType):
            return TOP
        raise TypeError(f"gen at unexpected type {tp}")

    # -- определения -----------------------------------------------------------

    def neq_def(self, data_type: str) -> list[Clause]:
        """neq_δ: одинаковый конструктор с различием в аргументах или разные конструкторы"""
        pred = neq_name(data_type, self.signature)
        constructors = self.signature.constructors_of(data_type)
        clauses: list[Clause] = []
        for c in constructors:
            xs = param_vars(c.params, "X")
            ys = param_vars(c.params, "Y")
            body = self.neq(c.arg_type, tuple_term([var_term(x) for x in xs]), tuple_term([var_term(y) for y in ys]))
            if body == BOTTOM:
                continue
            head = Pair(App(c.name, tuple_term([var_term(x) for x in xs])), App(c.name, tuple_term([var_term(y) for y in ys])))
            clauses.append(Clause(pred, head, tuple(xs + ys), body))
        for c in constructors:
            others = [g for g in constructors if g.name != c.name]
            if not others:
                continue
            xs = [fresh_var(p, "_") for p in c.params]
            other = fresh_var(BaseType(data_type), "U")
            alternatives = []
            for g in others:
                ys = param_vars(g.params, "Y")
                pattern = App(g.name, tuple_term([var_term(y) for y in ys]))
                alternatives.append(exists_many(ys, Eq(var_term(other), pattern, BaseType(data_type))))
            head = Pair(App(c.name, tuple_term([var_term(x) for x in xs])), var_term(other))
            clauses.append(Clause(pred, head, tuple(xs + [other]), disj(alternatives)))
        return _indexed(clauses)

    def nfr_def(self, nu: str, data_type: str) -> list[Clause]:
        pred = nfr_name(nu, data_type, self.signature)
        clauses: list[Clause] = []
        for c in self.signature.constructors_of(data_type):
            a = fresh_var(NameType(nu), "A")
            xs = param_vars(c.params, "X")
            body = self.nfr(nu, c.arg_type, var_term(a), tuple_term([var_term(x) for x in xs]))
            if body == BOTTOM:
                continue
            head = Pair(var_term(a), App(c.name, tuple_term([var_term(x) for x in xs])))
            clauses.append(Clause(pred, head, tuple([a] + xs), body))
        return _indexed(clauses)

    def gen_def(self, data_type: str) -> list[Clause]:
        pred = gen_name(data_type, self.signature)
        clauses: list[Clause] = []
        for c in self.signature.constructors_of(data_type):
            xs = param_vars(c.params, "X")
            body = conj([self.gen(x.type, var_term(x)) for x in xs])
            head = App(c.name, tuple_term([var_term(x) for x in xs]))
            clauses.append(Clause(pred, head, tuple(xs), body))
        return _indexed(clauses)


def _indexed(clauses: list[Clause]) -> list[Clause]:
    return [
        Clause(c.pred, c.head, c.variables, c.body, index=i)
        for i, c in enumerate(clauses, start=1)
    ]


def neq_goal(signature: Signature, tp: TypeExpr, left: Term, right: Term) -> Goal:
    return GoalBuilder(signature).neq(tp, left, right)


def nfr_goal(signature: Signature, nu: str, tp: TypeExpr, name: Term, term: Term) -> Goal:
    return GoalBuilder(signature).nfr(nu, tp, name, term)


def gen_goal(signature: Signature, tp: TypeExpr, term: Term) -> Goal:
    return GoalBuilder(signature).gen(tp, term)


def generator_clauses(
    signature: Signature, skip: frozenset[str] = frozenset(),
) -> tuple[dict[str, tuple[TypeExpr, ...]], list[Clause]]:
    """gen_δ для всех типов данных; генераторы из `skip` определены пользователем"""
    builder = GoalBuilder(signature)
    predicates: dict[str, tuple[TypeExpr, ...]] = {}
    clauses: list[Clause] = []
    for data_type in list(signature.data_types):
        if gen_name(data_type, signature) in skip:
            continue
        predicates[gen_name(data_type, signature)] = (BaseType(data_type),)
        clauses += builder.gen_def(data_type)
    logger.debug(f"Generated {len(clauses)} generator clauses for {len(predicates)} types")
    return predicates, clauses


def equality_clauses(signature: Signature) -> tuple[dict[str, tuple[TypeExpr, ...]], list[Clause]]:
    """neq_δ и nfr_ν_δ для всех типов данных и именных типов"""
    builder = GoalBuilder(signature)
    predicates: dict[str, tuple[TypeExpr, ...]] = {}
    clauses: list[Clause] = []
    for data_type in list(signature.data_types):
        predicates[neq_name(data_type, signature)] = (BaseType(data_type), BaseType(data_type))
        clauses += builder.neq_def(data_type)
        for nu in signature.name_types:
            predicates[nfr_name(nu, data_type, signature)] = (NameType(nu), BaseType(data_type))
            clauses += builder.nfr_def(nu, data_type)
    return predicates, clauses
