"""
Устранение отрицания: not^G для целей, not^D_i для клауз, not^D для определений
и сборка дополненной программы Δ⁻
"""
import logging
from dataclasses import dataclass, field

from ..core.constants import CLAUSE_SEPARATOR, GEN_PREFIX, NOT_PREFIX
from ..core.exceptions import FragmentViolation, SynthesisError
from ..kernel.nominal import fresh_var
from ..kernel.substitution import subst_goal, subst_term
from ..models.goals import (
    BOTTOM, TOP, Atom, Bottom, Conj, Disj, Eq, Exists, ForallStar, Fresh, Goal, New, Top,
    conj, disj, exists_many,
)
from ..models.program import Clause, Program, Signature
from ..models.terms import term_vars, tuple_term, var_term
from ..models.types import TypeExpr
from .complement import is_complement_closed, term_complement
from .generated import GoalBuilder, equality_clauses, generator_clauses, param_vars

logger = logging.getLogger(__name__)


def not_name(pred: str) -> str:
    return NOT_PREFIX + pred


def not_clause_name(pred: str, index: int) -> str:
    return f"{NOT_PREFIX}{pred}{CLAUSE_SEPARATOR}{index}"


def not_goal(goal: Goal, signature: Signature) -> Goal:
    """Отрицание цели: нормальная форма отрицания, ∃ переходит в ∀*, Ν самодвойствен"""
    builder = GoalBuilder(signature)

    def negate(g: Goal) -> Goal:
        if isinstance(g, Top):
            return BOTTOM
        if isinstance(g, Bottom):
            return TOP
        if isinstance(g, Atom):
            return Atom(not_name(g.pred), g.arg)
        if isinstance(g, Eq):
            return builder.neq(g.type, g.left, g.right)
        if isinstance(g, Fresh):
            return builder.nfr(g.sort, g.type, g.name, g.term)
        if isinstance(g, Conj):
            return disj([negate(sub) for sub in g.goals])
        if isinstance(g, Disj):
            return conj([negate(sub) for sub in g.goals])
        if isinstance(g, Exists):
            return ForallStar(g.var, negate(g.body))
        if isinstance(g, New):
            return New(g.name, negate(g.body))
        if isinstance(g, ForallStar):
            raise FragmentViolation("forall* goals cannot be negated")
        raise TypeError(f"unexpected goal {g!r}")

    return negate(goal)


def not_clause(clause: Clause, signature: Signature) -> list[Clause]:
    """Факты для дополнения головы и клауза с отрицанием тела"""
    if not is_complement_closed(clause.head):
        raise FragmentViolation(
            f"head of clause {clause.index} of {clause.pred} is outside the complement-closed fragment",
            clause.pos,
        )
    pred = not_clause_name(clause.pred, clause.index)
    head_type = signature.pred_type(clause.pred)
    try:
        complement = term_complement(signature, head_type, clause.head)
        negated_body = not_goal(clause.body, signature)
    except FragmentViolation as e:
        raise FragmentViolation(f"{clause.pred}, clause {clause.index}: {e.message}", clause.pos) from e
    result = [
        Clause(pred, u, tuple(term_vars(u)), TOP, index=i, pos=clause.pos)
        for i, u in enumerate(complement, start=1)
    ]
    result.append(Clause(pred, clause.head, clause.variables, negated_body, index=len(result) + 1, pos=clause.pos))
    return result


def merge_clause(pred: str, params: tuple[TypeExpr, ...], count: int) -> Clause:
    """p¬(X⃗) :- p¬_1(X⃗), ..., p¬_n(X⃗); при n = 0 тело пусто"""
    xs = param_vars(params, "X") if params else []
    arg = tuple_term([var_term(x) for x in xs])
    body = conj([Atom(not_clause_name(pred, i), arg) for i in range(1, count + 1)])
    return Clause(not_name(pred), arg, tuple(xs), body)


def not_def(pred: str, clauses: list[Clause], signature: Signature) -> list[Clause]:
    """not^D(def(p, Δ))"""
    result: list[Clause] = []
    for clause in clauses:
        result += not_clause(clause, signature)
    result.append(merge_clause(pred, signature.predicates[pred], len(clauses)))
    return result


def inline_clause_negations(clauses: list[Clause], signature: Signature) -> list[Clause]:
    """Подставить определения p¬_i в тело p¬: каждый p¬_i используется один раз"""
    by_pred: dict[str, list[Clause]] = {}
    for c in clauses:
        by_pred.setdefault(c.pred, []).append(c)
    result: list[Clause] = []
    for c in clauses:
        if CLAUSE_SEPARATOR in c.pred and c.pred.startswith(NOT_PREFIX):
            continue
        if c.pred.startswith(NOT_PREFIX) and c.pred[len(NOT_PREFIX):] in signature.predicates:
            result.append(_inline_merge(c, by_pred, signature))
        else:
            result.append(c)
    return result


def _inline_merge(clause: Clause, by_pred: dict[str, list[Clause]], signature: Signature) -> Clause:
    source_pred = clause.pred[len(NOT_PREFIX):]
    arg_type = signature.pred_type(source_pred)
    conjuncts: list[Goal] = []
    for atom in (clause.body.goals if isinstance(clause.body, Conj) else (clause.body,)):
        if not isinstance(atom, Atom) or atom.pred not in by_pred:
            conjuncts.append(atom)
            continue
        alternatives = []
        for definition in by_pred[atom.pred]:
            renaming = {v: var_term(fresh_var(v.type, v.spelling)) for v in definition.variables}
            head = subst_term(definition.head, renaming)
            body = subst_goal(definition.body, renaming)
            local = [t.var for t in renaming.values()]
            alternatives.append(exists_many(local, conj([Eq(atom.arg, head, arg_type), body])))
        conjuncts.append(disj(alternatives))
    return Clause(clause.pred, clause.head, clause.variables, conj(conjuncts), clause.index, clause.pos)


@dataclass
class NegatedProgram:
    """Δ⁻ вместе с расширенной сигнатурой"""
    signature: Signature
    clauses: list[Clause] = field(default_factory=list)
    generated: list[str] = field(default_factory=list)


def _check_fresh(name: str, reserved: set[str]) -> None:
    if name in reserved:
        raise SynthesisError(f"generated predicate {name} collides with a declared symbol")


def user_generators(program: Program) -> frozenset[str]:
    """gen_<δ>, для которых пользователь написал собственные клаузы"""
    defined = {c.pred for c in program.clauses}
    return frozenset(p for p in defined if p.startswith(GEN_PREFIX))


def negate_program(program: Program, inline: bool = False) -> NegatedProgram:
    """Δ⁻ = not^D(def(p,Δ)) для всех p плюс neq/nfr/gen для всех типов"""
    user = program.signature
    signature = user.copy()
    custom_gens = user_generators(program)
    eq_preds, eq_clauses = equality_clauses(signature)
    gen_preds, gen_clauses = generator_clauses(signature, skip=custom_gens)
    # генераторы, на которые программа ссылается без определения, синтезируются
    reserved = user.symbols() - set(gen_preds)

    generated: list[str] = []
    for pred, params in list(eq_preds.items()) + list(gen_preds.items()):
        _check_fresh(pred, reserved)
        signature.add_predicate(pred, params)
        generated.append(pred)

    clauses: list[Clause] = []
    for pred, params in user.predicates.items():
        if pred in gen_preds:
            definition = [c for c in gen_clauses if c.pred == pred]
        else:
            definition = program.clauses_of(pred)
        for name in [not_name(pred)] + [not_clause_name(pred, c.index) for c in definition]:
            _check_fresh(name, reserved)
            signature.add_predicate(name, params)
            generated.append(name)
        clauses += not_def(pred, definition, signature)

    if inline:
        clauses = inline_clause_negations(clauses, user)
        for pred in [p for p in generated if p.startswith(NOT_PREFIX) and CLAUSE_SEPARATOR in p]:
            del signature.predicates[pred]
            generated.remove(pred)

    clauses += eq_clauses + gen_clauses
    logger.info(f"Negation synthesized: {len(clauses)} clauses, {len(generated)} generated predicates")
    return NegatedProgram(signature, clauses, generated)
