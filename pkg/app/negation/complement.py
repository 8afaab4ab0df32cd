"""
Дополнение линейных термов без имён: not⟦τ⟧(t)
"""
import logging

from ..core.exceptions import FragmentViolation
from ..kernel.nominal import fresh_var
from ..models.program import Signature
from ..models.terms import Abs, App, Conc, Name, Pair, Susp, Term, tuple_term, var_term
from ..models.types import AbsType, BaseType, NameType, ProdType, TypeExpr, UnitType

logger = logging.getLogger(__name__)


def wildcard(tp: TypeExpr) -> Term:
    """Свежая переменная на месте `_`; для произведений - пара таких переменных"""
    if isinstance(tp, ProdType):
        return Pair(wildcard(tp.left), wildcard(tp.right))
    return var_term(fresh_var(tp, "_"))


def constructor_pattern(signature: Signature, data_type: str, fn: str) -> Term:
    """g(_, ..., _) с отдельной переменной на каждый параметр"""
    constructor = signature.constructor(data_type, fn)
    return App(fn, tuple_term([wildcard(p) for p in constructor.params]))


def term_complement(signature: Signature, tp: TypeExpr, term: Term) -> list[Term]:
    """Термы, не сопоставимые с `term`; порядок детерминирован порядком конструкторов"""
    if isinstance(term, Susp):
        if not term.perm.is_identity():
            raise FragmentViolation("swapping in a clause head cannot be complemented")
        return []
    if isinstance(term, (Name, Abs, Conc)):
        raise FragmentViolation("names and abstractions in clause heads cannot be complemented")
    if isinstance(tp, (UnitType, NameType, AbsType)):
        return []
    if isinstance(tp, ProdType):
        if not isinstance(term, Pair):
            raise FragmentViolation(f"expected a pair at type {tp}")
        result: list[Term] = [
            Pair(s, wildcard(tp.right)) for s in term_complement(signature, tp.left, term.left)
        ]
        result += [
            Pair(wildcard(tp.left), s) for s in term_complement(signature, tp.right, term.right)
        ]
        return result
    if isinstance(tp, BaseType):
        if not isinstance(term, App):
            raise FragmentViolation(f"expected a constructor at type {tp}")
        constructor = signature.constructor(tp.name, term.fn)
        result = [
            constructor_pattern(signature, tp.name, other.name)
            for other in signature.constructors_of(tp.name)
            if other.name != term.fn
        ]
        if constructor.params:
            result += [App(term.fn, s) for s in term_complement(signature, constructor.arg_type, term.arg)]
        return result
    raise TypeError(f"cannot complement at type {tp}")


def is_complement_closed(term: Term) -> bool:
    """Терм линеен и не содержит имён, абстракций и перестановок"""
    seen = set()
    stack = [term]
    while stack:
        t = stack.pop()
        if isinstance(t, (Name, Abs, Conc)):
            return False
        if isinstance(t, Susp):
            if not t.perm.is_identity() or t.var in seen:
                return False
            seen.add(t.var)
        elif isinstance(t, Pair):
            stack.extend((t.left, t.right))
        elif isinstance(t, App):
            stack.append(t.arg)
    return True

