"""
Тесты решателя ограничений: номинальная унификация, свежесть и выполнимость
"""
from app.core.constants import Entailment
from app.kernel.nominal import fresh_name, fresh_var
from app.models.goals import Eq, Exists, Fresh, New, conj, disj
from app.models.terms import Abs, App, Pair, Perm, Susp, UNIT_TERM, var_term
from app.models.types import AbsType, BaseType, NameType
from app.solver import EMPTY, consistent, entails, satisfies, solve_fresh, unify, unify_all

TM = BaseType("tm")
ID = NameType("id")


def names(*spellings):
    return [fresh_name("id", s) for s in spellings]


class TestUnify:
    """t ≈ u в контексте K"""

    def test_binds_variable(self):
        x = fresh_var(TM, "X")
        k = unify(var_term(x), App("f", UNIT_TERM))
        assert k is not None
        assert k.resolve(var_term(x)) == App("f", UNIT_TERM)

    def test_constructor_clash(self):
        assert unify(App("f", UNIT_TERM), App("g", UNIT_TERM)) is None

    def test_distinct_names_clash(self):
        a, b = names("a", "b")
        assert unify(a, b) is None
        assert unify(a, a) is not None

    def test_occurs_check(self):
        x = fresh_var(TM, "X")
        assert unify(var_term(x), App("f", var_term(x))) is None

    def test_abstractions_up_to_renaming(self):
        a, b = names("a", "b")
        assert unify(Abs(a, a), Abs(b, b)) is not None
        assert unify(Abs(a, b), Abs(b, a)) is None

    def test_abstraction_adds_freshness(self):
        a, b = names("a", "b")
        x = fresh_var(TM, "X")
        y = fresh_var(TM, "Y")
        k = unify(Abs(a, var_term(x)), Abs(b, var_term(y)))
        assert k is not None
        # ⟨a⟩X ≈ ⟨b⟩Y  =>  X = (a b)·Y и a # Y
        assert a in k.fresh_for(y)

    def test_suspension_solved_by_inverse(self):
        a, b = names("a", "b")
        x = fresh_var(TM, "X")
        k = unify(Susp(Perm.swap(a, b), x), App("f", a))
        assert k is not None
        assert k.resolve(var_term(x)) == App("f", b)

    def test_same_variable_different_perms(self):
        a, b = names("a", "b")
        x = fresh_var(TM, "X")
        k = unify(Susp(Perm.swap(a, b), x), var_term(x))
        assert k is not None
        assert {a, b} <= k.fresh_for(x)

    def test_binding_propagates_freshness(self):
        a, = names("a")
        x = fresh_var(TM, "X")
        k = solve_fresh(a, var_term(x))
        assert k is not None
        assert unify(var_term(x), App("f", a), k) is None
        assert unify(var_term(x), App("f", UNIT_TERM), k) is not None

    def test_rigid_variable_is_never_bound(self):
        x = fresh_var(TM, "X", rigid=True)
        assert unify(var_term(x), App("f", UNIT_TERM)) is None
        assert unify(var_term(x), var_term(x)) is not None

    def test_unify_all(self):
        x = fresh_var(TM, "X")
        y = fresh_var(TM, "Y")
        k = unify_all([(var_term(x), var_term(y)), (var_term(y), App("c", UNIT_TERM))])
        assert k is not None
        assert k.resolve(var_term(x)) == App("c", UNIT_TERM)

    def test_persistent_sets(self):
        x = fresh_var(TM, "X")
        k1 = unify(var_term(x), App("c", UNIT_TERM))
        assert not EMPTY.is_bound(x)
        assert k1.is_bound(x)


class TestFreshness:
    def test_name_in_term(self):
        a, b = names("a", "b")
        assert solve_fresh(a, Pair(b, App("f", b))) is not None
        assert solve_fresh(a, Pair(b, App("f", a))) is None
        assert solve_fresh(a, Abs(a, a)) is not None

    def test_nu_name_newer_than_variable(self):
        x = fresh_var(TM, "X")
        a = fresh_name("id", "a", nu=True)
        k = solve_fresh(a, var_term(x))
        assert k is not None
        assert k.fresh_for(x) == frozenset()

    def test_old_variable_cannot_capture_new_nu_name(self):
        x = fresh_var(TM, "X")
        a = fresh_name("id", "a", nu=True)
        assert unify(var_term(x), App("f", a)) is None

    def test_nu_name_not_captured_through_alias(self):
        x = fresh_var(ID, "X")
        a = fresh_name("id", "a", nu=True)
        y = fresh_var(ID, "Y")
        k = EMPTY.introduce(a)
        assert unify_all([(var_term(x), var_term(y)), (var_term(y), a)], k) is None
        assert unify_all([(var_term(y), a), (var_term(x), var_term(y))], k) is None
        assert unify(var_term(y), a, k) is not None

    def test_bound_nu_name_may_reach_old_variable(self):
        x = fresh_var(AbsType("id", ID), "X")
        a = fresh_name("id", "a", nu=True)
        y = fresh_var(ID, "Y")
        k = unify_all([(var_term(x), Abs(a, var_term(y))), (var_term(y), a)], EMPTY.introduce(a))
        assert k is not None
        assert k.resolve(var_term(x)) == Abs(a, a)

    def test_alias_inherits_age(self):
        x = fresh_var(TM, "X")
        e = fresh_var(TM, "E", rigid=True)
        y = fresh_var(TM, "Y")
        assert unify(var_term(y), var_term(e)) is not None
        assert unify_all([(var_term(x), var_term(y)), (var_term(y), var_term(e))]) is None

    def test_name_variable_delayed(self):
        x = fresh_var(ID, "X")
        y = fresh_var(ID, "Y")
        k = solve_fresh(var_term(x), var_term(y))
        assert k is not None
        assert len(k.delayed) == 1
        a, = names("a")
        k2 = unify(var_term(x), a, k)
        assert k2 is not None
        assert unify(var_term(y), a, k2) is None


class TestConsistency:
    def test_self_freshness_unsatisfiable(self):
        x = fresh_var(ID, "X")
        k = solve_fresh(var_term(x), var_term(x))
        assert k is not None
        assert not consistent(k)

    def test_swapped_self_freshness_satisfiable(self):
        a, b = names("a", "b")
        x = fresh_var(ID, "X")
        k = solve_fresh(Susp(Perm.swap(a, b), x), var_term(x))
        assert k is not None
        # (a b)·X # X выполнимо при X = a
        assert consistent(k)


class TestSemantics:
    def test_satisfies_ground_valuation(self):
        x = fresh_var(TM, "X")
        goal = Eq(var_term(x), App("c", UNIT_TERM), TM)
        assert satisfies({x: App("c", UNIT_TERM)}, goal)
        assert not satisfies({x: App("d", UNIT_TERM)}, goal)

    def test_entails_disjunction(self):
        x = fresh_var(TM, "X")
        k = unify(var_term(x), App("d", UNIT_TERM))
        goal = disj([
            Eq(var_term(x), App("c", UNIT_TERM), TM),
            Eq(var_term(x), App("d", UNIT_TERM), TM),
        ])
        assert entails(k, goal) == Entailment.TRUE

    def test_entails_false(self):
        a, b = names("a", "b")
        assert entails(EMPTY, Eq(a, b, ID)) == Entailment.FALSE

    def test_new_name_is_fresh_for_context(self):
        x = fresh_var(TM, "X")
        a = fresh_name("id", "a")
        goal = New(a, Fresh(a, var_term(x), "id", TM))
        assert entails(EMPTY, goal) == Entailment.TRUE

    def test_exists_witness(self):
        y = fresh_var(TM, "Y")
        goal = Exists(y, conj([Eq(var_term(y), App("c", UNIT_TERM), TM)]))
        assert entails(EMPTY, goal) == Entailment.TRUE

    def test_unknown_on_eigenvariable(self):
        x = fresh_var(ID, "X", rigid=True)
        y = fresh_var(ID, "Y")
        goal = Fresh(var_term(x), var_term(y), "id", ID)
        assert entails(EMPTY, goal) == Entailment.UNKNOWN
