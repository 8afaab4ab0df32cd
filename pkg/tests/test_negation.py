"""
Тесты устранения отрицания: дополнение термов, neq/nfr/gen и сборка Δ⁻
"""
import pytest

from app.core.exceptions import FragmentViolation, SynthesisError
from app.kernel.nominal import fresh_name, fresh_var
from app.models.goals import BOTTOM, TOP, Atom, Eq, Exists, ForallStar, Fresh, New
from app.models.program import Clause
from app.models.terms import UNIT_TERM, App, Pair, var_term
from app.models.types import BaseType, NameType
from app.negation import (
    equality_clauses, gen_goal, generator_clauses, negate_program, neq_goal, nfr_goal,
    not_clause, not_goal, term_complement, user_generators,
)
from app.negation.generated import GoalBuilder
from app.syntax import CorePrinter
from tests.conftest import NAT_SPEC, load_text

NAT = BaseType("nat")


def _show(program, terms):
    printer = CorePrinter(program.signature, show_perms=False)
    return [printer.term(t) for t in terms]


class TestComplement:
    def test_nested_successor(self, nat_program):
        head = nat_program.clauses_of("even")[1].head
        complement = term_complement(nat_program.signature, NAT, head)
        assert _show(nat_program, complement) == ["z", "s(z)"]

    def test_variable_has_empty_complement(self, nat_program):
        assert term_complement(nat_program.signature, NAT, var_term(fresh_var(NAT, "N"))) == []

    def test_product_complements_each_side(self, nat_program):
        head = nat_program.clauses_of("add")[0].head
        tp = nat_program.signature.pred_type("add")
        complement = term_complement(nat_program.signature, tp, head)
        assert len(complement) == 1
        assert isinstance(complement[0], Pair)
        assert complement[0].left.fn == "s"

    def test_names_are_outside_the_fragment(self, name_program):
        a = fresh_name("id", "a")
        with pytest.raises(FragmentViolation):
            term_complement(name_program.signature, BaseType("tm"), App("var", a))


class TestNotGoal:
    def test_de_morgan(self, nat_program):
        x = var_term(fresh_var(NAT, "X"))
        goal = not_goal(Atom("even", x), nat_program.signature)
        assert goal == Atom("not_even", x)
        assert not_goal(TOP, nat_program.signature) == BOTTOM
        assert not_goal(BOTTOM, nat_program.signature) == TOP

    def test_exists_becomes_forall_star(self, nat_program):
        var = fresh_var(NAT, "X")
        goal = not_goal(Exists(var, Atom("even", var_term(var))), nat_program.signature)
        assert isinstance(goal, ForallStar) and goal.var == var
        assert goal.body == Atom("not_even", var_term(var))

    def test_new_is_self_dual(self, name_program):
        a = fresh_name("id", "a")
        x = var_term(fresh_var(BaseType("tm"), "M"))
        goal = not_goal(New(a, Fresh(a, x, "id", BaseType("tm"))), name_program.signature)
        assert isinstance(goal, New) and goal.name == a
        assert goal.body == Atom("nfr_id_tm", Pair(a, x))

    def test_equality_becomes_neq(self, nat_program):
        x, y = var_term(fresh_var(NAT, "X")), var_term(fresh_var(NAT, "Y"))
        assert not_goal(Eq(x, y, NAT), nat_program.signature) == Atom("neq_nat", Pair(x, y))

    def test_forall_star_cannot_be_negated(self, nat_program):
        var = fresh_var(NAT, "X")
        with pytest.raises(FragmentViolation, match="forall"):
            not_goal(ForallStar(var, Atom("even", var_term(var))), nat_program.signature)


class TestGeneratedPredicates:
    def test_neq_definition(self, nat_program):
        clauses = GoalBuilder(nat_program.signature).neq_def("nat")
        assert [c.pred for c in clauses] == ["neq_nat"] * 3
        assert [c.index for c in clauses] == [1, 2, 3]
        assert clauses[0].body == Atom("neq_nat", Pair(*(var_term(v) for v in clauses[0].variables)))

    def test_gen_definition(self, nat_program):
        clauses = GoalBuilder(nat_program.signature).gen_def("nat")
        assert len(clauses) == 2
        assert clauses[0].head == App("z", UNIT_TERM) and clauses[0].body == TOP
        assert clauses[1].body == Atom("gen_nat", var_term(clauses[1].variables[0]))

    def test_nfr_definition(self, name_program):
        clauses = GoalBuilder(name_program.signature).nfr_def("id", "tm")
        assert [c.head.right.fn for c in clauses] == ["var", "lam", "app"]
        assert isinstance(clauses[0].body, Eq)
        assert isinstance(clauses[1].body, New)

    def test_type_directed_goals(self, name_program):
        sig = name_program.signature
        a, b = fresh_name("id", "a"), fresh_name("id", "b")
        assert isinstance(neq_goal(sig, NameType("id"), a, b), Fresh)
        assert nfr_goal(sig, "id", NameType("id"), a, b) == Eq(a, b, NameType("id"))
        assert gen_goal(sig, NameType("id"), a) == TOP

    def test_list_types_get_readable_names(self, name_program):
        preds, _ = generator_clauses(name_program.signature)
        assert "gen_list_id" in preds
        eq_preds, _ = equality_clauses(name_program.signature)
        assert {"neq_tm", "nfr_id_tm", "neq_list_id"} <= set(eq_preds)


class TestNotClause:
    def test_fact_with_complement(self, nat_program):
        clauses = not_clause(nat_program.clauses_of("even")[0], nat_program.signature)
        assert [c.pred for c in clauses] == ["not_even__1"] * 2
        assert clauses[0].body == TOP
        assert clauses[1].body == BOTTOM

    def test_recursive_clause(self, nat_program):
        clauses = not_clause(nat_program.clauses_of("even")[1], nat_program.signature)
        assert len(clauses) == 3
        assert isinstance(clauses[-1].body, Atom) and clauses[-1].body.pred == "not_even"

    def test_non_linear_head_is_rejected(self, nat_program):
        n = var_term(fresh_var(NAT, "N"))
        clause = Clause("add", Pair(App("z", UNIT_TERM), Pair(n, n)), (n.var,), TOP, index=1)
        with pytest.raises(FragmentViolation, match="complement-closed"):
            not_clause(clause, nat_program.signature)


class TestNegateProgram:
    def test_nat_program(self, nat_program):
        negated = negate_program(nat_program)
        preds = negated.signature.predicates
        assert {"not_add", "not_add__1", "not_add__2", "not_even", "neq_nat", "gen_nat"} <= set(preds)
        merge = next(c for c in negated.clauses if c.pred == "not_even")
        assert [g.pred for g in merge.body.goals] == ["not_even__1", "not_even__2"]

    def test_user_signature_is_untouched(self, nat_program):
        before = dict(nat_program.signature.predicates)
        negate_program(nat_program)
        assert nat_program.signature.predicates == before

    def test_lambda_calculus(self, lam_buggy):
        negated = negate_program(lam_buggy)
        assert "not_tc" in negated.signature.predicates
        assert any(p.startswith("gen_list_") for p in negated.generated)
        assert len(negated.clauses) > 40

    def test_inline_drops_clause_predicates(self, nat_program):
        negated = negate_program(nat_program, inline=True)
        assert not any("__" in p for p in negated.signature.predicates)
        assert not any("__" in c.pred for c in negated.clauses)
        assert "not_even" in negated.signature.predicates

    def test_user_generator_wins(self):
        program = load_text(NAT_SPEC + "gen_nat(z).\n")
        assert user_generators(program) == frozenset({"gen_nat"})
        negated = negate_program(program)
        assert not any(c.pred == "gen_nat" for c in negated.clauses)
        assert "not_gen_nat" in negated.signature.predicates

    @pytest.mark.parametrize("decl", ["pred neq_nat(nat,nat).", "pred not_even(nat)."])
    def test_collision(self, decl):
        program = load_text(NAT_SPEC + decl + "\n")
        with pytest.raises(SynthesisError, match="collides"):
            negate_program(program)
