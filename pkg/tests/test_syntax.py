"""
Тесты конкретного синтаксиса: лексер, парсер, раскрытие функций, элаборация и печать
"""
import pytest

from app.core.exceptions import ParseError, TypeCheckError
from app.models.goals import Atom, Eq, Fresh, New, iter_goals
from app.models.terms import App, Conc, Susp
from app.models.types import AbsType, BaseType, NameType
from app.syntax import flatten_functions, parse_goal, parse_program, parse_term, print_clause, print_program
from app.syntax.lexer import tokenize
from app.syntax.surface import (
    CheckDecl, ClauseDecl, ConstructorDecl, FuncClause, PredDecl, SAbs, SApp, SAtom, SList, SQuant,
)
from tests.conftest import CORPUS_DIR, NAT_SPEC, load_text

CORPUS_FILES = sorted(p.name for p in CORPUS_DIR.glob("*.apl"))

LAM_PREFIX = """
id : name_type.
tm : type.
var : id -> tm.
lam : id\\tm -> tm.
app : (tm,tm) -> tm.
"""


class TestLexer:
    def test_check_directive_tokens(self):
        kinds = [t.type for t in tokenize('#check "sub_id" 5 : p(X).')]
        assert kinds == ["CHECK", "STRING", "NUMBER", "COLON", "IDENT", "LP", "VAR", "RP", "DOT", "EOF"]

    def test_comments_are_skipped(self):
        text = "% line comment\n(* block\ncomment *) tm : type."
        tokens = list(tokenize(text))
        assert [t.value for t in tokens[:-1]] == ["tm", ":", "type", "."]
        assert tokens[0].pos.line == 3

    def test_operators_are_greedy(self):
        values = [t.value for t in tokenize("T ==> U ** V => W")][:-1]
        assert values == ["T", "==>", "U", "**", "V", "=>", "W"]

    def test_unterminated_comment(self):
        with pytest.raises(ParseError):
            list(tokenize("(* never closed"))

    def test_unexpected_character(self):
        with pytest.raises(ParseError, match="unexpected character"):
            list(tokenize("p(X) :- {"))


class TestParser:
    def test_declarations(self):
        program = parse_program(NAT_SPEC, "nat.apl")
        constructors = program.of_kind(ConstructorDecl)
        assert [c.name for c in constructors] == ["z", "s"]
        assert [p.name for p in program.of_kind(PredDecl)] == ["add", "even"]
        assert len(program.of_kind(ClauseDecl)) == 4

    def test_check_directive(self):
        program = parse_program(NAT_SPEC)
        checks = program.of_kind(CheckDecl)
        assert [(c.label, c.bound) for c in checks] == [("add_id", 4), ("even_succ", 3)]
        assert len(checks[0].hypotheses) == 1

    def test_check_without_hypotheses(self):
        program = parse_program('#check "refl" 2 : X = X.')
        check = program.of_kind(CheckDecl)[0]
        assert check.hypotheses == ()

    def test_check_bound_must_be_positive(self):
        with pytest.raises(ParseError, match="positive"):
            parse_program('#check "zero" 0 : X = X.')

    def test_missing_dot_reports_position(self):
        with pytest.raises(ParseError) as info:
            parse_program("tm : type.\nunit : tm\nfoo : tm.")
        assert info.value.pos.line == 3

    def test_infix_precedence_and_associativity(self):
        infix = {"==>": ("infixr", 5), "**": ("infixl", 6)}
        term = parse_term("A ** B ==> C ==> D", infix)
        assert isinstance(term, SApp) and term.fn == "==>"
        assert term.args[0].fn == "**"
        assert term.args[1].fn == "==>"

    def test_abstraction_and_list_sugar(self):
        term = parse_term("lam(x\\app(var(x), var(y)))")
        assert isinstance(term.args[0], SAbs)
        lst = parse_term("[(x,T)|G]")
        assert isinstance(lst, SList) and lst.tail is not None

    def test_quantified_goal(self):
        goal = parse_goal("new a. exists X. p(a, X)")
        assert isinstance(goal, SQuant) and goal.kind == "new"
        assert isinstance(goal.body, SQuant) and goal.body.binders == ("X",)

    def test_function_clause(self):
        program = parse_program("func f(tm) = tm.\nf(X) = X.")
        assert isinstance(program.items[1], FuncClause)


class TestFlatten:
    def test_function_becomes_relation(self):
        flat = flatten_functions(parse_program(
            LAM_PREFIX + "func id_fn(tm) = tm.\nid_fn(M) = M.\n"
            "pred p(tm).\np(M) :- id_fn(M) = N, p(N).\n"
        ))
        preds = {p.name: len(p.params) for p in flat.of_kind(PredDecl)}
        assert preds["id_fn"] == 2
        clause = flat.of_kind(ClauseDecl)[1]
        atoms = [g for g in _surface_goals(clause.body) if isinstance(g, SAtom)]
        assert atoms[0].term.fn == "id_fn" and len(atoms[0].term.args) == 2

    def test_nested_calls_are_extracted_inner_first(self):
        flat = flatten_functions(parse_program(
            LAM_PREFIX + "func f(tm) = tm.\npred p(tm).\np(M) :- p(f(f(M))).\n"
        ))
        clause = flat.of_kind(ClauseDecl)[0]
        atoms = [g.term for g in _surface_goals(clause.body) if isinstance(g, SAtom)]
        assert [a.fn for a in atoms] == ["f", "f", "p"]
        assert atoms[0].args[0].name == "M"

    def test_program_without_functions_is_unchanged(self):
        program = parse_program(NAT_SPEC)
        assert flatten_functions(program) is program


class TestElaborate:
    def test_signature(self, nat_program):
        sig = nat_program.signature
        assert sig.data_types == ["nat"]
        assert [c.name for c in sig.constructors_of("nat")] == ["z", "s"]
        assert sig.predicates["add"] == (BaseType("nat"),) * 3

    def test_clause_indices(self, nat_program):
        assert [(c.pred, c.index) for c in nat_program.clauses] == [
            ("add", 1), ("add", 2), ("even", 1), ("even", 2),
        ]

    def test_repeated_head_variable_is_linearized(self, nat_program):
        clause = nat_program.clauses[0]
        assert len(clause.variables) == 2
        assert any(isinstance(g, Eq) for g in iter_goals(clause.body))

    def test_head_abstraction_becomes_concretion(self, name_program):
        clause = name_program.clauses_of("closed")[0]
        assert isinstance(clause.head, App) and isinstance(clause.head.arg, Susp)
        assert isinstance(clause.variables[0].type, AbsType)
        assert any(isinstance(g, New) for g in iter_goals(clause.body))
        atom = next(g for g in iter_goals(clause.body) if isinstance(g, Atom))
        assert isinstance(atom.arg.right, Conc)

    def test_list_types_are_registered(self, name_program):
        sig = name_program.signature
        list_type = sig.predicates["mem"][1]
        assert isinstance(list_type, BaseType)
        assert sig.list_types[list_type.name] == NameType("id")

    def test_directive_names_are_nu(self, lam_buggy, directive):
        check = directive(lam_buggy, "sub_id")
        assert [n.spelling for n in check.names] == ["x"]
        assert all(n.nu for n in check.names)
        assert all(n.stamp < v.stamp for n in check.names for v in check.variables)

    def test_directive_text_keeps_function_syntax(self, lam_buggy, directive):
        assert directive(lam_buggy, "sub_fun").text == "sub(M,x,N) = M1, sub(M,x,N) = M2 => M1 = M2"

    def test_freshness_in_directive(self, lam_buggy, directive):
        check = directive(lam_buggy, "sub_fresh")
        assert isinstance(check.hypotheses[0], Fresh)
        assert isinstance(check.conclusion, Atom) and check.conclusion.pred == "sub"

    def test_undeclared_constructor(self):
        with pytest.raises(ParseError, match="undeclared constructor"):
            load_text(NAT_SPEC + "even(t(z)).\n")

    def test_arity_mismatch(self):
        with pytest.raises(ParseError, match="argument"):
            load_text(NAT_SPEC + "even(s(z,z)).\n")

    def test_type_mismatch(self):
        with pytest.raises(TypeCheckError, match="type mismatch"):
            load_text(LAM_PREFIX + "nat : type.\nz : nat.\npred p(tm).\np(z).\n")

    def test_undeclared_predicate(self):
        with pytest.raises(ParseError, match="undeclared predicate"):
            load_text(NAT_SPEC + "even(N) :- odd(N).\n")

    def test_duplicate_label(self):
        with pytest.raises(ParseError, match="duplicate check label"):
            load_text(NAT_SPEC + '#check "add_id" 2 : even(z).\n')

    def test_free_name_in_head(self):
        with pytest.raises(TypeCheckError, match="free name in clause head"):
            load_text(LAM_PREFIX + "pred p(tm).\np(var(a)).\n")

    def test_generator_predicates_are_declared_on_use(self):
        program = load_text(NAT_SPEC + '#check "gen" 2 : gen_nat(N) => even(N).\n')
        assert "gen_nat" in program.signature.predicates


class TestPrinter:
    @pytest.mark.parametrize("name", CORPUS_FILES)
    def test_print_parse_is_stable(self, name):
        text = (CORPUS_DIR / name).read_text(encoding="utf-8")
        printed = print_program(parse_program(text))
        assert print_program(parse_program(printed)) == printed

    @pytest.mark.parametrize("name", CORPUS_FILES)
    def test_corpus_elaborates(self, name):
        program = load_text((CORPUS_DIR / name).read_text(encoding="utf-8"), name)
        assert program.checks
        assert program.clauses

    def test_core_clause_printing(self, nat_program):
        text = print_clause(nat_program.clauses_of("even")[1], nat_program.signature)
        assert text.startswith("even(s(s(")
        assert text.endswith(":- even(N).")


def _surface_goals(goal):
    stack = [goal]
    while stack:
        g = stack.pop(0)
        yield g
        if hasattr(g, "goals"):
            stack[:0] = list(g.goals)
        elif isinstance(g, SQuant):
            stack.insert(0, g.body)
