"""
Разбор конкретного синтаксиса спецификаций (рекурсивный спуск)
"""
import logging
from typing import Optional

from ..core.exceptions import ParseError
from .lexer import KEYWORDS, Token, tokenize
from .surface import (
    EXISTS, FORALL_STAR, NEW,
    AliasDecl, CheckDecl, ClauseDecl, ConstructorDecl, DataTypeDecl, Decl, FuncClause,
    FuncDecl, InfixDecl, NameTypeDecl, PredDecl, SAbs, SApp, SAtom, SConc, SConj, SDisj,
    SEq, SFalse, SFresh, SGoal, SIdent, SList, SQuant, STerm, STrue, STuple, SType,
    STypeAbs, STypeList, STypeName, STypeTuple, STypeUnit, SUnit, SVar, SWild, SurfaceProgram,
)

logger = logging.getLogger(__name__)

INFIX_KEYWORDS = ("infixl", "infixr", "infix")

# токены, которыми может продолжаться цель после закрывающей скобки
_GOAL_FOLLOW = ("COMMA", "SEMI", "RP", "DOT", "EOF")


class Parser:
    """Парсер одного файла. Объявления infix влияют на разбор следующих за ними термов"""

    def __init__(self, text: str, path: str = "", infix: Optional[dict[str, tuple[str, int]]] = None):
        self.tokens: list[Token] = list(tokenize(text, path))
        self.index = 0
        self.path = path
        self.infix: dict[str, tuple[str, int]] = dict(infix or {})

    # -- навигация ----------------------------------------------------------

    def peek(self, offset: int = 0) -> Token:
        index = min(self.index + offset, len(self.tokens) - 1)
        return self.tokens[index]

    def at(self, kind: str, value: Optional[str] = None, offset: int = 0) -> bool:
        token = self.peek(offset)
        return token.type == kind and (value is None or token.value == value)

    def advance(self) -> Token:
        token = self.peek()
        if token.type != "EOF":
            self.index += 1
        return token

    def expect(self, kind: str, value: Optional[str] = None) -> Token:
        token = self.peek()
        if not self.at(kind, value):
            wanted = value or kind.lower()
            found = token.value or token.type.lower()
            raise ParseError(f"expected {wanted}, found {found!r}", token.pos)
        return self.advance()

    # -- программа ----------------------------------------------------------

    def parse_program(self) -> SurfaceProgram:
        program = SurfaceProgram(path=self.path)
        while not self.at("EOF"):
            program.items.append(self.parse_decl())
        logger.debug(f"Parsed {len(program.items)} declarations from {self.path or '<text>'}")
        return program

    def parse_decl(self) -> Decl:
        token = self.peek()
        if token.type == "CHECK":
            return self.parse_check()
        if token.type == "IDENT" and token.value in INFIX_KEYWORDS and self.peek(1).type in ("OP", "IDENT"):
            return self.parse_infix()
        if self.at("IDENT", "pred") and self.at("IDENT", offset=1):
            return self.parse_pred()
        if self.at("IDENT", "func") and self.at("IDENT", offset=1):
            return self.parse_func()
        if self.at("IDENT", "type") and self.at("IDENT", offset=1) and self.at("OP", "=", offset=2):
            self.advance()
            name = self.advance()
            self.advance()
            tp = self.parse_type()
            self.expect("DOT")
            return AliasDecl(name.value, tp, token.pos)
        if token.type in ("IDENT", "OP") and self.at("COLON", offset=1):
            return self.parse_symbol_decl()
        return self.parse_clause()

    def parse_infix(self) -> InfixDecl:
        keyword = self.advance()
        symbol = self.advance()
        precedence = int(self.expect("NUMBER").value)
        self.expect("DOT")
        self.infix[symbol.value] = (keyword.value, precedence)
        return InfixDecl(symbol.value, keyword.value, precedence, keyword.pos)

    def parse_pred(self) -> PredDecl:
        start = self.advance()
        name = self.expect("IDENT")
        params = self.parse_type_args()
        self.expect("DOT")
        return PredDecl(name.value, params, start.pos)

    def parse_func(self) -> FuncDecl:
        start = self.advance()
        name = self.expect("IDENT")
        params = self.parse_type_args()
        self.expect("OP", "=")
        result = self.parse_type()
        self.expect("DOT")
        return FuncDecl(name.value, params, result, start.pos)

    def parse_type_args(self) -> tuple[SType, ...]:
        if not self.at("LP"):
            return ()
        self.advance()
        if self.at("RP"):
            self.advance()
            return ()
        params = [self.parse_type()]
        while self.at("COMMA"):
            self.advance()
            params.append(self.parse_type())
        self.expect("RP")
        return tuple(params)

    def parse_symbol_decl(self) -> Decl:
        symbol = self.advance()
        self.expect("COLON")
        if self.at("IDENT", "name_type") and self.at("DOT", offset=1):
            self.advance()
            self.advance()
            return NameTypeDecl(symbol.value, symbol.pos)
        if self.at("IDENT", "type") and self.at("DOT", offset=1):
            self.advance()
            self.advance()
            return DataTypeDecl(symbol.value, symbol.pos)
        pieces = [self.parse_type()]
        while self.at("OP", "->"):
            self.advance()
            pieces.append(self.parse_type())
        self.expect("DOT")
        result = pieces[-1]
        if not isinstance(result, STypeName):
            raise ParseError(f"constructor {symbol.value} must produce a data type", symbol.pos)
        params = pieces[:-1]
        if len(params) == 1 and isinstance(params[0], STypeTuple):
            params = list(params[0].items)
        return ConstructorDecl(symbol.value, tuple(params), result.name, symbol.pos)

    def parse_clause(self) -> Decl:
        start = self.peek()
        head = self.parse_term()
        if self.at("OP", "="):
            self.advance()
            result = self.parse_term()
            body = self.parse_body()
            self.expect("DOT")
            if isinstance(head, SIdent):
                head = SApp(head.name, (), pos=head.pos)
            if not isinstance(head, SApp) or head.infix:
                raise ParseError("function equation must start with a function call", start.pos)
            return FuncClause(head, result, body, start.pos)
        body = self.parse_body()
        self.expect("DOT")
        if isinstance(head, SIdent):
            head = SApp(head.name, (), pos=head.pos)
        if not isinstance(head, SApp) or head.infix:
            raise ParseError("clause head must be a predicate application", start.pos)
        return ClauseDecl(head, body, start.pos)

    def parse_body(self) -> Optional[SGoal]:
        if self.at("NECK"):
            self.advance()
            return self.parse_goal()
        return None

    def parse_check(self) -> CheckDecl:
        start = self.advance()
        label = self.expect("STRING").value
        bound = int(self.expect("NUMBER").value)
        if bound < 1:
            raise ParseError("check bound must be positive", start.pos)
        self.expect("COLON")
        goals = [self.parse_unit()]
        while self.at("COMMA"):
            self.advance()
            goals.append(self.parse_unit())
        if self.at("OP", "=>"):
            self.advance()
            hypotheses = tuple(goals)
            conclusion = self.parse_goal()
        elif len(goals) == 1:
            hypotheses = ()
            conclusion = goals[0]
        else:
            hypotheses = ()
            conclusion = SConj(tuple(goals), start.pos)
        self.expect("DOT")
        return CheckDecl(label, bound, hypotheses, conclusion, start.pos)

    # -- типы ---------------------------------------------------------------

    def parse_type(self) -> SType:
        token = self.peek()
        if token.type == "LP":
            self.advance()
            if self.at("RP"):
                self.advance()
                return STypeUnit(token.pos)
            items = [self.parse_type()]
            while self.at("COMMA"):
                self.advance()
                items.append(self.parse_type())
            self.expect("RP")
            if len(items) == 1:
                return items[0]
            return STypeTuple(tuple(items), token.pos)
        if token.type == "LB":
            self.advance()
            elem = self.parse_type()
            self.expect("RB")
            return STypeList(elem, token.pos)
        if token.type == "IDENT":
            self.advance()
            if self.at("BSLASH"):
                self.advance()
                return STypeAbs(token.value, self.parse_type(), token.pos)
            return STypeName(token.value, token.pos)
        raise ParseError(f"expected a type, found {token.value or token.type.lower()!r}", token.pos)

    # -- термы --------------------------------------------------------------

    def parse_term(self, min_prec: int = 0) -> STerm:
        left = self.parse_postfix()
        while True:
            token = self.peek()
            if token.type not in ("OP", "IDENT") or token.value not in self.infix:
                break
            assoc, prec = self.infix[token.value]
            if prec < min_prec:
                break
            self.advance()
            right = self.parse_term(prec if assoc == "infixr" else prec + 1)
            left = SApp(token.value, (left, right), True, token.pos)
        return left

    def parse_postfix(self) -> STerm:
        term = self.parse_primary()
        while self.at("AT"):
            token = self.advance()
            name = self.expect("IDENT")
            term = SConc(term, name.value, token.pos)
        return term

    def parse_primary(self) -> STerm:
        token = self.peek()
        if token.type == "VAR":
            self.advance()
            if token.value == "_":
                return SWild(token.pos)
            return SVar(token.value, token.pos)
        if token.type == "IDENT" and token.value not in KEYWORDS - {"type"}:
            self.advance()
            if self.at("BSLASH"):
                self.advance()
                return SAbs(token.value, self.parse_postfix(), token.pos)
            if self.at("LP"):
                return SApp(token.value, self.parse_args(), False, token.pos)
            return SIdent(token.value, token.pos)
        if token.type == "OP" and self.at("LP", offset=1):
            self.advance()
            return SApp(token.value, self.parse_args(), False, token.pos)
        if token.type == "LP":
            self.advance()
            if self.at("RP"):
                self.advance()
                return SUnit(token.pos)
            items = [self.parse_term()]
            while self.at("COMMA"):
                self.advance()
                items.append(self.parse_term())
            self.expect("RP")
            if len(items) == 1:
                return items[0]
            return STuple(tuple(items), token.pos)
        if token.type == "LB":
            self.advance()
            if self.at("RB"):
                self.advance()
                return SList((), None, token.pos)
            items = [self.parse_term()]
            while self.at("COMMA"):
                self.advance()
                items.append(self.parse_term())
            tail = None
            if self.at("BAR"):
                self.advance()
                tail = self.parse_term()
            self.expect("RB")
            return SList(tuple(items), tail, token.pos)
        raise ParseError(f"expected a term, found {token.value or token.type.lower()!r}", token.pos)

    def parse_args(self) -> tuple[STerm, ...]:
        self.expect("LP")
        if self.at("RP"):
            self.advance()
            return ()
        args = [self.parse_term()]
        while self.at("COMMA"):
            self.advance()
            args.append(self.parse_term())
        self.expect("RP")
        return tuple(args)

    # -- цели ---------------------------------------------------------------

    def parse_goal(self) -> SGoal:
        return self.parse_disj()

    def parse_disj(self) -> SGoal:
        start = self.peek()
        goals = [self.parse_conj()]
        while self.at("SEMI"):
            self.advance()
            goals.append(self.parse_conj())
        if len(goals) == 1:
            return goals[0]
        return SDisj(tuple(goals), start.pos)

    def parse_conj(self) -> SGoal:
        start = self.peek()
        goals = [self.parse_unit()]
        while self.at("COMMA"):
            self.advance()
            goals.append(self.parse_unit())
        if len(goals) == 1:
            return goals[0]
        return SConj(tuple(goals), start.pos)

    def parse_unit(self) -> SGoal:
        token = self.peek()
        if self.at("IDENT", "new"):
            self.advance()
            names = self.parse_binders("IDENT")
            return SQuant(NEW, names, self.parse_goal(), token.pos)
        if self.at("IDENT", "exists"):
            self.advance()
            variables = self.parse_binders("VAR")
            return SQuant(EXISTS, variables, self.parse_goal(), token.pos)
        if self.at("IDENT", "forall") and self.at("OP", "*", offset=1):
            self.advance()
            self.advance()
            variables = self.parse_binders("VAR")
            return SQuant(FORALL_STAR, variables, self.parse_goal(), token.pos)
        if self.at("IDENT", "true") and not self.at("LP", offset=1):
            self.advance()
            return STrue(token.pos)
        if self.at("IDENT", "false") and not self.at("LP", offset=1):
            self.advance()
            return SFalse(token.pos)
        if token.type == "LP":
            goal = self._try_parenthesized_goal()
            if goal is not None:
                return goal
        term = self.parse_term()
        if self.at("OP", "="):
            self.advance()
            return SEq(term, self.parse_term(), token.pos)
        if self.at("HASH"):
            self.advance()
            return SFresh(term, self.parse_term(), token.pos)
        if isinstance(term, SIdent):
            return SAtom(SApp(term.name, (), False, term.pos), token.pos)
        if isinstance(term, SApp) and not term.infix:
            return SAtom(term, token.pos)
        raise ParseError("expected a goal", token.pos)

    def _try_parenthesized_goal(self) -> Optional[SGoal]:
        saved = self.index
        try:
            self.advance()
            goal = self.parse_goal()
            self.expect("RP")
        except ParseError:
            self.index = saved
            return None
        if self.peek().type in _GOAL_FOLLOW or self.at("OP", "=>"):
            return goal
        self.index = saved
        return None

    def parse_binders(self, kind: str) -> tuple[str, ...]:
        binders = [self.expect(kind).value]
        while self.at("COMMA"):
            self.advance()
            binders.append(self.expect(kind).value)
        self.expect("DOT")
        return tuple(binders)


def parse_program(text: str, path: str = "") -> SurfaceProgram:
    """Разобрать полный файл спецификации"""
    return Parser(text, path).parse_program()


def parse_goal(text: str, infix: Optional[dict[str, tuple[str, int]]] = None) -> SGoal:
    parser = Parser(text, infix=infix)
    goal = parser.parse_goal()
    parser.expect("EOF")
    return goal


def parse_term(text: str, infix: Optional[dict[str, tuple[str, int]]] = None) -> STerm:
    parser = Parser(text, infix=infix)
    term = parser.parse_term()
    parser.expect("EOF")
    return term
