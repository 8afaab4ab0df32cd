"""
Лексер конкретного синтаксиса
"""
import re
from dataclasses import dataclass
from typing import Iterator

from ..core.exceptions import ParseError, SourcePos

# Последовательности операторных символов читаются жадно: =, =>, ->, ==>, **
OPERATOR_CHARS = "=<>-+*/^~&!?$"

TOKEN_SPEC = [
    ("NEWLINE",  r"\n"),
    ("SKIP",     r"[ \t\r\f]+"),
    ("COMMENT",  r"%[^\n]*"),
    ("BLOCK",    r"\(\*"),
    ("STRING",   r'"(?:[^"\\\n]|\\.)*"'),
    ("CHECK",    r"\#check\b"),
    ("NUMBER",   r"\d+"),
    ("VAR",      r"[A-Z_][A-Za-z0-9_']*"),
    ("IDENT",    r"[a-z][A-Za-z0-9_']*"),
    ("NECK",     r":-"),
    ("COLON",    r":"),
    ("OP",       r"[" + re.escape(OPERATOR_CHARS) + r"]+"),
    ("LP",       r"\("),
    ("RP",       r"\)"),
    ("LB",       r"\["),
    ("RB",       r"\]"),
    ("COMMA",    r","),
    ("SEMI",     r";"),
    ("BAR",      r"\|"),
    ("BSLASH",   r"\\"),
    ("AT",       r"@"),
    ("HASH",     r"\#"),
    ("DOT",      r"\."),
    ("MISMATCH", r"."),
]

TOKEN_REGEX = re.compile("|".join("(?P<%s>%s)" % pair for pair in TOKEN_SPEC))

KEYWORDS = {
    "name_type", "type", "pred", "func", "infixl", "infixr", "infix",
    "new", "exists", "forall", "true", "false",
}


@dataclass(frozen=True, slots=True)
class Token:
    type: str
    value: str
    pos: SourcePos

    def __repr__(self) -> str:
        return f"Token({self.type},{self.value!r})"


def tokenize(text: str, path: str = "") -> Iterator[Token]:
    """Разбить текст на токены, пропуская пробелы и комментарии % и (* *)"""
    line = 1
    line_start = 0
    index = 0
    while index < len(text):
        mo = TOKEN_REGEX.match(text, index)
        kind = mo.lastgroup
        value = mo.group(kind)
        pos = SourcePos(line, mo.start() - line_start + 1, path)
        if kind == "NEWLINE":
            line += 1
            line_start = mo.end()
        elif kind == "BLOCK":
            close = text.find("*)", mo.end())
            if close < 0:
                raise ParseError("unterminated comment", pos)
            for offset in range(mo.end(), close):
                if text[offset] == "\n":
                    line += 1
                    line_start = offset + 1
            index = close + 2
            continue
        elif kind in ("SKIP", "COMMENT"):
            pass
        elif kind == "MISMATCH":
            raise ParseError(f"unexpected character {value!r}", pos)
        elif kind == "STRING":
            yield Token(kind, value[1:-1].replace('\\"', '"'), pos)
        else:
            yield Token(kind, value, pos)
        index = mo.end()
    yield Token("EOF", "", SourcePos(line, index - line_start + 1, path))
