"""
Общие фикстуры тестов: небольшие спецификации и программы корпуса
"""
from pathlib import Path

import pytest

from app.models.program import Program
from app.repositories.program_repository import ProgramRepository
from app.search.engine import Engine
from app.services.loader_service import LoaderService

CORPUS_DIR = Path(__file__).resolve().parent.parent / "corpus"

NAT_SPEC = """
nat : type.
z : nat.
s : nat -> nat.

pred add(nat,nat,nat).
add(z,N,N).
add(s(M),N,s(K)) :- add(M,N,K).

pred even(nat).
even(z).
even(s(s(N))) :- even(N).

#check "add_id" 4 : add(z,N,M) => N = M.
#check "even_succ" 3 : even(N) => even(s(N)).
"""

NAME_SPEC = """
id : name_type.
tm : type.
var : id -> tm.
lam : id\\tm -> tm.
app : (tm,tm) -> tm.

pred closed(tm).
closed(lam(x\\M)) :- closed_in([x], M).

pred closed_in([id], tm).
closed_in(G, var(X)) :- mem(X, G).
closed_in(G, lam(x\\M)) :- x # G, closed_in([x|G], M).
closed_in(G, app(M,N)) :- closed_in(G, M), closed_in(G, N).

pred mem(id, [id]).
mem(X, [X|L]).
mem(X, [Y|L]) :- X # Y, mem(X, L).

#check "var_closed" 3 : closed_in([], var(X)) => false.
"""


def load_text(text: str, path: str = "") -> Program:
    return LoaderService().load_text(text, path)


def load_corpus(name: str) -> Program:
    path = CORPUS_DIR / name
    return load_text(path.read_text(encoding="utf-8"), str(path))


@pytest.fixture
def corpus_dir() -> Path:
    return CORPUS_DIR


@pytest.fixture
def nat_program() -> Program:
    return load_text(NAT_SPEC, "nat.apl")


@pytest.fixture
def name_program() -> Program:
    return load_text(NAME_SPEC, "names.apl")


@pytest.fixture
def nat_engine(nat_program: Program) -> Engine:
    return Engine(ProgramRepository(nat_program))


@pytest.fixture(scope="session")
def lam_buggy() -> Program:
    return load_corpus("lam_buggy.apl")


@pytest.fixture(scope="session")
def lam_fixed() -> Program:
    return load_corpus("lam_fixed.apl")


@pytest.fixture
def directive():
    def find(program: Program, label: str):
        for d in program.checks:
            if d.label == label:
                return d
        raise KeyError(label)
    return find
