"""
Модели предметной области: типы, термы, цели, программа и отчёты
"""

from .goals import Atom, Conj, Disj, Eq, Exists, ForallStar, Fresh, Goal, New
from .program import CheckDirective, Clause, Constructor, Program, Signature
from .report import CheckReport, RunConfig, RunReport
from .terms import Abs, App, Conc, Name, Pair, Perm, Susp, Term, Var
from .types import AbsType, BaseType, NameType, ProdType, TypeExpr, UnitType

__all__ = [
    'Atom', 'Conj', 'Disj', 'Eq', 'Exists', 'ForallStar', 'Fresh', 'Goal', 'New',
    'CheckDirective', 'Clause', 'Constructor', 'Program', 'Signature',
    'CheckReport', 'RunConfig', 'RunReport',
    'Abs', 'App', 'Conc', 'Name', 'Pair', 'Perm', 'Susp', 'Term', 'Var',
    'AbsType', 'BaseType', 'NameType', 'ProdType', 'TypeExpr', 'UnitType',
]
