"""
Конкретный синтаксис: разбор, раскрытие функций, типизация, элаборация и печать
"""

from .elaborate import build_signature, elaborate
from .flatten import flatten_functions
from .parser import parse_goal, parse_program, parse_term
from .printer import CorePrinter, Namer, print_clause, print_core_program, print_program

__all__ = [
    'build_signature',
    'elaborate',
    'flatten_functions',
    'parse_goal',
    'parse_program',
    'parse_term',
    'CorePrinter',
    'Namer',
    'print_clause',
    'print_core_program',
    'print_program',
]
