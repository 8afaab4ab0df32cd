"""
Устранение отрицания: дополнение термов, сгенерированные предикаты и Δ⁻
"""

from .complement import term_complement
from .generated import equality_clauses, gen_goal, generator_clauses, neq_goal, nfr_goal
from .negate import NegatedProgram, negate_program, not_clause, not_def, not_goal, user_generators

__all__ = [
    'term_complement',
    'equality_clauses',
    'gen_goal',
    'generator_clauses',
    'neq_goal',
    'nfr_goal',
    'NegatedProgram',
    'negate_program',
    'not_clause',
    'not_def',
    'not_goal',
    'user_generators',
]
