"""
Решатель ограничений: номинальная унификация, свежесть, выполнимость
"""

from .constraints import EMPTY, ConstraintSet, consistent, extend, solve_fresh, unify, unify_all
from .semantics import entails, satisfies

__all__ = [
    'EMPTY',
    'ConstraintSet',
    'consistent',
    'extend',
    'solve_fresh',
    'unify',
    'unify_all',
    'entails',
    'satisfies',
]
