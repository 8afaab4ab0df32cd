"""
Номинальное ядро: перестановки, свежесть и α-равенство замкнутых термов, подстановки
"""

from .nominal import alpha_eq_ground, fresh_ground, fresh_name, fresh_var, perm_term, swap_term
from .substitution import rename_goal, subst_goal, subst_term

__all__ = [
    'alpha_eq_ground',
    'fresh_ground',
    'fresh_name',
    'fresh_var',
    'perm_term',
    'swap_term',
    'rename_goal',
    'subst_goal',
    'subst_term',
]
