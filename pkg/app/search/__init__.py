"""
Поиск доказательств: бэкчейнинг с бюджетом, ∀*, отрицание как неудача и углубление
"""

from .engine import Answer, Deadline, Engine, Exhausted, Found, SearchStats, deepen, exhaust

__all__ = ['Answer', 'Deadline', 'Engine', 'Exhausted', 'Found', 'SearchStats', 'deepen', 'exhaust']
