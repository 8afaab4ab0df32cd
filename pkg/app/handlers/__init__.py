"""
Пакет с обработчиками командной строки
"""
