"""
Основной пакет приложения
""" 