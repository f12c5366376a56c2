"""
CLI modul za Dinamiku
"""
