"""Finite posets: levels, level-induced suborders, ali/nacli recognition and finders."""

__version__ = "0.1.0"
