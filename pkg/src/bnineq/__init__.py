"""Bernstein-Nikolskii inequalities: constants, witnesses and extremal polynomials."""

__version__ = "0.1.0"
