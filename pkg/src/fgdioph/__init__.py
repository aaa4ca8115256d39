"""Effective tools for Diophantine equations over finitely generated domains.

Sizes and heights of integer polynomials, presented domains, discriminants of
binary forms, heights over function fields and number fields, specializations,
extended-range bound evaluators and capped exhaustive solvers.
"""

__version__ = "0.1.0"
