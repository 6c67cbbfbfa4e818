"""Exact computations with extended Hecke algebras, Kazhdan-Lusztig
cells, the asymptotic ring, coset character theory, and the symbol
calculus behind the classification tables for the twisted families
2A, 2D, 3D4 and 2E6."""

__version__ = "0.1.0"
