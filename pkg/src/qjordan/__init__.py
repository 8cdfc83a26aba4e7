"""Exact-arithmetic workbench for finite quadratic Jordan algebras."""

from qjordan.gf import FieldElement, FieldSpec, find_irreducible
from qjordan.qjcore import QuadraticAlgebra

__all__ = ["FieldElement", "FieldSpec", "QuadraticAlgebra", "find_irreducible"]
