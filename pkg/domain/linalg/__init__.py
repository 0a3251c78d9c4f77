# domain/linalg/__init__.py
"""Arithmétique exacte et algèbre linéaire dense sur Q et GF(p)."""

from domain.linalg.field import FieldKind, FieldSpec, FieldSpecError, PrimeFieldElement
from domain.linalg.matrix import DimensionMismatchError, Matrix, Vector
from domain.linalg.spectral import minimal_polynomial, split_semisimple_element
from domain.linalg.subspace import Subspace

__all__ = [
    "DimensionMismatchError",
    "FieldKind",
    "FieldSpec",
    "FieldSpecError",
    "Matrix",
    "PrimeFieldElement",
    "Subspace",
    "Vector",
    "minimal_polynomial",
    "split_semisimple_element",
]
