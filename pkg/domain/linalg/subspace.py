# domain/linalg/subspace.py

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

from domain.linalg.field import FieldSpec, Scalar
from domain.linalg.matrix import (
    DimensionMismatchError,
    Matrix,
    Vector,
    _rref_rows,
    matrix_from_vectors,
    unit_vector,
    vec_combination,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Subspace:
    """
    Sous-espace de K^n stocké par sa base échelonnée réduite.

    Deux sous-espaces égaux ont exactement la même base stockée,
    l'égalité de dataclass est donc l'égalité ensembliste.
    """

    field: FieldSpec
    ambient: int
    basis: Tuple[Vector, ...]
    pivots: Tuple[int, ...]

    @classmethod
    def span(cls, field: FieldSpec, ambient: int, vectors: Iterable[Sequence[Scalar]]) -> "Subspace":
        rows = [list(v) for v in vectors]
        for r in rows:
            if len(r) != ambient:
                raise DimensionMismatchError(f"vecteur de taille {len(r)} dans K^{ambient}")
        pivots = _rref_rows(rows, ambient)
        return cls(field, ambient, tuple(tuple(rows[i]) for i in range(len(pivots))), tuple(pivots))

    @classmethod
    def zero(cls, field: FieldSpec, ambient: int) -> "Subspace":
        return cls(field, ambient, (), ())

    @classmethod
    def full(cls, field: FieldSpec, ambient: int) -> "Subspace":
        return cls(field, ambient, tuple(unit_vector(field, ambient, i) for i in range(ambient)), tuple(range(ambient)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self) -> int:
        return self.dim

    def as_matrix(self) -> Matrix:
        return matrix_from_vectors(self.field, self.basis, self.ambient)

    def reduce(self, v: Sequence[Scalar]) -> Vector:
        """Réduit v modulo le sous-espace (forme normale sur les colonnes non pivots)."""
        out = list(v)
        for row, c in zip(self.basis, self.pivots):
            f = out[c]
            if f:
                out = [a - f * b if b else a for a, b in zip(out, row)]
        return tuple(out)

    def contains(self, v: Sequence[Scalar]) -> bool:
        return not any(self.reduce(v))

    def contains_space(self, other: "Subspace") -> bool:
        return all(self.contains(v) for v in other.basis)

    def coordinates(self, v: Sequence[Scalar]) -> Optional[Vector]:
        """Coordonnées de v dans la base stockée, None si v n'est pas dans l'espace."""
        if not self.contains(v):
            return None
        return tuple(v[c] for c in self.pivots)

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace.span(self.field, self.ambient, self.basis + other.basis)

    def intersection(self, other: "Subspace") -> "Subspace":
        if not self.basis or not other.basis:
            return Subspace.zero(self.field, self.ambient)
        # a·U = b·W  <=>  (a, b) dans le noyau à gauche de [U ; -W]
        stacked = matrix_from_vectors(self.field, self.basis + tuple(tuple(-x for x in w) for w in other.basis), self.ambient)
        kernel = stacked.left_kernel_basis()
        vectors = [vec_combination(self.field, k[: self.dim], self.basis, self.ambient) for k in kernel]
        return Subspace.span(self.field, self.ambient, vectors)

    def complement_indices(self) -> List[int]:
        """Indices des vecteurs standard complétant une base (colonnes non pivots)."""
        pivot_set = set(self.pivots)
        return [i for i in range(self.ambient) if i not in pivot_set]

    def extend_with(self, candidates: Iterable[Sequence[Scalar]]) -> List[Vector]:
        """Choisit gloutonnement des candidats indépendants modulo le sous-espace."""
        chosen: List[Vector] = []
        current = self
        for v in candidates:
            if current.dim == self.ambient:
                break
            if not current.contains(v):
                chosen.append(tuple(v))
                current = Subspace.span(self.field, self.ambient, current.basis + (tuple(v),))
        return chosen

    def complement_basis(self) -> List[Vector]:
        return [unit_vector(self.field, self.ambient, i) for i in self.complement_indices()]


class EchelonBasis:
    """
    Base semi-échelonnée construite incrémentalement.

    Chaque ligne ajoutée est réduite par les précédentes : la réduction d'un
    vecteur dans l'ordre d'insertion est alors exacte en O(k·n).
    """

    def __init__(self, field: FieldSpec, ambient: int) -> None:
        self.field = field
        self.ambient = ambient
        self.rows: List[List[Scalar]] = []
        self.pivots: List[int] = []

    def __len__(self) -> int:
        return len(self.rows)

    def reduce(self, v: Sequence[Scalar]) -> List[Scalar]:
        out = list(v)
        for row, c in zip(self.rows, self.pivots):
            f = out[c]
            if f:
                out = [a - f * b if b else a for a, b in zip(out, row)]
        return out

    def contains(self, v: Sequence[Scalar]) -> bool:
        return not any(self.reduce(v))

    def add(self, v: Sequence[Scalar]) -> bool:
        """Ajoute v s'il est indépendant ; renvoie True dans ce cas."""
        reduced = self.reduce(v)
        for c, x in enumerate(reduced):
            if x:
                inv = 1 / x
                self.rows.append([y * inv for y in reduced])
                self.pivots.append(c)
                return True
        return False

    def to_subspace(self) -> Subspace:
        return Subspace.span(self.field, self.ambient, self.rows)
