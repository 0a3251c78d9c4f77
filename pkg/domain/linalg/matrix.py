# domain/linalg/matrix.py

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any, Iterable, List, Optional, Sequence, Tuple

from domain.linalg.field import FieldSpec, Scalar

logger = logging.getLogger(__name__)

Vector = Tuple[Scalar, ...]


class DimensionMismatchError(ValueError):
    """
    Exception fonctionnelle : dimensions incompatibles entre matrices
    ou entre une matrice et un vecteur.
    """


# ------------------------------------------------------------------ #
# Vecteurs (tuples d'éléments du corps)
# ------------------------------------------------------------------ #


def zero_vector(field: FieldSpec, n: int) -> Vector:
    zero = field.zero
    return tuple(zero for _ in range(n))


def unit_vector(field: FieldSpec, n: int, index: int) -> Vector:
    zero, one = field.zero, field.one
    return tuple(one if k == index else zero for k in range(n))


def vec_add(u: Sequence[Scalar], v: Sequence[Scalar]) -> Vector:
    if len(u) != len(v):
        raise DimensionMismatchError(f"vecteurs de tailles {len(u)} et {len(v)}")
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u: Sequence[Scalar], v: Sequence[Scalar]) -> Vector:
    if len(u) != len(v):
        raise DimensionMismatchError(f"vecteurs de tailles {len(u)} et {len(v)}")
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(c: Scalar, v: Sequence[Scalar]) -> Vector:
    return tuple(c * a for a in v)


def vec_is_zero(v: Sequence[Scalar]) -> bool:
    return not any(v)


def vec_combination(field: FieldSpec, coefficients: Sequence[Scalar], vectors: Sequence[Sequence[Scalar]], n: int) -> Vector:
    """Combinaison linéaire Σ c_k v_k (n = taille si la liste est vide)."""
    acc = [field.zero] * n
    for c, v in zip(coefficients, vectors):
        if not c:
            continue
        for k, a in enumerate(v):
            if a:
                acc[k] = acc[k] + c * a
    return tuple(acc)


# ------------------------------------------------------------------ #
# Noyaux de calcul sur listes de lignes
# ------------------------------------------------------------------ #


def _rref_rows(rows: List[List[Scalar]], ncols: int) -> List[int]:
    """Réduction de Gauss-Jordan en place ; renvoie les colonnes pivots."""
    pivots: List[int] = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        pivot_row = None
        for i in range(r, nrows):
            if rows[i][c]:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        if pivot_row != r:
            rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        base = rows[r]
        for i in range(nrows):
            if i != r:
                f = rows[i][c]
                if f:
                    rows[i] = [a - f * b if b else a for a, b in zip(rows[i], base)]
        pivots.append(c)
        r += 1
    return pivots


@dataclass(frozen=True)
class Matrix:
    """
    Matrice dense immuable sur un corps exact.

    Convention : les vecteurs sont des tuples ; `apply(v)` calcule m·v
    (vecteur colonne), `left_apply(v)` calcule v·m (vecteur ligne).
    """

    field: FieldSpec
    rows: int
    cols: int
    entries: Tuple[Tuple[Scalar, ...], ...]

    def __post_init__(self) -> None:
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise DimensionMismatchError(
                f"entrées incohérentes avec la forme {self.rows}x{self.cols}"
            )

    # ------------------------------------------------------------------ #
    # Constructeurs
    # ------------------------------------------------------------------ #

    @classmethod
    def from_rows(cls, field: FieldSpec, rows: Iterable[Iterable[Any]], cols: Optional[int] = None) -> "Matrix":
        data = tuple(tuple(field.element(x) for x in row) for row in rows)
        ncols = cols if cols is not None else (len(data[0]) if data else 0)
        return cls(field, len(data), ncols, data)

    @classmethod
    def zeros(cls, field: FieldSpec, rows: int, cols: int) -> "Matrix":
        zero = field.zero
        return cls(field, rows, cols, tuple(tuple(zero for _ in range(cols)) for _ in range(rows)))

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "Matrix":
        return cls(field, n, n, tuple(unit_vector(field, n, i) for i in range(n)))

    @classmethod
    def diagonal(cls, field: FieldSpec, values: Sequence[Any]) -> "Matrix":
        n = len(values)
        zero = field.zero
        return cls(
            field, n, n,
            tuple(tuple(field.element(values[i]) if i == j else zero for j in range(n)) for i in range(n)),
        )

    @classmethod
    def block_diagonal(cls, field: FieldSpec, blocks: Sequence["Matrix"]) -> "Matrix":
        rows = sum(b.rows for b in blocks)
        cols = sum(b.cols for b in blocks)
        data = [[field.zero] * cols for _ in range(rows)]
        r0 = c0 = 0
        for b in blocks:
            for i, row in enumerate(b.entries):
                data[r0 + i][c0:c0 + b.cols] = list(row)
            r0 += b.rows
            c0 += b.cols
        return cls(field, rows, cols, tuple(tuple(r) for r in data))

    # ------------------------------------------------------------------ #
    # Accès
    # ------------------------------------------------------------------ #

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def row(self, i: int) -> Vector:
        return self.entries[i]

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.entries)

    def flatten(self) -> Vector:
        return tuple(x for r in self.entries for x in r)

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.entries)

    def submatrix(self, row_indices: Sequence[int], col_indices: Sequence[int]) -> "Matrix":
        return Matrix(
            self.field, len(row_indices), len(col_indices),
            tuple(tuple(self.entries[i][j] for j in col_indices) for i in row_indices),
        )

    # ------------------------------------------------------------------ #
    # Arithmétique
    # ------------------------------------------------------------------ #

    def transpose(self) -> "Matrix":
        return Matrix(self.field, self.cols, self.rows, tuple(zip(*self.entries)) if self.rows else tuple(() for _ in range(self.cols)))

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise DimensionMismatchError(f"addition {self.shape} + {other.shape}")
        return Matrix(self.field, self.rows, self.cols, tuple(vec_add(a, b) for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise DimensionMismatchError(f"soustraction {self.shape} - {other.shape}")
        return Matrix(self.field, self.rows, self.cols, tuple(vec_sub(a, b) for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> "Matrix":
        return self.scale(-self.field.one)

    def scale(self, c: Any) -> "Matrix":
        c = self.field.element(c)
        return Matrix(self.field, self.rows, self.cols, tuple(vec_scale(c, r) for r in self.entries))

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise DimensionMismatchError(f"produit {self.shape} @ {other.shape}")
        zero = self.field.zero
        other_rows = other.entries
        out = []
        for r in self.entries:
            acc = [zero] * other.cols
            for k, a in enumerate(r):
                if a:
                    for j, b in enumerate(other_rows[k]):
                        if b:
                            acc[j] = acc[j] + a * b
            out.append(tuple(acc))
        return Matrix(self.field, self.rows, other.cols, tuple(out))

    def apply(self, v: Sequence[Scalar]) -> Vector:
        if len(v) != self.cols:
            raise DimensionMismatchError(f"m·v avec m {self.shape} et v de taille {len(v)}")
        zero = self.field.zero
        out = []
        for r in self.entries:
            acc = zero
            for a, b in zip(r, v):
                if a and b:
                    acc = acc + a * b
            out.append(acc)
        return tuple(out)

    def left_apply(self, v: Sequence[Scalar]) -> Vector:
        if len(v) != self.rows:
            raise DimensionMismatchError(f"v·m avec m {self.shape} et v de taille {len(v)}")
        return vec_combination(self.field, v, self.entries, self.cols)

    def power(self, exponent: int) -> "Matrix":
        if not self.is_square:
            raise DimensionMismatchError("puissance d'une matrice non carrée")
        result = Matrix.identity(self.field, self.rows)
        base = self
        while exponent:
            if exponent & 1:
                result = result @ base
            base = base @ base
            exponent >>= 1
        return result

    def trace(self) -> Scalar:
        acc = self.field.zero
        for i in range(min(self.rows, self.cols)):
            acc = acc + self.entries[i][i]
        return acc

    def hstack(self, other: "Matrix") -> "Matrix":
        if self.rows != other.rows:
            raise DimensionMismatchError(f"concaténation horizontale {self.shape} | {other.shape}")
        return Matrix(self.field, self.rows, self.cols + other.cols, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def vstack(self, other: "Matrix") -> "Matrix":
        if self.cols != other.cols:
            raise DimensionMismatchError(f"concaténation verticale {self.shape} / {other.shape}")
        return Matrix(self.field, self.rows + other.rows, self.cols, self.entries + other.entries)

    # ------------------------------------------------------------------ #
    # Algèbre linéaire exacte
    # ------------------------------------------------------------------ #

    def rref(self) -> Tuple["Matrix", List[int]]:
        rows = [list(r) for r in self.entries]
        pivots = _rref_rows(rows, self.cols)
        return Matrix(self.field, self.rows, self.cols, tuple(tuple(r) for r in rows)), pivots

    def rank(self) -> int:
        rows = [list(r) for r in self.entries]
        return len(_rref_rows(rows, self.cols))

    def kernel_basis(self) -> List[Vector]:
        """Base de {x | m·x = 0} ; cardinal = cols − rang."""
        rows = [list(r) for r in self.entries]
        pivots = _rref_rows(rows, self.cols)
        pivot_set = set(pivots)
        zero, one = self.field.zero, self.field.one
        basis: List[Vector] = []
        for free in range(self.cols):
            if free in pivot_set:
                continue
            x = [zero] * self.cols
            x[free] = one
            for r, c in enumerate(pivots):
                x[c] = -rows[r][free]
            basis.append(tuple(x))
        return basis

    def left_kernel_basis(self) -> List[Vector]:
        """Base de {y | y·m = 0}."""
        return self.transpose().kernel_basis()

    def solve(self, b: Sequence[Any]) -> Optional[Vector]:
        """Une solution x de m·x = b, ou None si le système est incompatible."""
        if len(b) != self.rows:
            raise DimensionMismatchError(f"second membre de taille {len(b)} pour {self.rows} équations")
        rows = [list(r) + [self.field.element(x)] for r, x in zip(self.entries, b)]
        pivots = _rref_rows(rows, self.cols + 1)
        if pivots and pivots[-1] == self.cols:
            return None
        x = [self.field.zero] * self.cols
        for r, c in enumerate(pivots):
            x[c] = rows[r][self.cols]
        return tuple(x)

    def solve_left(self, b: Sequence[Any]) -> Optional[Vector]:
        """Une solution y de y·m = b, ou None."""
        return self.transpose().solve(b)

    def inverse(self) -> Optional["Matrix"]:
        if not self.is_square:
            raise DimensionMismatchError("inverse d'une matrice non carrée")
        n = self.rows
        rows = [list(r) + list(unit_vector(self.field, n, i)) for i, r in enumerate(self.entries)]
        pivots = _rref_rows(rows, 2 * n)
        if pivots[:n] != list(range(n)):
            return None
        return Matrix(self.field, n, n, tuple(tuple(r[n:]) for r in rows))

    def is_invertible(self) -> bool:
        return self.is_square and self.rank() == self.rows

    def __str__(self) -> str:
        return "\n".join("[" + ", ".join(str(x) for x in r) + "]" for r in self.entries)


def matrix_from_vectors(field: FieldSpec, vectors: Sequence[Sequence[Scalar]], cols: int) -> Matrix:
    """Matrice dont les lignes sont les vecteurs donnés (cols explicite si vide)."""
    return Matrix(field, len(vectors), cols, tuple(tuple(v) for v in vectors))
