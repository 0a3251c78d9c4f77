# domain/algebra/ideals.py

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import List, Sequence, Tuple

from domain.algebra.algebra import Algebra, ConsistencyError, build_algebra
from domain.linalg.field import Scalar
from domain.linalg.matrix import Matrix, Vector, matrix_from_vectors, vec_combination
from domain.linalg.subspace import EchelonBasis, Subspace

logger = logging.getLogger(__name__)

TWO_SIDED = "two-sided"
LEFT = "left"
RIGHT = "right"
SUBSPACE = "subspace"


class NotAnIdealError(ValueError):
    """
    Exception fonctionnelle : le sous-espace fourni n'est pas stable par
    multiplication du côté annoncé.
    """


class ImproperIdealError(ValueError):
    """
    Exception fonctionnelle : tous les idempotents primitifs tombent dans
    l'idéal, l'identité résiduelle n'existe pas.
    """


def _closed_left(a: Algebra, space: Subspace) -> bool:
    return all(space.contains(a.mul(a.basis_vector(k), x)) for x in space.basis for k in range(a.dim))


def _closed_right(a: Algebra, space: Subspace) -> bool:
    return all(space.contains(a.mul(x, a.basis_vector(k))) for x in space.basis for k in range(a.dim))


def _kind_of(a: Algebra, space: Subspace) -> str:
    left, right = _closed_left(a, space), _closed_right(a, space)
    if left and right:
        return TWO_SIDED
    if left:
        return LEFT
    if right:
        return RIGHT
    return SUBSPACE


@dataclass(frozen=True, eq=False)
class Ideal:
    """Idéal (ou sous-espace annoté par sa stabilité) d'une algèbre."""

    algebra: Algebra
    space: Subspace
    kind: str = TWO_SIDED

    @classmethod
    def from_subspace(cls, a: Algebra, space: Subspace, kind: str = TWO_SIDED) -> "Ideal":
        errors: List[str] = []
        if kind in (TWO_SIDED, LEFT) and not _closed_left(a, space):
            errors.append("non stable par multiplication à gauche")
        if kind in (TWO_SIDED, RIGHT) and not _closed_right(a, space):
            errors.append("non stable par multiplication à droite")
        if errors:
            raise NotAnIdealError(" / ".join(errors))
        return cls(a, space, kind)

    @classmethod
    def classified(cls, a: Algebra, space: Subspace) -> "Ideal":
        return cls(a, space, _kind_of(a, space))

    @classmethod
    def generated_by(cls, a: Algebra, vectors: Sequence[Sequence[Scalar]]) -> "Ideal":
        """Idéal bilatère A·X·A."""
        acc = EchelonBasis(a.field, a.dim)
        for v in vectors:
            for i in range(a.dim):
                left = a.mul(a.basis_vector(i), v)
                if not any(left):
                    continue
                for j in range(a.dim):
                    p = a.mul(left, a.basis_vector(j))
                    if any(p):
                        acc.add(p)
        return cls(a, acc.to_subspace(), TWO_SIDED)

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def basis(self) -> Tuple[Vector, ...]:
        return self.space.basis

    @property
    def is_two_sided(self) -> bool:
        return self.kind == TWO_SIDED

    def contains(self, x: Sequence[Scalar]) -> bool:
        return self.space.contains(x)

    def same_as(self, other: "Ideal") -> bool:
        return self.space == other.space


def radical(a: Algebra) -> Ideal:
    return Ideal(a, a.radical, TWO_SIDED)


def right_socle_space(a: Algebra) -> Subspace:
    """{x | x·rad(A) = 0}."""
    return left_annihilator_space(a, a.radical.basis)


def left_socle_space(a: Algebra) -> Subspace:
    """{x | rad(A)·x = 0}."""
    return right_annihilator_space(a, a.radical.basis)


def socle(a: Algebra) -> Ideal:
    """
    Socle à droite ; pour une algèbre auto-injective on vérifie qu'il coïncide
    avec le socle à gauche.
    """
    from domain.algebra.properties import is_self_injective

    right = right_socle_space(a)
    if is_self_injective(a) is not None:
        left = left_socle_space(a)
        if left != right:
            raise ConsistencyError("socles à gauche et à droite distincts pour une algèbre auto-injective")
    return Ideal(a, right, TWO_SIDED)


# ------------------------------------------------------------------ #
# Annulateurs
# ------------------------------------------------------------------ #


def left_annihilator_space(a: Algebra, vectors: Sequence[Sequence[Scalar]]) -> Subspace:
    """l_A(X) = {y | y·x = 0 pour x dans X}."""
    vectors = [v for v in vectors if any(v)]
    if not vectors:
        return Subspace.full(a.field, a.dim)
    stacked = a.right_multiplication(vectors[0])
    for v in vectors[1:]:
        stacked = stacked.hstack(a.right_multiplication(v))
    return Subspace.span(a.field, a.dim, stacked.left_kernel_basis())


def right_annihilator_space(a: Algebra, vectors: Sequence[Sequence[Scalar]]) -> Subspace:
    """r_A(X) = {y | x·y = 0 pour x dans X}."""
    vectors = [v for v in vectors if any(v)]
    if not vectors:
        return Subspace.full(a.field, a.dim)
    stacked = a.left_multiplication(vectors[0])
    for v in vectors[1:]:
        stacked = stacked.hstack(a.left_multiplication(v))
    return Subspace.span(a.field, a.dim, stacked.left_kernel_basis())


def left_annihilator(a: Algebra, x: Subspace) -> Ideal:
    return Ideal.classified(a, left_annihilator_space(a, x.basis))


def right_annihilator(a: Algebra, x: Subspace) -> Ideal:
    return Ideal.classified(a, right_annihilator_space(a, x.basis))


# ------------------------------------------------------------------ #
# Quotients
# ------------------------------------------------------------------ #


@dataclass(frozen=True, eq=False)
class QuotientMap:
    """Projection A → A/I : matrice (dim A × dim A/I) et sommets survivants."""

    source: Algebra
    target: Algebra
    matrix: Matrix
    survivors: Tuple[int, ...]
    complement: Tuple[int, ...]

    def __call__(self, x: Sequence[Scalar]) -> Vector:
        return self.matrix.left_apply(x)

    def lift(self, y: Sequence[Scalar]) -> Vector:
        """Relevé canonique sur les vecteurs de base complémentaires."""
        out = list(self.source.zero())
        for value, k in zip(y, self.complement):
            out[k] = value
        return tuple(out)


def surviving_vertices(a: Algebra, ideal: Ideal) -> List[int]:
    return [v for v in range(a.n_vertices) if not ideal.contains(a.idempotent(v))]


def residual_identity(a: Algebra, ideal: Ideal) -> Tuple[Vector, List[int]]:
    """e = somme des e_j hors de I ; renvoie (e, sommets survivants)."""
    survivors = surviving_vertices(a, ideal)
    if not survivors:
        raise ImproperIdealError("tous les idempotents primitifs appartiennent à l'idéal")
    return a.idempotent_sum(survivors), survivors


def quotient(a: Algebra, ideal: Ideal, check_idempotents: bool = True) -> QuotientMap:
    """
    A/I sur une base complémentaire de vecteurs de base standard (idempotents
    survivants en tête), constantes de structure projetées. Les idempotents
    survivants sont vérifiés primitifs sauf si check_idempotents est faux.
    """
    if not ideal.is_two_sided:
        raise NotAnIdealError("le quotient exige un idéal bilatère")
    field = a.field
    survivors = surviving_vertices(a, ideal)
    acc = EchelonBasis(field, a.dim)
    for v in ideal.basis:
        acc.add(v)
    complement: List[int] = []
    candidates = [a.idempotents[v] for v in survivors] + [k for k in range(a.dim) if k not in a.idempotents]
    for k in candidates:
        if acc.add(a.basis_vector(k)):
            complement.append(k)
    complement.sort()
    # x = y·T avec T = [base de I ; vecteurs complémentaires]
    rows = list(ideal.basis) + [a.basis_vector(k) for k in complement]
    inverse = matrix_from_vectors(field, rows, a.dim).inverse()
    if inverse is None:
        raise ConsistencyError("base adaptée au quotient non inversible")
    offset = ideal.dim
    projection = inverse.submatrix(range(a.dim), range(offset, a.dim))

    renumber = {old: new for new, old in enumerate(survivors)}
    peirce = []
    for k in complement:
        s, t = a.peirce[k]
        if s not in renumber or t not in renumber:
            raise ConsistencyError("vecteur complémentaire hors des sommets survivants")
        peirce.append((renumber[s], renumber[t]))
    position = {k: i for i, k in enumerate(complement)}

    def product(i: int, j: int) -> Vector:
        return projection.left_apply(a.basis_product(complement[i], complement[j]))

    hint = tuple(projection.left_apply(v) for v in a.radical.basis)
    target = build_algebra(
        field,
        [a.labels[k] for k in complement],
        peirce,
        product,
        [position[a.idempotents[v]] for v in survivors],
        [a.vertex_names[v] for v in survivors],
        radical_hint=hint,
        provenance=f"quotient de dimension {len(complement)}",
    )
    if check_idempotents:
        from domain.algebra.properties import verify_primitive_idempotents  # import circulaire

        verify_primitive_idempotents(target)
    logger.debug("Quotient construit : dim %d -> %d, %d sommets survivants.", a.dim, target.dim, len(survivors))
    return QuotientMap(a, target, projection, tuple(survivors), tuple(complement))


def ideal_product(a: Algebra, x: Ideal, y: Ideal) -> Subspace:
    return a.product_span(x.basis, y.basis)


def left_multiple(a: Algebra, element: Sequence[Scalar], space: Subspace) -> Subspace:
    """e·X."""
    return a.span([a.mul(element, v) for v in space.basis])


def right_multiple(a: Algebra, space: Subspace, element: Sequence[Scalar]) -> Subspace:
    """X·e."""
    return a.span([a.mul(v, element) for v in space.basis])


def sandwich(a: Algebra, element: Sequence[Scalar], space: Subspace) -> Subspace:
    """e·X·e."""
    return a.span([a.mul(a.mul(element, v), element) for v in space.basis])


def coordinates_in(space: Subspace, vectors: Sequence[Sequence[Scalar]]) -> List[Vector]:
    out = []
    for v in vectors:
        c = space.coordinates(v)
        if c is None:
            raise NotAnIdealError("vecteur hors du sous-espace")
        out.append(c)
    return out


def combination(a: Algebra, coefficients: Sequence[Scalar], vectors: Sequence[Sequence[Scalar]]) -> Vector:
    return vec_combination(a.field, coefficients, vectors, a.dim)
