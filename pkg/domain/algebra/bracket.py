# domain/algebra/bracket.py

from __future__ import annotations

import logging
from typing import List, Tuple

from domain.algebra.algebra import Algebra, ConsistencyError, build_algebra
from domain.algebra.ideals import (
    Ideal,
    left_multiple,
    residual_identity,
    right_annihilator_space,
    sandwich,
)
from domain.algebra.properties import is_self_injective, verify_primitive_idempotents
from domain.linalg.matrix import Vector, matrix_from_vectors, vec_add
from domain.linalg.subspace import Subspace

logger = logging.getLogger(__name__)


class BracketPreconditionError(ValueError):
    """
    Exception fonctionnelle : l'hypothèse r_A(I) = eI n'est pas satisfaite
    (ou A n'est pas auto-injective). Porte les deux sous-espaces comparés.
    """

    def __init__(self, message: str, annihilator: Subspace = None, e_times_i: Subspace = None) -> None:
        super().__init__(message)
        self.annihilator = annihilator
        self.e_times_i = e_times_i


def a_bracket_i(a: Algebra, ideal: Ideal) -> Algebra:
    """
    Algèbre A[I] sur (eAe/eIe) ⊕ I avec (b, x)(c, y) = (bc, by + xc + xy).

    Les sommets de A sont conservés : un sommet survivant garde (e_s, 0),
    un sommet tué par I devient (0, e_j).
    """
    if is_self_injective(a) is None:
        raise BracketPreconditionError("A[I] exige une algèbre auto-injective")
    e, survivors = residual_identity(a, ideal)
    annihilator = right_annihilator_space(a, ideal.basis)
    e_i = left_multiple(a, e, ideal.space)
    if annihilator != e_i:
        raise BracketPreconditionError(
            f"r_A(I) (dim {annihilator.dim}) différent de eI (dim {e_i.dim})",
            annihilator=annihilator,
            e_times_i=e_i,
        )
    field = a.field
    survivor_set = set(survivors)
    eie = sandwich(a, e, ideal.space)
    pivot_set = set(eie.pivots)

    # partie eAe/eIe : colonnes non pivots de eIe dans les blocs survivants
    top: List[int] = [
        k for k, (s, t) in enumerate(a.peirce)
        if s in survivor_set and t in survivor_set and k not in pivot_set
    ]
    # partie I : base homogène bloc par bloc, vecteurs standard sur les blocs pleins
    bottom: List[Vector] = []
    bottom_types: List[Tuple[int, int]] = []
    for (s, t) in sorted(a.blocks):
        block = a.block_subspace(ideal.space, s, t)
        if not block.dim:
            continue
        if block.dim == len(a.block(s, t)):
            vectors = [a.basis_vector(k) for k in a.block(s, t)]
        else:
            vectors = list(block.basis)
        bottom.extend(vectors)
        bottom_types.extend([(s, t)] * len(vectors))
    if len(bottom) != ideal.dim:
        raise ConsistencyError("I n'est pas gradué par les blocs de Peirce")

    completion = Subspace.span(field, a.dim, bottom).complement_basis()
    inverse = matrix_from_vectors(field, bottom + completion, a.dim).inverse()
    if inverse is None:
        raise ConsistencyError("base de I non complétable")
    n_top, n_bottom = len(top), len(bottom)
    top_position = {k: i for i, k in enumerate(top)}
    zero = field.zero

    def split(index: int) -> Tuple[Vector, Vector]:
        if index < n_top:
            return a.basis_vector(top[index]), a.zero()
        return a.zero(), bottom[index - n_top]

    def product(i: int, j: int) -> Vector:
        b, x = split(i)
        c, y = split(j)
        out = [zero] * (n_top + n_bottom)
        if any(b) and any(c):
            reduced = eie.reduce(a.mul(b, c))
            for k, value in enumerate(reduced):
                if value:
                    if k not in top_position:
                        raise ConsistencyError("produit hors de eAe")
                    out[top_position[k]] = value
        tail = vec_add(vec_add(a.mul(b, y), a.mul(x, c)), a.mul(x, y))
        if any(tail):
            coords = inverse.left_apply(tail)
            if any(coords[n_bottom:]):
                raise ConsistencyError("produit hors de I")
            out[n_top:] = coords[:n_bottom]
        return tuple(out)

    peirce = [a.peirce[k] for k in top] + bottom_types
    labels = [a.labels[k] for k in top] + [f"[{a.element_label(v)}]" for v in bottom]
    idempotents = []
    for v in range(a.n_vertices):
        if v in survivor_set:
            idempotents.append(top_position[a.idempotents[v]])
        else:
            idempotents.append(n_top + bottom.index(a.idempotent(v)))
    result = build_algebra(
        field,
        labels,
        peirce,
        product,
        idempotents,
        a.vertex_names,
        provenance=f"A[I] avec dim I = {ideal.dim}",
    )
    verify_primitive_idempotents(result)
    logger.info(
        "A[I] construite : dim %d = %d - %d + %d.",
        result.dim, sum(len(a.block(s, t)) for s in survivors for t in survivors), eie.dim, ideal.dim,
    )
    return result
