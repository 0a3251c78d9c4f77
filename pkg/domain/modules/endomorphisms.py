# domain/modules/endomorphisms.py

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from domain.algebra.algebra import Algebra, build_algebra
from domain.algebra.properties import verify_primitive_idempotents
from domain.linalg.subspace import Subspace
from domain.modules.decomposition import DEFAULT_SPLIT_ATTEMPTS, Summand, decompose_summands, group_isoclasses
from domain.modules.hom import CoordinateSystem, combine, endomorphism_ring, hom_ambient, hom_basis
from domain.modules.module import Module, Morphism

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class EndomorphismAlgebra:
    """
    End_A(M) avec ses données de construction : `summands[v]` est le facteur
    indécomposable associé au sommet v, `elements[k]` l'endomorphisme de M
    correspondant au k-ième vecteur de base.
    """

    algebra: Algebra
    module: Module
    summands: Tuple[Summand, ...]
    elements: Tuple[Morphism, ...]
    basic: bool


def _local_basis(m: Module) -> Tuple[List[Morphism], int]:
    """Base de End(X) pour X indécomposable : identité, compléments, puis radical."""
    basis = hom_basis(m, m)
    ring, elements = endomorphism_ring(m, basis)
    rad = ring.radical
    ordered = [ring.basis_vector(0)]
    current = Subspace.span(ring.field, ring.dim, ordered + list(rad.basis))
    extras = current.extend_with([ring.basis_vector(k) for k in range(1, ring.dim)])
    ordered += extras + list(rad.basis)
    return [combine(elements, v) for v in ordered], 1 + len(extras)


def end_algebra(
    m: Module,
    summands: Optional[Sequence[Summand]] = None,
    attempts: int = DEFAULT_SPLIT_ATTEMPTS,
    seed: int = 0,
    vertex_names: Optional[Sequence[str]] = None,
) -> EndomorphismAlgebra:
    """
    End_A(M), produit f·g = f∘g (g d'abord). Les idempotents sont les
    projecteurs sur les facteurs indécomposables de M ; un vecteur de base de
    Hom(X_a, X_c) est de type de Peirce (c, a).
    """
    if summands is None:
        summands = decompose_summands(m, attempts, seed)
    summands = tuple(summands)
    groups = group_isoclasses(summands)
    basic = all(len(g) == 1 for g in groups)
    if not basic:
        logger.warning(
            "End(%s) : facteurs avec multiplicité, l'algèbre obtenue n'est pas basique.", m.describe()
        )
    field = m.field
    n = len(summands)
    elements: List[Morphism] = []
    peirce: List[Tuple[int, int]] = []
    labels: List[str] = []
    idempotents: List[int] = [0] * n
    radical_vectors: List[int] = []
    # morphismes entre facteurs, gardés pour les produits
    local: Dict[Tuple[int, int], List[Morphism]] = {}
    for a in range(n):
        for c in range(n):
            xa, xc = summands[a].module, summands[c].module
            if a == c:
                homs, top_count = _local_basis(xa)
            else:
                homs, top_count = hom_basis(xa, xc), 0
            local[(a, c)] = homs
            for k, h in enumerate(homs):
                index = len(elements)
                if a == c and k == 0:
                    idempotents[a] = index
                elif a != c or k >= top_count:
                    radical_vectors.append(index)
                elements.append(summands[a].projection.then(h).then(summands[c].inclusion))
                peirce.append((c, a))
                labels.append(f"h{a + 1}{c + 1}_{k}" if a != c else (f"ε{a + 1}" if k == 0 else f"h{a + 1}{a + 1}_{k}"))

    ambient = hom_ambient(m, m)
    coords = CoordinateSystem(field, [f.flatten() for f in elements], ambient)

    def product(i: int, j: int):
        # f_i · f_j = f_i ∘ f_j : f_j d'abord
        return coords.coordinates(elements[j].then(elements[i]).flatten())

    dim = len(elements)
    hint = None
    if basic:
        hint = tuple(tuple(field.one if k == r else field.zero for k in range(dim)) for r in radical_vectors)
    names = list(vertex_names) if vertex_names is not None else [s.module.name or str(k + 1) for k, s in enumerate(summands)]
    algebra = build_algebra(
        field,
        labels,
        peirce,
        product,
        idempotents,
        names,
        radical_hint=hint,
        provenance=f"End({m.describe()})",
    )
    verify_primitive_idempotents(algebra)
    logger.debug("End(%s) : dimension %d, %d sommets.", m.describe(), dim, n)
    return EndomorphismAlgebra(algebra, m, summands, tuple(elements), basic)
