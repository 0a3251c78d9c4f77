# domain/modules/trace.py

from __future__ import annotations

import logging
from typing import List

from domain.algebra.algebra import Algebra
from domain.algebra.ideals import Ideal
from domain.linalg.matrix import Vector
from domain.linalg.subspace import Subspace
from domain.modules.hom import hom_basis
from domain.modules.module import Module, dual, projective

logger = logging.getLogger(__name__)


def _embed(a: Algebra, i: int, w: int, local: Vector) -> Vector:
    """Vecteur de P_i·e_w = e_i A e_w vu dans A."""
    out = list(a.zero())
    for k, c in zip(a.block(i, w), local):
        out[k] = c
    return tuple(out)


def trace_ideal(a: Algebra, m: Module) -> Ideal:
    """
    Trace de M dans A_A : somme des images f(M) pour f : M -> A = ⊕ P_i.
    C'est un idéal bilatère.
    """
    if m.algebra is not a:
        raise ValueError("le module n'est pas défini sur l'algèbre fournie")
    vectors: List[Vector] = []
    for i in range(a.n_vertices):
        p = projective(a, i)
        for f in hom_basis(m, p):
            for w, block in enumerate(f.maps):
                vectors.extend(_embed(a, i, w, row) for row in block.entries if any(row))
    space = Subspace.span(a.field, a.dim, vectors)
    logger.debug("Trace de %s dans A : dimension %d.", m.describe(), space.dim)
    return Ideal(a, space)


def dual_trace_ideal(a: Algebra, m: Module) -> Ideal:
    """Trace de DM dans le module régulier de A^op, lue comme sous-espace de A."""
    op_trace = trace_ideal(a.opposite, dual(m))
    return Ideal(a, op_trace.space)
