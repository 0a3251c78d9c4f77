# domain/arquiver/sequences.py

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import List

from domain.linalg.matrix import matrix_from_vectors, unit_vector
from domain.linalg.subspace import Subspace
from domain.modules.hom import combine, hom_ambient, hom_basis, lift_along, radical_endomorphisms
from domain.modules.homology import is_projective_module, minimal_presentation, tau
from domain.modules.module import (
    Module,
    Morphism,
    cokernel,
    direct_sum,
    induced_from_quotient,
    restrict_to_submodule,
)

logger = logging.getLogger(__name__)


class ProjectiveEndError(ValueError):
    """Aucune suite presque scindée ne se termine en un module projectif."""


class AlmostSplitError(RuntimeError):
    """Aucun cocycle annulé par le radical de End(M) : incohérence interne."""


@dataclass(frozen=True, eq=False)
class AlmostSplitSequence:
    """0 -> τM --mono--> E --epi--> M -> 0."""

    left: Module
    middle: Module
    right: Module
    mono: Morphism
    epi: Morphism

    def is_exact(self) -> bool:
        if not self.mono.then(self.epi).is_zero():
            return False
        mono_rank = sum(m.rank() for m in self.mono.maps)
        epi_rank = sum(m.rank() for m in self.epi.maps)
        return mono_rank == self.left.dim and epi_rank == self.right.dim and (
            self.middle.dim == self.left.dim + self.right.dim
        )

    def is_split(self) -> bool:
        return lift_along(Morphism.identity(self.right), self.epi) is not None


def almost_split_sequence(m: Module) -> AlmostSplitSequence:
    """
    Suite presque scindée se terminant en M indécomposable non projectif.

    Ext¹(M, τM) est lu comme Hom(K, τM) modulo les restrictions de
    Hom(P0, τM), K étant le noyau de la couverture projective P0 -> M. On
    retient une classe non nulle annulée par les tirés en arrière le long de
    rad End(M), puis E est la somme amalgamée (τM ⊕ P0)/{(φ(k), -k)}.
    """
    if m.dim == 0 or is_projective_module(m):
        raise ProjectiveEndError(f"{m.describe()} est projectif")
    field = m.field
    left = tau(m)
    pres = minimal_presentation(m)
    k_module, k_incl, p0 = pres.kernel, pres.kernel_inclusion, pres.p0

    ambient = hom_ambient(k_module, left)
    trivial = Subspace.span(field, ambient, [k_incl.then(h).flatten() for h in hom_basis(pres.P0, left)])
    cocycles = hom_basis(k_module, left)
    if not cocycles:
        raise AlmostSplitError(f"Ext¹({m.describe()}, τ) nul")

    restrictions: List[Morphism] = []
    for f in radical_endomorphisms(m):
        lifted = lift_along(p0.then(f), p0)
        if lifted is None:
            raise AlmostSplitError("relèvement d'un endomorphisme impossible")
        restrictions.append(restrict_to_submodule(k_incl.then(lifted), k_incl))

    if restrictions:
        rows = []
        for phi in cocycles:
            row = []
            for r in restrictions:
                row.extend(trivial.reduce(r.then(phi).flatten()))
            rows.append(tuple(row))
        socle = matrix_from_vectors(field, rows, ambient * len(restrictions)).left_kernel_basis()
    else:
        socle = [unit_vector(field, len(cocycles), i) for i in range(len(cocycles))]

    phi = None
    for coords in socle:
        candidate = combine(cocycles, coords)
        if not trivial.contains(candidate.flatten()):
            phi = candidate
            break
    if phi is None:
        logger.error("Aucun cocycle presque scindé pour %s.", m.describe())
        raise AlmostSplitError(f"socle de Ext¹({m.describe()}, τ) introuvable")

    total, inclusions, projections = direct_sum([left, pres.P0])
    relation = phi.then(inclusions[0]) + k_incl.scale(-field.one).then(inclusions[1])
    middle, q = cokernel(relation)
    mono = inclusions[0].then(q)
    epi = induced_from_quotient(q, projections[1].then(p0))
    logger.debug(
        "Suite presque scindée : %s -> E%s -> %s.", left.dim_vector, middle.dim_vector, m.dim_vector
    )
    return AlmostSplitSequence(left, middle, m, mono, epi)
