# domain/modules/homology.py

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Tuple

from domain.algebra.algebra import Algebra
from domain.linalg.matrix import Vector, matrix_from_vectors
from domain.linalg.subspace import Subspace
from domain.modules.decomposition import decompose_summands, group_isoclasses
from domain.modules.hom import hom_ambient, hom_basis, span_dimension
from domain.modules.module import (
    Module,
    Morphism,
    cokernel,
    direct_sum,
    dual,
    dual_morphism,
    kernel,
    module_annihilator,
    projective,
    projective_map,
    radical_spaces,
)

logger = logging.getLogger(__name__)


# ------------------------------------------------------------------ #
# Couvertures projectives et présentations minimales
# ------------------------------------------------------------------ #


@dataclass(frozen=True, eq=False)
class ProjectiveCover:
    """P = ⊕ P_{vertices[l]} -> M, e_{v_l} ↦ generators[l] (vecteurs locaux)."""

    module: Module
    epi: Morphism
    vertices: Tuple[int, ...]
    generators: Tuple[Vector, ...]


def projective_cover(m: Module) -> ProjectiveCover:
    """Relève une base de top(M) sommet par sommet ; le noyau tombe dans rad P."""
    a = m.algebra
    field = m.field
    current = list(radical_spaces(m))
    vertices: List[int] = []
    generators: List[Vector] = []
    for v in range(a.n_vertices):
        for p in current[v].complement_indices():
            unit = tuple(field.one if i == p else field.zero for i in range(m.dims[v]))
            if current[v].contains(unit):
                continue
            vertices.append(v)
            generators.append(unit)
            for w in range(a.n_vertices):
                images = [m.basis_actions[k].left_apply(unit) for k in a.block(v, w)]
                if images:
                    current[w] = Subspace.span(field, m.dims[w], current[w].basis + tuple(images))
    cover, _, _ = direct_sum([projective(a, v) for v in vertices], algebra=a)
    maps = []
    for w in range(a.n_vertices):
        rows: List[Vector] = []
        for v, gen in zip(vertices, generators):
            for k in a.block(v, w):
                rows.append(m.basis_actions[k].left_apply(gen))
        maps.append(matrix_from_vectors(field, rows, m.dims[w]))
    epi = Morphism(cover, m, tuple(maps))
    logger.debug("Couverture projective de %s : %d facteurs.", m.describe(), len(vertices))
    return ProjectiveCover(cover, epi, tuple(vertices), tuple(generators))


@dataclass(frozen=True, eq=False)
class Presentation:
    """
    P1 --p1--> P0 --p0--> M -> 0 minimale ; `entries[l][k]` est la composante
    de p1(e_{j_l}) dans e_{i_k} A (élément de e_{i_k} A e_{j_l}).
    """

    cover0: ProjectiveCover
    cover1: ProjectiveCover
    kernel: Module
    kernel_inclusion: Morphism
    p1: Morphism
    entries: Tuple[Tuple[Vector, ...], ...]

    @property
    def p0(self) -> Morphism:
        return self.cover0.epi

    @property
    def P0(self) -> Module:
        return self.cover0.module

    @property
    def P1(self) -> Module:
        return self.cover1.module


def minimal_presentation(m: Module) -> Presentation:
    a = m.algebra
    cover0 = projective_cover(m)
    k_module, k_incl = kernel(cover0.epi)
    cover1 = projective_cover(k_module)
    p1 = cover1.epi.then(k_incl)
    entries: List[Tuple[Vector, ...]] = []
    p0_module = cover0.module
    for j, gen in zip(cover1.vertices, cover1.generators):
        image = k_incl.maps[j].left_apply(gen)
        row: List[Vector] = []
        offset = 0
        for i in cover0.vertices:
            block = a.block(i, j)
            coords = image[offset:offset + len(block)]
            element = [a.field.zero] * a.dim
            for idx, c in zip(block, coords):
                element[idx] = c
            row.append(tuple(element))
            offset += len(block)
        if offset != p0_module.dims[j]:
            raise RuntimeError("présentation incohérente avec la couverture")
        entries.append(tuple(row))
    return Presentation(cover0, cover1, k_module, k_incl, p1, tuple(entries))


# ------------------------------------------------------------------ #
# Transposée, translations d'Auslander-Reiten
# ------------------------------------------------------------------ #


def transpose(m: Module) -> Module:
    """Tr M = conoyau de Hom(p1, A) : P0* -> P1*, module sur A^op."""
    pres = minimal_presentation(m)
    op = m.algebra.opposite
    sources = pres.cover0.vertices
    targets = pres.cover1.vertices
    entries_op = [[pres.entries[l][k] for l in range(len(targets))] for k in range(len(sources))]
    if not sources or not targets:
        # M nul ou projectif : Tr M = 0
        return direct_sum([], algebra=op)[0]
    dual_map = projective_map(op, sources, targets, entries_op)
    tr, _ = cokernel(dual_map)
    return tr


def has_projective_summand(m: Module) -> bool:
    """P_i facteur direct de M ssi un composé P_i -> M -> P_i est inversible."""
    a = m.algebra
    for i in range(a.n_vertices):
        if not m.dims[i]:
            continue
        p = projective(a, i)
        into = hom_basis(p, m)
        back = hom_basis(m, p)
        if any(f.then(g).is_invertible() for f in into for g in back):
            return True
    return False


def has_injective_summand(m: Module) -> bool:
    return has_projective_summand(dual(m))


def tau_with_flag(m: Module) -> Tuple[Module, bool]:
    """τM = D Tr M ; le drapeau signale des facteurs projectifs supprimés."""
    dropped = has_projective_summand(m)
    if dropped:
        logger.warning("τ(%s) : facteurs projectifs supprimés.", m.describe())
    return dual(transpose(m)), dropped


def tau(m: Module) -> Module:
    return tau_with_flag(m)[0]


def tau_inverse_with_flag(m: Module) -> Tuple[Module, bool]:
    """τ⁻¹M = Tr D M ; le drapeau signale des facteurs injectifs supprimés."""
    d = dual(m)
    dropped = has_projective_summand(d)
    if dropped:
        logger.warning("τ⁻¹(%s) : facteurs injectifs supprimés.", m.describe())
    return transpose(d), dropped


def tau_inverse(m: Module) -> Module:
    return tau_inverse_with_flag(m)[0]


# ------------------------------------------------------------------ #
# Ext et Hom stables
# ------------------------------------------------------------------ #


def is_projective_module(m: Module) -> bool:
    return m.dim == 0 or projective_cover(m).module.dim == m.dim


def is_injective_module(m: Module) -> bool:
    return is_projective_module(dual(m))


def ext1_dim(x: Module, y: Module) -> int:
    """dim Ext¹(X, Y) = dim Hom(K, Y) - dim Hom(P0, Y) + dim Hom(X, Y)."""
    pres = minimal_presentation(x)
    return len(hom_basis(pres.kernel, y)) - len(hom_basis(pres.P0, y)) + len(hom_basis(x, y))


def stable_hom_dim_mod_proj(x: Module, y: Module) -> int:
    """Hom(X, Y) modulo les morphismes se factorisant par la couverture projective de Y."""
    homs = hom_basis(x, y)
    if not homs:
        return 0
    cover = projective_cover(y)
    factored = [h.then(cover.epi) for h in hom_basis(x, cover.module)]
    return len(homs) - span_dimension(factored, hom_ambient(x, y))


@dataclass(frozen=True, eq=False)
class InjectiveEnvelope:
    module: Module
    mono: Morphism


def injective_envelope(m: Module) -> InjectiveEnvelope:
    """M -> I(M) = D(P(DM)), dual de la couverture projective de DM."""
    cover = projective_cover(dual(m))
    injective_hull = dual(cover.module)
    mono = dual_morphism(cover.epi, source=m, target=injective_hull)
    return InjectiveEnvelope(injective_hull, mono)


def stable_hom_dim_mod_inj(x: Module, y: Module) -> int:
    """Hom(X, Y) modulo les morphismes se factorisant par l'enveloppe injective de X."""
    homs = hom_basis(x, y)
    if not homs:
        return 0
    env = injective_envelope(x)
    factored = [env.mono.then(h) for h in hom_basis(env.module, y)]
    return len(homs) - span_dimension(factored, hom_ambient(x, y))


def pd_le_1(m: Module) -> bool:
    pres = minimal_presentation(m)
    return is_projective_module(pres.kernel)


def id_le_1(m: Module) -> bool:
    return pd_le_1(dual(m))


# ------------------------------------------------------------------ #
# Modules basculants
# ------------------------------------------------------------------ #


@dataclass
class TiltingReport:
    """Verdicts des quatre conditions de basculement et leurs témoins."""

    pd_at_most_one: bool
    ext_vanishes: bool
    summand_count: int
    vertex_count: int
    annihilator_dim: int
    ext_dim: int = 0

    @property
    def summands_match(self) -> bool:
        return self.summand_count == self.vertex_count

    @property
    def faithful(self) -> bool:
        return self.annihilator_dim == 0

    @property
    def is_tilting(self) -> bool:
        return self.pd_at_most_one and self.ext_vanishes and self.summands_match and self.faithful

    def to_dict(self) -> Dict[str, Any]:
        return {
            "pd_at_most_one": self.pd_at_most_one,
            "ext_vanishes": self.ext_vanishes,
            "ext_dim": self.ext_dim,
            "summand_count": self.summand_count,
            "vertex_count": self.vertex_count,
            "faithful": self.faithful,
            "is_tilting": self.is_tilting,
        }


def is_tilting(b: Algebra, m: Module) -> TiltingReport:
    if m.algebra is not b:
        raise ValueError("le module n'est pas défini sur l'algèbre fournie")
    summands = decompose_summands(m)
    pd_ok = all(pd_le_1(s.module) for s in summands)
    ext = ext1_dim(m, m)
    classes = len(group_isoclasses(summands))
    report = TiltingReport(
        pd_at_most_one=pd_ok,
        ext_vanishes=ext == 0,
        summand_count=classes,
        vertex_count=b.n_vertices,
        annihilator_dim=module_annihilator(m).dim,
        ext_dim=ext,
    )
    logger.debug("Test de basculement : %s", report.to_dict())
    return report
