# domain/constructions/orbit.py

from __future__ import annotations

import logging
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple

from domain.algebra.algebra import Algebra, build_algebra
from domain.algebra.properties import verify_primitive_idempotents
from domain.constructions.automorphism import AlgebraAutomorphism
from domain.linalg.matrix import Vector

logger = logging.getLogger(__name__)


# Un lien (m, m', tordu) : les éléments de D(B) vont de la tranche m à la tranche m',
# l'action à droite passe par σ quand le lien est tordu.
Link = Tuple[int, int, bool]


def slab_algebra(
    b: Algebra,
    slabs: Sequence[int],
    links: Sequence[Link],
    sigma: Optional[AlgebraAutomorphism] = None,
    provenance: str = "",
) -> Algebra:
    """
    Algèbre de catégorie sur des copies de B (tranches) reliées par des copies
    de D(B).

    Base : b_k dans chaque tranche, puis b_k* pour chaque lien. Si b_k est de
    type (a, c), b_k* est de type (c, a) dans D(B) et relie (m, c) à (m', a)
    (à (m', π⁻¹a) sur un lien tordu). Actions :
    b·b_k* = Σ_l coef_k(b_l·b) b_l* et b_k*·y = Σ_l coef_k(y·b_l) b_l*.
    """
    field = b.field
    n = b.dim
    nv = b.n_vertices
    twist = sigma if sigma is not None else AlgebraAutomorphism.identity(b)
    if twist.algebra is not b:
        raise ValueError("l'automorphisme n'est pas défini sur B")
    permutation = twist.vertex_permutation
    inverse_permutation = [0] * nv
    for v, w in enumerate(permutation):
        inverse_permutation[w] = v

    slab_position = {m: p for p, m in enumerate(slabs)}
    slab_count = len(slabs)
    total = n * (slab_count + len(links))
    zero = field.zero
    single = slab_count == 1 and len(links) <= 1

    def vertex(m: int, v: int) -> int:
        return slab_position[m] * nv + v

    def vertex_name(m: int, v: int) -> str:
        return b.vertex_names[v] if single else f"{b.vertex_names[v]}_{m}"

    outgoing = {}
    for li, (m, m2, _) in enumerate(links):
        if m in outgoing:
            raise ValueError(f"tranche {m} reliée deux fois")
        outgoing[m] = li

    peirce: List[Tuple[int, int]] = []
    labels: List[str] = []
    for m in slabs:
        for k, (s, t) in enumerate(b.peirce):
            peirce.append((vertex(m, s), vertex(m, t)))
            labels.append(b.labels[k] if single else f"{b.labels[k]}@{m}")
    for (m, m2, twisted) in links:
        for k, (a_, c) in enumerate(b.peirce):
            end = inverse_permutation[a_] if twisted else a_
            peirce.append((vertex(m, c), vertex(m2, end)))
            labels.append(f"D({b.labels[k]})" if single else f"D({b.labels[k]})@{m}")

    @lru_cache(maxsize=None)
    def twisted_row(j: int) -> Tuple[Vector, ...]:
        y = twist.image(j)
        return tuple(b.mul(y, b.basis_vector(l)) for l in range(n))

    def locate(index: int) -> Tuple[bool, int, int]:
        """(connecteur ?, position de tranche ou de lien, indice dans B)."""
        block, k = divmod(index, n)
        if block < slab_count:
            return False, block, k
        return True, block - slab_count, k

    def product(i: int, j: int) -> Vector:
        out = [zero] * total
        left_link, p, ki = locate(i)
        right_link, q, kj = locate(j)
        if left_link and right_link:
            return tuple(out)
        if not left_link and not right_link:
            if p != q:
                return tuple(out)
            for k, c in enumerate(b.basis_product(ki, kj)):
                if c:
                    out[p * n + k] = c
            return tuple(out)
        base = (slab_count + (q if right_link else p)) * n
        if right_link:
            # b_ki · b_kj*
            m, _, _ = links[q]
            if slab_position[m] != p:
                return tuple(out)
            for l in range(n):
                c = b.basis_product(l, ki)[kj]
                if c:
                    out[base + l] = c
            return tuple(out)
        # b_ki* · b_kj
        _, m2, twisted = links[p]
        if slab_position[m2] != q:
            return tuple(out)
        for l in range(n):
            c = twisted_row(kj)[l][ki] if twisted else b.basis_product(kj, l)[ki]
            if c:
                out[base + l] = c
        return tuple(out)

    radical_hint: List[Vector] = []
    for p in range(slab_count):
        for v in b.radical.basis:
            row = [zero] * total
            row[p * n:(p + 1) * n] = list(v)
            radical_hint.append(tuple(row))
    for index in range(slab_count * n, total):
        row = [zero] * total
        row[index] = field.one
        radical_hint.append(tuple(row))

    idempotents = [p * n + b.idempotents[v] for p in range(slab_count) for v in range(nv)]
    names = [vertex_name(m, v) for m in slabs for v in range(nv)]
    result = build_algebra(
        field,
        labels,
        peirce,
        product,
        idempotents,
        names,
        radical_hint=tuple(radical_hint),
        provenance=provenance or f"{slab_count} tranche(s) de B, {len(links)} lien(s)",
    )
    logger.debug("Algèbre de tranches : dim %d, %d sommets.", result.dim, result.n_vertices)
    return result


# ------------------------------------------------------------------ #
# Algèbres d'orbites B̂/(σν^r)
# ------------------------------------------------------------------ #


def orbit_algebra(b: Algebra, r: int = 1, sigma: Optional[AlgebraAutomorphism] = None) -> Algebra:
    """
    Modèle fini de B̂/(σν^r) : r tranches de B, D(B) de la tranche m vers
    m+1, le lien r-1 -> 0 portant la torsion σ.
    """
    if r < 1:
        raise ValueError(f"r doit être ≥ 1 (reçu {r})")
    slabs = list(range(r))
    links = [(m, (m + 1) % r, m == r - 1 and sigma is not None) for m in slabs]
    if r == 1:
        kind = "T(B)" if sigma is None else f"T_{sigma.name}(B)"
    else:
        kind = f"T(B)^({r})" if sigma is None else f"B̂/({sigma.name}ν^{r})"
    result = slab_algebra(b, slabs, links, sigma, provenance=kind)
    verify_primitive_idempotents(result)
    logger.info("%s construite : dim %d = 2·%d·%d.", kind, result.dim, r, b.dim)
    return result


def trivial_extension(b: Algebra) -> Algebra:
    """T(B) = B ⋉ D(B)."""
    return orbit_algebra(b, 1)


def r_fold_trivial_extension(b: Algebra, r: int) -> Algebra:
    return orbit_algebra(b, r)


def twisted_trivial_extension(b: Algebra, sigma: AlgebraAutomorphism) -> Algebra:
    """B ⊕ D(B) avec (b, f)(c, g) = (bc, b·g + f·σ(c))."""
    if sigma.algebra is not b:
        raise ValueError("l'automorphisme n'est pas défini sur B")
    return orbit_algebra(b, 1, sigma)
