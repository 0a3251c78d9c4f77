# domain/slices/enumeration.py

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import FrozenSet, List, Optional, Set, Tuple

from domain.algebra.properties import is_nakayama
from domain.arquiver.analysis import stable_quiver
from domain.arquiver.knitting import ARQuiver
from domain.modules.module import projective, quotient_module, radical_module, socle_spaces
from domain.slices.slice import Slice, SliceHypothesisError, find_vertex, is_stable_slice, radical_vertices

logger = logging.getLogger(__name__)

DEFAULT_MAX_SIZE = 12
DEFAULT_SEARCH_LIMIT = 200000


@dataclass
class SliceEnumeration:
    slices: List[Slice] = field(default_factory=list)
    truncated: bool = False
    examined: int = 0


def enumerate_stable_slices(
    g: ARQuiver,
    cap: int = DEFAULT_MAX_SIZE,
    search_limit: int = DEFAULT_SEARCH_LIMIT,
) -> SliceEnumeration:
    """
    Sous-ensembles connexes du carquois stable de taille ≤ cap, agrandis un
    sommet voisin à la fois, dédoublonnés ; ceux qui vérifient (1)-(3) sont
    retenus.
    """
    s = stable_quiver(g)
    neighbours = {v: set() for v in s.vertices}
    for (a, b) in s.arrows:
        if a != b:
            neighbours[a].add(b)
            neighbours[b].add(a)
    result = SliceEnumeration()
    seen: Set[FrozenSet[int]] = set()
    frontier: List[FrozenSet[int]] = []
    for v in s.vertices:
        start = frozenset([v])
        seen.add(start)
        frontier.append(start)
    while frontier:
        next_frontier: List[FrozenSet[int]] = []
        for subset in frontier:
            result.examined += 1
            if result.examined > search_limit:
                result.truncated = True
                logger.warning("Énumération des sections tronquée après %d sous-ensembles.", search_limit)
                frontier = []
                next_frontier = []
                break
            candidate = Slice.of(g, subset)
            if is_stable_slice(g, candidate).ok:
                result.slices.append(candidate)
            if len(subset) >= cap:
                if any(neighbours[v] - subset for v in subset):
                    result.truncated = True
                continue
            for v in subset:
                for w in neighbours[v] - subset:
                    bigger = subset | {w}
                    if bigger not in seen:
                        seen.add(bigger)
                        next_frontier.append(bigger)
        frontier = next_frontier
    if result.truncated:
        logger.warning("Taille maximale %d atteinte : liste des sections possiblement incomplète.", cap)
    result.slices.sort(key=lambda d: (len(d), d.vertices))
    logger.info("%d section(s) stable(s) trouvée(s) (%d sous-ensembles examinés).", len(result.slices), result.examined)
    return result


# ------------------------------------------------------------------ #
# Constructions explicites
# ------------------------------------------------------------------ #


def socle_factor_vertex(g: ARQuiver, p: int) -> int:
    module = g.module(p)
    factor, _ = quotient_module(module, socle_spaces(module))
    index = find_vertex(g, factor)
    if index is None:
        raise SliceHypothesisError(f"{g.vertices[p].name}/soc absent du carquois")
    return index


def _sectional_targets(g: ARQuiver, start: int) -> Set[int]:
    """Sommets atteints depuis `start` par un chemin sectionnel non trivial de Γ^s."""
    s = stable_quiver(g)
    successors = {v: [t for (a, t) in s.arrows if a == v] for v in s.vertices}
    reached: Set[int] = set()
    visited: Set[Tuple[Optional[int], int]] = set()
    stack: List[Tuple[Optional[int], int]] = [(None, start)]
    while stack:
        previous, current = stack.pop()
        for nxt in successors.get(current, []):
            # x_{i-1} -> x_i -> x_{i+1} sectionnel ssi x_{i-1} ≠ τ x_{i+1}
            if previous is not None and s.tau.get(nxt) == previous:
                continue
            state = (current, nxt)
            if state in visited:
                continue
            visited.add(state)
            reached.add(nxt)
            stack.append(state)
    return reached


def delta_p_slice(g: ARQuiver, p: int) -> Slice:
    """Δ_P = τ⁻¹(P/soc P) et les X atteints par un chemin sectionnel depuis P/soc P."""
    if not g.vertices[p].projective:
        raise SliceHypothesisError(f"{g.vertices[p].name} n'est pas projectif")
    q = socle_factor_vertex(g, p)
    if q in radical_vertices(g):
        raise SliceHypothesisError(
            f"{g.vertices[q].name} est le radical d'un projectif : construction Δ_P non applicable"
        )
    shifted = g.tau_inverse_of(q)
    if shifted is None:
        raise SliceHypothesisError(f"τ⁻¹({g.vertices[q].name}) non défini")
    members = _sectional_targets(g, q) | {shifted}
    d = Slice.of(g, members)
    logger.debug("Δ_%s = %s", g.vertices[p].name, d.describe())
    return d


def tau_delta_p(g: ARQuiver, p: int) -> Tuple[Slice, Slice]:
    """(Δ_P, τΔ_P)."""
    d = delta_p_slice(g, p)
    image = []
    for v in d.vertices:
        if v not in g.tau:
            raise SliceHypothesisError(f"τ({g.vertices[v].name}) non défini")
        image.append(g.tau[v])
    return d, Slice.of(g, image)


def nakayama_slice(g: ARQuiver, p_vertex: int) -> Slice:
    """
    Chemin sectionnel soc P = X_1 -> ... -> X_n = rad P d'une algèbre de
    Nakayama : X_{k-1} = rad X_k.
    """
    a = g.algebra
    if not is_nakayama(a):
        raise SliceHypothesisError("l'algèbre n'est pas de Nakayama")
    current, _ = radical_module(projective(a, p_vertex))
    if current.dim == 0:
        raise SliceHypothesisError(f"rad P{a.vertex_names[p_vertex]} est nul")
    members: List[int] = []
    while current.dim:
        index = find_vertex(g, current)
        if index is None:
            raise SliceHypothesisError("sous-module unisériel absent du carquois")
        members.append(index)
        current, _ = radical_module(current)
    d = Slice.of(g, members)
    logger.debug("Section de Nakayama en P%s : %s", a.vertex_names[p_vertex], d.describe())
    return d
