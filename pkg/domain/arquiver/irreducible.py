# domain/arquiver/irreducible.py

from __future__ import annotations

import logging
from typing import TYPE_CHECKING, Dict, Iterable, List, Optional, Tuple

from domain.modules.hom import hom_ambient, hom_basis, radical_endomorphisms, span_dimension
from domain.modules.module import Morphism

if TYPE_CHECKING:
    from domain.arquiver.knitting import ARQuiver

logger = logging.getLogger(__name__)


class RadicalCache:
    """rad(X_i, X_j) pour les sommets d'un carquois AR, calculé à la demande."""

    def __init__(self, g: "ARQuiver") -> None:
        self.g = g
        self._rad: Dict[Tuple[int, int], List[Morphism]] = {}

    def rad(self, i: int, j: int) -> List[Morphism]:
        key = (i, j)
        if key not in self._rad:
            x, y = self.g.module(i), self.g.module(j)
            self._rad[key] = radical_endomorphisms(x) if i == j else hom_basis(x, y)
        return self._rad[key]


def residue_dims(g: "ARQuiver") -> List[int]:
    """dim End(X)/rad End(X) pour chaque sommet (1 sur un corps de décomposition)."""
    out = []
    for v in g.vertices:
        out.append(len(hom_basis(v.module, v.module)) - len(radical_endomorphisms(v.module)))
    return out


def irreducible_dims(
    g: "ARQuiver",
    pairs: Optional[Iterable[Tuple[int, int]]] = None,
    cache: Optional[RadicalCache] = None,
) -> Dict[Tuple[int, int], int]:
    """
    dim irr(X, Y) = dim rad(X, Y) - dim rad²(X, Y), rad² étant engendré par
    les composés passant par les sommets du carquois. Seules les valeurs non
    nulles sont renvoyées.
    """
    cache = cache or RadicalCache(g)
    n = len(g.vertices)
    if pairs is None:
        pairs = [(i, j) for i in range(n) for j in range(n)]
    result: Dict[Tuple[int, int], int] = {}
    for i, j in pairs:
        rad = cache.rad(i, j)
        if not rad:
            continue
        composites: List[Morphism] = []
        for z in range(n):
            first = cache.rad(i, z)
            if not first:
                continue
            second = cache.rad(z, j)
            composites.extend(f.then(h) for f in first for h in second)
        x, y = g.module(i), g.module(j)
        d = len(rad) - span_dimension(composites, hom_ambient(x, y))
        if d > 0:
            result[(i, j)] = d
    logger.debug("Espaces irréductibles : %d couples non nuls.", len(result))
    return result
