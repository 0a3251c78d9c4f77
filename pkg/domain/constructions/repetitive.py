# domain/constructions/repetitive.py

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Dict, List, Tuple

from domain.algebra.algebra import Algebra
from domain.constructions.orbit import slab_algebra

logger = logging.getLogger(__name__)

# objet e_{m,i} de la catégorie répétitive
Obj = Tuple[int, int]


@dataclass(frozen=True, eq=False)
class RepetitiveTruncation:
    """
    Fenêtre [m_lo, m_hi] de la catégorie répétitive de B :
    hom(e_{m,i}, e_{r,j}) = e_j B e_i si r = m, D(e_i B e_j) si r = m+1, 0 sinon.
    """

    base: Algebra
    m_lo: int
    m_hi: int

    def __post_init__(self) -> None:
        if self.m_lo > self.m_hi:
            raise ValueError(f"fenêtre vide [{self.m_lo}, {self.m_hi}]")

    @property
    def width(self) -> int:
        return self.m_hi - self.m_lo + 1

    @property
    def objects(self) -> List[Obj]:
        return [(m, i) for m in range(self.m_lo, self.m_hi + 1) for i in range(self.base.n_vertices)]

    def hom_dim(self, x: Obj, y: Obj) -> int:
        (m, i), (r, j) = x, y
        if r == m:
            return len(self.base.block(j, i))
        if r == m + 1:
            return len(self.base.block(i, j))
        return 0

    def hom_table(self) -> Dict[Tuple[Obj, Obj], int]:
        objects = self.objects
        return {(x, y): d for x in objects for y in objects if (d := self.hom_dim(x, y))}

    def nu(self, x: Obj) -> Obj:
        """ν(e_{m,i}) = e_{m+1,i}."""
        return (x[0] + 1, x[1])

    def shifted(self, steps: int = 1) -> "RepetitiveTruncation":
        return RepetitiveTruncation(self.base, self.m_lo + steps, self.m_hi + steps)

    @cached_property
    def algebra(self) -> Algebra:
        """Algèbre de la catégorie tronquée (somme des espaces de morphismes)."""
        slabs = list(range(self.m_lo, self.m_hi + 1))
        links = [(m, m + 1, False) for m in slabs[:-1]]
        result = slab_algebra(
            self.base, slabs, links, provenance=f"B̂ tronquée sur [{self.m_lo}, {self.m_hi}]",
        )
        logger.debug("Troncature répétitive [%d, %d] : dim %d.", self.m_lo, self.m_hi, result.dim)
        return result

    def to_dict(self) -> Dict[str, Any]:
        return {"window": [self.m_lo, self.m_hi], "objects": len(self.objects), "dim": sum(self.hom_table().values())}


def repetitive_truncation(b: Algebra, m_lo: int, m_hi: int) -> RepetitiveTruncation:
    return RepetitiveTruncation(b, m_lo, m_hi)


def period_dimension(b: Algebra, r: int) -> int:
    """
    Somme des hom(e_{m,i}, e_{m',j}) issus des objets d'une période de ν^r
    (m = 0..r-1) : la dimension attendue de B̂/(ν^r).
    """
    window = RepetitiveTruncation(b, 0, r)
    return sum(d for ((m, _), _), d in window.hom_table().items() if m < r)
