# domain/algebra/quiver.py

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import networkx as nx

from domain.algebra.algebra import Algebra

logger = logging.getLogger(__name__)

Valuation = Tuple[int, int]


@dataclass(frozen=True)
class ValuedArrow:
    source: int
    target: int
    valuation: Valuation = (1, 1)

    def reversed(self) -> "ValuedArrow":
        return ValuedArrow(self.target, self.source, (self.valuation[1], self.valuation[0]))


@dataclass(frozen=True)
class ValuedQuiver:
    """
    Carquois valué : au plus une flèche par couple (source, but),
    la multiplicité est portée par la valuation (a, a').
    """

    vertices: Tuple[str, ...]
    arrows: Tuple[ValuedArrow, ...] = field(default_factory=tuple)

    def validate(self) -> None:
        errors: List[str] = []
        seen = set()
        for arrow in self.arrows:
            key = (arrow.source, arrow.target)
            if key in seen:
                errors.append(f"flèche dupliquée {key}")
            seen.add(key)
            if min(arrow.valuation) <= 0:
                errors.append(f"valuation non positive sur {key}")
            if not (0 <= arrow.source < len(self.vertices) and 0 <= arrow.target < len(self.vertices)):
                errors.append(f"extrémité hors carquois sur {key}")
        if errors:
            raise ValueError(" / ".join(errors))

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    def valuation(self, source: int, target: int) -> Optional[Valuation]:
        for arrow in self.arrows:
            if arrow.source == source and arrow.target == target:
                return arrow.valuation
        return None

    def opposite(self) -> "ValuedQuiver":
        return ValuedQuiver(self.vertices, tuple(sorted((a.reversed() for a in self.arrows), key=_arrow_key)))

    def relabel(self, permutation: Sequence[int]) -> "ValuedQuiver":
        """Renumérote les sommets : l'ancien sommet i devient permutation[i]."""
        names = [""] * len(self.vertices)
        for old, new in enumerate(permutation):
            names[new] = self.vertices[old]
        arrows = (ValuedArrow(permutation[a.source], permutation[a.target], a.valuation) for a in self.arrows)
        return ValuedQuiver(tuple(names), tuple(sorted(arrows, key=_arrow_key)))

    def same_shape(self, other: "ValuedQuiver") -> bool:
        """Égalité des flèches valuées à numérotation fixe (noms ignorés)."""
        return (
            self.n_vertices == other.n_vertices
            and sorted(self.arrows, key=_arrow_key) == sorted(other.arrows, key=_arrow_key)
        )

    def to_networkx(self) -> nx.DiGraph:
        g = nx.DiGraph()
        for k, name in enumerate(self.vertices):
            g.add_node(k, name=name)
        for arrow in self.arrows:
            g.add_edge(arrow.source, arrow.target, valuation=arrow.valuation)
        return g

    def to_dict(self) -> Dict[str, Any]:
        return {
            "vertices": list(self.vertices),
            "arrows": [
                {
                    "source": self.vertices[a.source],
                    "target": self.vertices[a.target],
                    "valuation": list(a.valuation),
                }
                for a in self.arrows
            ],
        }


def _arrow_key(arrow: ValuedArrow) -> Tuple[int, int]:
    return arrow.source, arrow.target


def arrow_space_dims(a: Algebra) -> Dict[Tuple[int, int], int]:
    """dim_K e_i (rad/rad²) e_j pour chaque couple de sommets."""
    rad, rad2 = a.radical, a.radical_square
    dims: Dict[Tuple[int, int], int] = {}
    for i in range(a.n_vertices):
        for j in range(a.n_vertices):
            if not a.block(i, j):
                continue
            d = a.block_subspace(rad, i, j).dim - a.block_subspace(rad2, i, j).dim
            if d:
                dims[(i, j)] = d
    return dims


def valued_quiver(a: Algebra) -> ValuedQuiver:
    """
    Flèche i -> j dès que e_i (rad/rad²) e_j ≠ 0, valuée par la dimension de ce
    bimodule sur les corps résiduels de j puis de i.
    """
    residues = [a.residue_dim(v) for v in range(a.n_vertices)]
    arrows = []
    for (i, j), d in sorted(arrow_space_dims(a).items()):
        arrows.append(ValuedArrow(i, j, (d // residues[j], d // residues[i])))
    quiver = ValuedQuiver(tuple(a.vertex_names), tuple(arrows))
    logger.debug("Carquois valué : %d sommets, %d flèches.", quiver.n_vertices, len(arrows))
    return quiver


def is_acyclic(q: ValuedQuiver) -> bool:
    if any(a.source == a.target for a in q.arrows):
        return False
    return nx.is_directed_acyclic_graph(q.to_networkx())


def is_connected(q: ValuedQuiver) -> bool:
    if not q.vertices:
        return False
    return nx.is_weakly_connected(q.to_networkx())


def quiver_isomorphisms(q1: ValuedQuiver, q2: ValuedQuiver) -> List[Dict[int, int]]:
    """Bijections de sommets respectant les flèches valuées."""
    if q1.n_vertices != q2.n_vertices or len(q1.arrows) != len(q2.arrows):
        return []
    matcher = nx.algorithms.isomorphism.DiGraphMatcher(
        q1.to_networkx(),
        q2.to_networkx(),
        edge_match=lambda x, y: x["valuation"] == y["valuation"],
    )
    return [dict(m) for m in matcher.isomorphisms_iter()]
