# domain/arquiver/analysis.py

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Tuple

import networkx as nx
from networkx.drawing import nx_pydot

from domain.algebra.algebra import Algebra
from domain.algebra.ideals import quotient, socle
from domain.algebra.quiver import Valuation
from domain.arquiver.knitting import ARQuiver, KnittingLimits, knit
from domain.modules.hom import hom_basis, lift_along, radical_endomorphisms
from domain.modules.module import quotient_module, radical_module, socle_spaces
from domain.modules.decomposition import is_isomorphic

logger = logging.getLogger(__name__)


# ------------------------------------------------------------------ #
# Carquois stable et orbites
# ------------------------------------------------------------------ #


@dataclass(frozen=True, eq=False)
class StableARQuiver:
    """Γ_A privé des projectifs et des flèches qui les touchent ; indices de Γ_A conservés."""

    ambient: ARQuiver
    vertices: Tuple[int, ...]
    arrows: Dict[Tuple[int, int], Valuation]
    tau: Dict[int, int]

    def __len__(self) -> int:
        return len(self.vertices)

    def name(self, i: int) -> str:
        return self.ambient.vertices[i].name

    def tau_inverse_of(self, i: int) -> Optional[int]:
        for source, target in self.tau.items():
            if target == i:
                return source
        return None

    def to_networkx(self) -> nx.DiGraph:
        g = nx.DiGraph()
        g.add_nodes_from(self.vertices)
        for (s, t), val in self.arrows.items():
            g.add_edge(s, t, valuation=val)
        return g

    def to_dict(self) -> Dict[str, Any]:
        return {
            "vertices": list(self.vertices),
            "arrows": [{"source": s, "target": t, "valuation": list(v)} for (s, t), v in sorted(self.arrows.items())],
        }


def stable_quiver(g: ARQuiver) -> StableARQuiver:
    kept = tuple(v.index for v in g.vertices if not v.projective)
    keep = set(kept)
    arrows = {key: val for key, val in g.arrows.items() if key[0] in keep and key[1] in keep}
    tau_map = {z: t for z, t in g.tau.items() if z in keep and t in keep}
    return StableARQuiver(g, kept, arrows, tau_map)


def tau_orbits(s: StableARQuiver) -> List[List[int]]:
    """Partition en τ-orbites ; chaque orbite part de son plus petit indice et suit τ."""
    graph = nx.Graph()
    graph.add_nodes_from(s.vertices)
    graph.add_edges_from(s.tau.items())
    orbits: List[List[int]] = []
    for component in nx.connected_components(graph):
        start = min(component)
        orbit = [start]
        current = s.tau.get(start)
        while current is not None and current != start and current not in orbit:
            orbit.append(current)
            current = s.tau.get(current)
        orbit.extend(sorted(component - set(orbit)))
        orbits.append(orbit)
    orbits.sort(key=lambda o: (-len(o), o[0]))
    return orbits


# ------------------------------------------------------------------ #
# Vérifications
# ------------------------------------------------------------------ #


def canonical_projective_meshes(g: ARQuiver) -> Dict[int, bool]:
    """
    Pour chaque projectif P : unique prédécesseur rad P et unique successeur
    P/soc P (algèbre auto-injective).
    """
    result: Dict[int, bool] = {}
    for p in g.projective_indices:
        module = g.module(p)
        rad, _ = radical_module(module)
        factor, _ = quotient_module(module, socle_spaces(module))
        preds, succs = g.predecessors(p), g.successors(p)
        ok = (
            len(preds) == 1
            and len(succs) == 1
            and is_isomorphic(g.module(preds[0]), rad) is not None
            and is_isomorphic(g.module(succs[0]), factor) is not None
        )
        result[p] = ok
        if not ok:
            logger.warning("Maille projective non canonique en %s.", g.vertices[p].name)
    return result


def mesh_symmetry_violations(g: ARQuiver) -> List[int]:
    """Sommets non projectifs Z dont les prédécesseurs ne sont pas les successeurs de τZ."""
    bad = []
    for z, t in g.tau.items():
        into = sorted((y, g.arrows[(y, z)]) for y in g.predecessors(z))
        out = sorted((y, tuple(reversed(g.arrows[(t, y)]))) for y in g.successors(t))
        if into != out:
            bad.append(z)
    return bad


def verify_almost_split(g: ARQuiver, z: int) -> bool:
    """
    La suite se terminant en Z est non scindée et tout morphisme radical
    X -> Z (X indécomposable du carquois) se factorise par E -> Z.
    """
    seq = g.sequences[z]
    if not seq.is_exact() or seq.is_split():
        return False
    target = seq.right
    for v in g.vertices:
        if v.index == z:
            maps = radical_endomorphisms(target)
        else:
            maps = hom_basis(v.module, target)
        for f in maps:
            if lift_along(f, seq.epi) is None:
                logger.warning("%s -> %s ne se factorise pas par le terme médian.", v.name, g.vertices[z].name)
                return False
    return True


@dataclass
class SocleFactorReport:
    expected_vertices: int
    found_vertices: int
    isomorphic: bool

    @property
    def ok(self) -> bool:
        return self.isomorphic and self.expected_vertices == self.found_vertices

    def to_dict(self) -> Dict[str, Any]:
        return {
            "expected_vertices": self.expected_vertices,
            "found_vertices": self.found_vertices,
            "isomorphic": self.isomorphic,
        }


def socle_factor_check(a: Algebra, g: ARQuiver, limits: Optional[KnittingLimits] = None) -> SocleFactorReport:
    """Γ_{A/soc A} doit être Γ_A privé des projectifs et de leurs flèches."""
    factor = quotient(a, socle(a)).target
    h = knit(factor, limits)
    s = stable_quiver(g)
    matcher = nx.algorithms.isomorphism.DiGraphMatcher(
        h.to_networkx(),
        s.to_networkx(),
        edge_match=lambda x, y: x["valuation"] == y["valuation"],
    )
    report = SocleFactorReport(len(s), len(h), len(h) == len(s) and matcher.is_isomorphic())
    logger.info("Contrôle A/soc A : %s", report.to_dict())
    return report


# ------------------------------------------------------------------ #
# Export DOT
# ------------------------------------------------------------------ #


def to_dot(g: ARQuiver) -> str:
    """Boîtes pour les projectifs, flèches valuées, arêtes τ en pointillés."""
    graph = nx.MultiDiGraph()
    for v in g.vertices:
        attrs = {"label": f'"{v.label()}"'}
        if v.projective:
            attrs["shape"] = "box"
        graph.add_node(f"v{v.index}", **attrs)
    for (s, t), val in sorted(g.arrows.items()):
        attrs = {}
        if val != (1, 1):
            attrs["label"] = f'"({val[0]},{val[1]})"'
        graph.add_edge(f"v{s}", f"v{t}", **attrs)
    for z, t in sorted(g.tau.items()):
        graph.add_edge(f"v{z}", f"v{t}", style="dashed", dir="none", constraint="false")
    return nx_pydot.to_pydot(graph).to_string()
