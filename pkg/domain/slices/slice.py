# domain/slices/slice.py

from __future__ import annotations

import logging
import re
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Set, Tuple

import networkx as nx

from domain.algebra.algebra import Algebra
from domain.algebra.quiver import ValuedArrow, ValuedQuiver, valued_quiver
from domain.arquiver.knitting import ARQuiver
from domain.modules.decomposition import DEFAULT_SPLIT_ATTEMPTS, Summand, is_isomorphic
from domain.modules.endomorphisms import EndomorphismAlgebra, end_algebra
from domain.modules.homology import pd_le_1
from domain.modules.module import Module, direct_sum, radical_module, simple

logger = logging.getLogger(__name__)


class SliceHypothesisError(ValueError):
    """Exception fonctionnelle : hypothèse d'une construction de section non satisfaite."""


@dataclass(frozen=True, eq=False)
class Slice:
    """Ensemble de sommets non projectifs de Γ_A (indices triés)."""

    quiver: ARQuiver
    vertices: Tuple[int, ...]

    @classmethod
    def of(cls, g: ARQuiver, vertices: Sequence[int]) -> "Slice":
        return cls(g, tuple(sorted(set(vertices))))

    def __len__(self) -> int:
        return len(self.vertices)

    def __contains__(self, index: int) -> bool:
        return index in self.vertices

    def same_as(self, other: "Slice") -> bool:
        return self.vertices == other.vertices

    @property
    def names(self) -> List[str]:
        return [self.quiver.vertices[v].name for v in self.vertices]

    @property
    def modules(self) -> List[Module]:
        return [self.quiver.module(v) for v in self.vertices]

    @property
    def arrows(self) -> Dict[Tuple[int, int], Tuple[int, int]]:
        keep = set(self.vertices)
        return {k: v for k, v in self.quiver.arrows.items() if k[0] in keep and k[1] in keep}

    def to_networkx(self) -> nx.DiGraph:
        g = nx.DiGraph()
        g.add_nodes_from(self.vertices)
        for (s, t), val in self.arrows.items():
            g.add_edge(s, t, valuation=val)
        return g

    def valued_quiver(self) -> ValuedQuiver:
        """Sous-carquois plein valué, sommets numérotés dans l'ordre de `vertices`."""
        position = {v: k for k, v in enumerate(self.vertices)}
        arrows = tuple(
            ValuedArrow(position[s], position[t], val) for (s, t), val in sorted(self.arrows.items())
        )
        return ValuedQuiver(tuple(self.names), arrows)

    def describe(self) -> str:
        return "{" + ", ".join(self.names) + "}"


def find_vertex(g: ARQuiver, m: Module) -> Optional[int]:
    """Sommet de Γ_A isomorphe au module indécomposable m."""
    for v in g.vertices:
        if v.module.dims == m.dims and is_isomorphic(v.module, m, indecomposable=True) is not None:
            return v.index
    return None


# ------------------------------------------------------------------ #
# Sélecteurs texte
# ------------------------------------------------------------------ #

_SELECTOR_RE = re.compile(r"^(?P<name>[^\[\]]*?)\s*(?:\[(?P<dims>[\d\s,]*)\])?$")


class SelectorError(ValueError):
    """Exception fonctionnelle : sélecteur de module introuvable ou ambigu."""


def select_vertex(g: ARQuiver, selector: str) -> int:
    """
    Résout `nom`, `[d1 d2 ...]` ou `nom [d1 d2 ...]` en un sommet de Γ_A.
    Un vecteur dimension seul doit désigner un unique sommet.
    """
    match = _SELECTOR_RE.match(selector.strip())
    if match is None or not selector.strip():
        raise SelectorError(f"sélecteur illisible : {selector!r}")
    name = match.group("name").strip()
    dims = match.group("dims")
    candidates = list(g.vertices)
    if name:
        candidates = [v for v in candidates if v.name == name]
    if dims is not None:
        wanted = tuple(int(d) for d in re.split(r"[\s,]+", dims.strip()) if d)
        candidates = [v for v in candidates if v.dim_vector == wanted]
    if not candidates:
        raise SelectorError(f"aucun module ne correspond à {selector!r}")
    if len(candidates) > 1:
        raise SelectorError(
            f"sélecteur {selector!r} ambigu : " + ", ".join(v.label() for v in candidates)
        )
    return candidates[0].index


def select_slice(g: ARQuiver, selectors: Sequence[str]) -> Slice:
    """Section donnée par une liste de sélecteurs (voir `select_vertex`)."""
    return Slice.of(g, [select_vertex(g, s) for s in selectors])


def split_selectors(text: str) -> List[str]:
    """Découpe `a, b, [1 0 1]` sur les virgules hors crochets."""
    parts: List[str] = []
    depth = 0
    current = ""
    for ch in text:
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append(current.strip())
            current = ""
            continue
        current += ch
    if current.strip():
        parts.append(current.strip())
    return [p for p in parts if p]


def radical_vertices(g: ARQuiver) -> Set[int]:
    """Sommets isomorphes au radical d'un projectif indécomposable."""
    out: Set[int] = set()
    for p in g.projective_indices:
        rad, _ = radical_module(g.module(p))
        if rad.dim == 0:
            continue
        index = find_vertex(g, rad)
        if index is not None:
            out.add(index)
    return out


# ------------------------------------------------------------------ #
# Axiomes (1)-(3)
# ------------------------------------------------------------------ #


@dataclass
class SliceCheck:
    ok: bool
    violated_condition: Optional[int] = None
    messages: List[str] = field(default_factory=list)


def is_stable_slice(g: ARQuiver, d: Slice) -> SliceCheck:
    """
    (1) Δ connexe, acyclique, sans projectif ; (2) toute flèche V -> U, U ∈ Δ,
    V non projectif : V ∈ Δ ∪ τΔ ; (3) toute flèche U -> V, U ∈ Δ, V non
    projectif : V ∈ Δ ∪ τ⁻¹Δ.
    """
    errors: List[str] = []
    if not d.vertices:
        return SliceCheck(False, 1, ["section vide"])
    if any(v < 0 or v >= len(g) for v in d.vertices):
        return SliceCheck(False, 1, ["sommet hors du carquois"])
    projectives = [g.vertices[v].name for v in d.vertices if g.vertices[v].projective]
    if projectives:
        errors.append("projectifs : " + ", ".join(projectives))
    sub = d.to_networkx()
    if not nx.is_weakly_connected(sub):
        errors.append("non connexe")
    if any(s == t for s, t in sub.edges) or not nx.is_directed_acyclic_graph(sub):
        errors.append("non acyclique")
    if errors:
        return SliceCheck(False, 1, errors)

    members = set(d.vertices)
    tau_image = {g.tau[v] for v in members if v in g.tau}
    tau_inverse_image = {z for z, t in g.tau.items() if t in members}
    for (s, t) in g.arrows:
        if t in members and not g.vertices[s].projective and s not in members and s not in tau_image:
            errors.append(f"{g.vertices[s].name} -> {g.vertices[t].name}")
    if errors:
        return SliceCheck(False, 2, errors)
    for (s, t) in g.arrows:
        if s in members and not g.vertices[t].projective and t not in members and t not in tau_inverse_image:
            errors.append(f"{g.vertices[s].name} -> {g.vertices[t].name}")
    if errors:
        return SliceCheck(False, 3, errors)
    return SliceCheck(True)


# ------------------------------------------------------------------ #
# M(Δ), H(Δ) et classification
# ------------------------------------------------------------------ #


def slice_module(d: Slice) -> Module:
    """M(Δ) : somme directe des modules de Δ."""
    return direct_sum(d.modules)[0]


def slice_end_data(d: Slice, attempts: int = DEFAULT_SPLIT_ATTEMPTS, seed: int = 0) -> EndomorphismAlgebra:
    total, inclusions, projections = direct_sum(d.modules)
    summands = [Summand(m, i, p) for m, i, p in zip(d.modules, inclusions, projections)]
    return end_algebra(total, summands, attempts, seed, vertex_names=d.names)


def slice_end_algebra(d: Slice, attempts: int = DEFAULT_SPLIT_ATTEMPTS, seed: int = 0) -> Algebra:
    """H(Δ) = End_A(M(Δ)) ; le sommet k correspond au k-ième module de Δ."""
    return slice_end_data(d, attempts, seed).algebra


def is_hereditary_algebra(h: Algebra) -> bool:
    """Dimension globale ≤ 1 : tout simple est de dimension projective ≤ 1."""
    return all(pd_le_1(simple(h, i)) for i in range(h.n_vertices))


@dataclass
class SliceReport:
    """Verdicts de classification d'une section ; `hereditary` exige les deux conditions."""

    names: List[str]
    vertices: Tuple[int, ...]
    is_stable_slice: bool
    violated_condition: Optional[int] = None
    right_regular: bool = False
    almost_right_regular: bool = False
    global_dimension_le_1: bool = False
    quiver_matches_delta_op: bool = False
    h_algebra: Optional[Algebra] = None
    messages: List[str] = field(default_factory=list)

    @property
    def hereditary(self) -> bool:
        return self.is_stable_slice and self.global_dimension_le_1 and self.quiver_matches_delta_op

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {
            "vertices": self.names,
            "ids": list(self.vertices),
            "is_stable_slice": self.is_stable_slice,
            "violated_condition": self.violated_condition,
            "right_regular": self.right_regular,
            "almost_right_regular": self.almost_right_regular,
            "hereditary": self.hereditary,
            "global_dimension_le_1": self.global_dimension_le_1,
            "quiver_matches_delta_op": self.quiver_matches_delta_op,
        }
        if self.h_algebra is not None:
            out["h_dim"] = self.h_algebra.dim
        return out


def _matches_opposite(h: Algebra, d: Slice) -> bool:
    """Q_H = Δ^op par la bijection naturelle sommet k <-> k-ième module de Δ."""
    qh = valued_quiver(h)
    expected = d.valued_quiver().opposite()
    return {(a.source, a.target): a.valuation for a in qh.arrows} == {
        (a.source, a.target): a.valuation for a in expected.arrows
    }


def classify_slice(
    g: ARQuiver,
    d: Slice,
    attempts: int = DEFAULT_SPLIT_ATTEMPTS,
    seed: int = 0,
    rad_vertices: Optional[Set[int]] = None,
) -> SliceReport:
    check = is_stable_slice(g, d)
    if not check.ok:
        return SliceReport(d.names, d.vertices, False, check.violated_condition, messages=check.messages)
    rad_vertices = radical_vertices(g) if rad_vertices is None else rad_vertices
    on_slice = [v for v in d.vertices if v in rad_vertices]
    sub = d.to_networkx()
    right_regular = not on_slice
    almost = all(sub.out_degree(v) == 0 for v in on_slice)
    h = slice_end_algebra(d, attempts, seed)
    report = SliceReport(
        names=d.names,
        vertices=d.vertices,
        is_stable_slice=True,
        right_regular=right_regular,
        almost_right_regular=almost,
        global_dimension_le_1=is_hereditary_algebra(h),
        quiver_matches_delta_op=_matches_opposite(h, d),
        h_algebra=h,
    )
    logger.debug("Section %s : %s", d.describe(), report.to_dict())
    return report


def classify_slices(
    g: ARQuiver,
    slices: Sequence[Slice],
    threads: int = 1,
    attempts: int = DEFAULT_SPLIT_ATTEMPTS,
    seed: int = 0,
) -> List[SliceReport]:
    """Classe plusieurs sections, en parallèle si `threads` > 1 ; ordre d'entrée conservé."""
    rad_vertices = radical_vertices(g)
    reports: List[Optional[SliceReport]] = [None] * len(slices)
    workers = min(max(threads, 1), len(slices)) if slices else 1
    if workers <= 1:
        for k, d in enumerate(slices):
            reports[k] = classify_slice(g, d, attempts, seed, rad_vertices)
        return [r for r in reports if r is not None]

    logger.info("Classification de %d section(s) avec %d worker(s).", len(slices), workers)
    with ThreadPoolExecutor(max_workers=workers) as executor:
        future_to_index = {
            executor.submit(classify_slice, g, d, attempts, seed, rad_vertices): k
            for k, d in enumerate(slices)
        }
        for future in as_completed(future_to_index):
            k = future_to_index[future]
            try:
                reports[k] = future.result()
            except Exception:
                logger.exception("Classification échouée pour %s", slices[k].describe())
                raise
    return [r for r in reports if r is not None]
