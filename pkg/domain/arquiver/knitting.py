# domain/arquiver/knitting.py

from __future__ import annotations

import logging
import random
from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Any, Deque, Dict, List, Optional, Set, Tuple

import networkx as nx
from tqdm import tqdm

from domain.algebra.algebra import Algebra
from domain.algebra.quiver import Valuation
from domain.arquiver.irreducible import irreducible_dims, residue_dims
from domain.arquiver.registry import (
    NAME_INJECTIVE,
    NAME_INJECTIVE_FACTOR,
    NAME_PROJECTIVE,
    NAME_RADICAL,
    NAME_SIMPLE,
    NAME_SOCLE_FACTOR,
    ModuleRegistry,
    RegistryLimitError,
)
from domain.arquiver.sequences import AlmostSplitSequence, almost_split_sequence
from domain.modules.decomposition import DEFAULT_SPLIT_ATTEMPTS, decompose_summands
from domain.modules.homology import tau_inverse
from domain.modules.module import (
    Module,
    injective,
    projective,
    quotient_module,
    radical_module,
    simple,
    socle_spaces,
    socle_vector,
    top_vector,
)

logger = logging.getLogger(__name__)

DEFAULT_MAX_MODULES = 512
DEFAULT_MAX_DIM = 256


class KnittingLimitError(RuntimeError):
    """
    Exception technique : limites dépassées, algèbre probablement de type de
    représentation infini. Porte le carquois partiel.
    """

    def __init__(self, message: str, partial: Optional["ARQuiver"] = None) -> None:
        super().__init__(message)
        self.partial = partial


@dataclass(frozen=True)
class KnittingLimits:
    max_modules: int = DEFAULT_MAX_MODULES
    max_dim: int = DEFAULT_MAX_DIM


@dataclass(frozen=True, eq=False)
class ARVertex:
    index: int
    module: Module
    name: str
    projective: bool
    injective: bool

    @property
    def dim_vector(self) -> Tuple[int, ...]:
        return self.module.dim_vector

    def label(self) -> str:
        dims = "".join(str(d) for d in self.dim_vector)
        return f"{self.name} [{dims}]"


@dataclass(frozen=True, eq=False)
class ARQuiver:
    """
    Carquois d'Auslander-Reiten : une flèche valuée par couple (source, but),
    τ défini exactement sur les sommets non projectifs.
    """

    algebra: Algebra
    vertices: Tuple[ARVertex, ...]
    arrows: Dict[Tuple[int, int], Valuation]
    tau: Dict[int, int]
    meshes: Dict[int, Tuple[int, ...]] = field(default_factory=dict)
    sequences: Dict[int, AlmostSplitSequence] = field(default_factory=dict)
    complete: bool = True

    def __len__(self) -> int:
        return len(self.vertices)

    @property
    def projective_indices(self) -> List[int]:
        return [v.index for v in self.vertices if v.projective]

    @property
    def non_projective_indices(self) -> List[int]:
        return [v.index for v in self.vertices if not v.projective]

    def predecessors(self, j: int) -> List[int]:
        return sorted(i for (i, t) in self.arrows if t == j)

    def successors(self, i: int) -> List[int]:
        return sorted(t for (s, t) in self.arrows if s == i)

    def tau_inverse_of(self, i: int) -> Optional[int]:
        for source, target in self.tau.items():
            if target == i:
                return source
        return None

    def module(self, i: int) -> Module:
        return self.vertices[i].module

    def index_of_name(self, name: str) -> Optional[int]:
        for v in self.vertices:
            if v.name == name:
                return v.index
        return None

    def to_networkx(self) -> nx.DiGraph:
        g = nx.DiGraph()
        for v in self.vertices:
            g.add_node(v.index, name=v.name, projective=v.projective, dims=v.dim_vector)
        for (s, t), val in self.arrows.items():
            g.add_edge(s, t, valuation=val)
        return g

    def to_dict(self) -> Dict[str, Any]:
        return {
            "vertices": [
                {
                    "id": v.index,
                    "name": v.name,
                    "dim_vector": list(v.dim_vector),
                    "projective": v.projective,
                    "injective": v.injective,
                }
                for v in self.vertices
            ],
            "arrows": [
                {"source": s, "target": t, "valuation": list(val)}
                for (s, t), val in sorted(self.arrows.items())
            ],
            "tau": [{"source": s, "target": t} for s, t in sorted(self.tau.items())],
            "complete": self.complete,
        }


# ------------------------------------------------------------------ #
# Germes du tricotage
# ------------------------------------------------------------------ #


def _socle_name(a: Algebra, prefix: str, m: Module) -> str:
    soc = socle_vector(m)
    if sum(soc) == 1:
        return f"{prefix}/S{a.vertex_names[soc.index(1)]}"
    return f"{prefix}/soc"


def _register_seeds(a: Algebra, state: _KnitState, attempts: int, seed: int, rng: Optional[random.Random]) -> List[int]:
    """
    Germes : P_i, S_i, I_i et les facteurs de rad P_i, P_i/soc P_i et
    I_i/soc I_i. Mémorise les prédécesseurs des projectifs et les successeurs
    des injectifs.
    """
    registry = state.registry
    seeds: List[Tuple[Module, str, int, str, int]] = []
    for i in range(a.n_vertices):
        name = a.vertex_names[i]
        p = projective(a, i)
        inj = injective(a, i)
        rad, _ = radical_module(p)
        p_factor, _ = quotient_module(p, socle_spaces(p))
        i_factor, _ = quotient_module(inj, socle_spaces(inj))
        seeds.append((p, f"P{name}", NAME_PROJECTIVE, "", i))
        seeds.append((simple(a, i), f"S{name}", NAME_SIMPLE, "", i))
        seeds.append((inj, f"I{name}", NAME_INJECTIVE, "", i))
        for piece_of, whole, label, priority in (
            ("rad", rad, f"rad P{name}", NAME_RADICAL),
            ("", p_factor, _socle_name(a, f"P{name}", p), NAME_SOCLE_FACTOR),
            ("soc", i_factor, _socle_name(a, f"I{name}", inj), NAME_INJECTIVE_FACTOR),
        ):
            pieces = decompose_summands(whole, attempts, seed)
            for s in pieces:
                seeds.append((s.module, label if len(pieces) == 1 else "", priority, piece_of, i))
    if rng is not None:
        rng.shuffle(seeds)
    indices: List[int] = []
    radical_pieces: Dict[int, List[int]] = {}
    socle_pieces: Dict[int, List[int]] = {}
    for m, label, priority, piece_of, i in seeds:
        if not m.dim:
            continue
        index, _ = registry.register(m, label, priority)
        indices.append(index)
        if piece_of == "rad":
            radical_pieces.setdefault(i, []).append(index)
        elif piece_of == "soc":
            socle_pieces.setdefault(i, []).append(index)
    for i in range(a.n_vertices):
        state.radical_pieces[registry.find(projective(a, i))] = tuple(sorted(radical_pieces.get(i, [])))
        state.socle_pieces[registry.find(injective(a, i))] = tuple(sorted(socle_pieces.get(i, [])))
    return indices


# ------------------------------------------------------------------ #
# Tricotage
# ------------------------------------------------------------------ #


@dataclass
class _KnitState:
    registry: ModuleRegistry
    tau: Dict[int, int] = field(default_factory=dict)
    meshes: Dict[int, Tuple[int, ...]] = field(default_factory=dict)
    sequences: Dict[int, AlmostSplitSequence] = field(default_factory=dict)
    radical_pieces: Dict[int, Tuple[int, ...]] = field(default_factory=dict)
    socle_pieces: Dict[int, Tuple[int, ...]] = field(default_factory=dict)


def _ordering(state: _KnitState) -> List[int]:
    entries = state.registry.entries
    return sorted(
        range(len(entries)),
        key=lambda k: (
            sum(entries[k].module.dims),
            entries[k].module.dims,
            top_vector(entries[k].module),
            socle_vector(entries[k].module),
            entries[k].priority,
            entries[k].name,
            k,
        ),
    )


def _assemble(a: Algebra, state: _KnitState, complete: bool) -> ARQuiver:
    """Fige l'état : ordre déterministe, noms M<k>, flèches tirées des mailles."""
    order = _ordering(state)
    new_index = {old: new for new, old in enumerate(order)}
    entries = state.registry.entries
    vertices: List[ARVertex] = []
    anonymous = 0
    for new, old in enumerate(order):
        e = entries[old]
        name = e.name
        if not name:
            anonymous += 1
            name = f"M{anonymous}"
        vertices.append(ARVertex(new, e.module, name, e.projective, e.injective))

    multiplicities: Dict[Tuple[int, int], int] = {}
    for z, middle in state.meshes.items():
        counts = Counter(middle)
        for y, mult in counts.items():
            multiplicities[(new_index[y], new_index[z])] = mult
            multiplicities.setdefault((new_index[state.tau[z]], new_index[y]), mult)
    for p, pieces in state.radical_pieces.items():
        for y, mult in Counter(pieces).items():
            multiplicities.setdefault((new_index[y], new_index[p]), mult)
    for q, pieces in state.socle_pieces.items():
        for y, mult in Counter(pieces).items():
            multiplicities.setdefault((new_index[q], new_index[y]), mult)

    arrows = {key: (mult, mult) for key, mult in multiplicities.items()}
    tau_map = {new_index[z]: new_index[t] for z, t in state.tau.items()}
    meshes = {new_index[z]: tuple(sorted(new_index[y] for y in m)) for z, m in state.meshes.items()}
    sequences = {new_index[z]: s for z, s in state.sequences.items()}
    return ARQuiver(a, tuple(vertices), arrows, tau_map, meshes, sequences, complete)


def knit(
    a: Algebra,
    limits: Optional[KnittingLimits] = None,
    progress: bool = False,
    seed: int = 0,
    attempts: int = DEFAULT_SPLIT_ATTEMPTS,
    order_seed: Optional[int] = None,
    valuations: bool = True,
) -> ARQuiver:
    """
    Tricote Γ_A depuis les germes : suites presque scindées, τ⁻¹, facteurs des
    termes médians. `order_seed` mélange la file de travail.
    """
    limits = limits or KnittingLimits()
    state = _KnitState(ModuleRegistry(limits.max_modules, limits.max_dim))
    registry = state.registry
    queue: Deque[int] = deque()
    processed: Set[int] = set()
    rng = random.Random(order_seed) if order_seed is not None else None

    def push(index: int) -> None:
        if index not in processed:
            queue.append(index)

    try:
        for index in _register_seeds(a, state, attempts, seed, rng):
            push(index)

        with tqdm(total=len(registry), desc="tricotage", disable=not progress, dynamic_ncols=True, ascii=True) as bar:
            while queue:
                if rng is not None and len(queue) > 1:
                    queue.rotate(rng.randrange(len(queue)))
                index = queue.popleft()
                if index in processed:
                    continue
                processed.add(index)
                entry = registry.entry(index)
                x = entry.module
                if not entry.projective:
                    seq = almost_split_sequence(x)
                    t_index, _ = registry.register(seq.left)
                    state.tau[index] = t_index
                    state.sequences[index] = seq
                    middle = tuple(
                        registry.register(s.module)[0] for s in decompose_summands(seq.middle, attempts, seed)
                    )
                    state.meshes[index] = middle
                    push(t_index)
                    for y in middle:
                        push(y)
                if not entry.injective:
                    push(registry.register(tau_inverse(x))[0])
                bar.total = len(registry)
                bar.update(1)
    except RegistryLimitError as exc:
        logger.error("Tricotage interrompu : %s", exc)
        partial = _assemble(a, _complete_partial(state), complete=False)
        raise KnittingLimitError(f"type de représentation infini suspecté : {exc}", partial) from exc

    quiver = _assemble(a, state, complete=True)
    if valuations:
        quiver = _with_valuations(quiver)
    logger.info(
        "Γ_A tricoté : %d indécomposables dont %d projectifs, %d flèches.",
        len(quiver),
        len(quiver.projective_indices),
        len(quiver.arrows),
    )
    return quiver


def _complete_partial(state: _KnitState) -> _KnitState:
    """Retire les mailles ou germes qui pointent hors du registre figé."""
    size = len(state.registry)
    state.tau = {z: t for z, t in state.tau.items() if z < size and t < size}
    state.meshes = {z: m for z, m in state.meshes.items() if z in state.tau and all(y < size for y in m)}
    state.radical_pieces = {p: m for p, m in state.radical_pieces.items() if p is not None}
    state.socle_pieces = {q: m for q, m in state.socle_pieces.items() if q is not None}
    return state


def _with_valuations(g: ARQuiver) -> ARQuiver:
    """Remplace les multiplicités des mailles par les valuations tirées de irr(X, Y)."""
    irr = irreducible_dims(g, pairs=list(g.arrows))
    residues = residue_dims(g)
    arrows: Dict[Tuple[int, int], Valuation] = {}
    for (s, t), (mult, _) in g.arrows.items():
        d = irr.get((s, t), 0)
        if d == 0:
            logger.warning("Flèche %s -> %s sans morphisme irréductible, conservée avec sa multiplicité.",
                           g.vertices[s].name, g.vertices[t].name)
            arrows[(s, t)] = (mult, mult)
            continue
        val = (d // residues[t], d // residues[s])
        if val[0] != mult:
            logger.warning("Valuation %s incohérente avec la maille (%d) sur %s -> %s.",
                           val, mult, g.vertices[s].name, g.vertices[t].name)
        arrows[(s, t)] = val
    return ARQuiver(g.algebra, g.vertices, arrows, g.tau, g.meshes, g.sequences, g.complete)
