# domain/modules/module.py

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, List, Optional, Sequence, Tuple

from domain.algebra.algebra import Algebra, ConsistencyError
from domain.linalg.field import Scalar
from domain.linalg.matrix import DimensionMismatchError, Matrix, Vector, matrix_from_vectors
from domain.linalg.subspace import EchelonBasis, Subspace

logger = logging.getLogger(__name__)


class NotStableError(ValueError):
    """
    Exception fonctionnelle : la famille de sous-espaces fournie n'est pas
    stable par l'action des flèches.
    """


class ModuleRelationError(ValueError):
    """
    Exception fonctionnelle : les matrices d'action ne satisfont pas les
    relations de l'algèbre.
    """


@dataclass(frozen=True, eq=False)
class Module:
    """
    A-module à droite de dimension finie vu comme représentation du carquois.

    `dims[v]` = dim M·e_v ; `blocks[g]` est la matrice (dims[s] x dims[t]) par
    laquelle agit le générateur g : s -> t sur les vecteurs lignes.
    """

    algebra: Algebra
    dims: Tuple[int, ...]
    blocks: Tuple[Matrix, ...]
    name: str = ""

    def __post_init__(self) -> None:
        self.algebra.require_split_residues()
        gens = self.algebra.generators
        errors: List[str] = []
        if len(self.dims) != self.algebra.n_vertices:
            errors.append(f"{len(self.dims)} dimensions pour {self.algebra.n_vertices} sommets")
        elif len(self.blocks) != len(gens):
            errors.append(f"{len(self.blocks)} matrices pour {len(gens)} générateurs")
        else:
            for g, block in zip(gens, self.blocks):
                if block.shape != (self.dims[g.source], self.dims[g.target]):
                    errors.append(f"générateur {g.label}: forme {block.shape}")
        if errors:
            raise DimensionMismatchError(" / ".join(errors))

    # ------------------------------------------------------------------ #
    # Dimensions
    # ------------------------------------------------------------------ #

    @property
    def field(self):
        return self.algebra.field

    @property
    def dim(self) -> int:
        return sum(self.dims)

    @property
    def dim_vector(self) -> Tuple[int, ...]:
        return self.dims

    @cached_property
    def offsets(self) -> Tuple[int, ...]:
        out, acc = [], 0
        for d in self.dims:
            out.append(acc)
            acc += d
        return tuple(out)

    def is_zero(self) -> bool:
        return self.dim == 0

    def with_name(self, name: str) -> "Module":
        m = Module(self.algebra, self.dims, self.blocks, name)
        if "basis_actions" in self.__dict__:
            m.__dict__["basis_actions"] = self.__dict__["basis_actions"]
        return m

    # ------------------------------------------------------------------ #
    # Action
    # ------------------------------------------------------------------ #

    @cached_property
    def word_actions(self) -> Tuple[Matrix, ...]:
        table = self.algebra.word_table
        out: List[Matrix] = []
        for start, path in table.words:
            m = Matrix.identity(self.field, self.dims[start])
            for gi in path:
                m = m @ self.blocks[gi]
            out.append(m)
        return tuple(out)

    @cached_property
    def basis_actions(self) -> Tuple[Matrix, ...]:
        """Matrice d'action de chaque vecteur de base b_k (dims[s] x dims[t])."""
        a = self.algebra
        words = self.word_actions
        out: List[Matrix] = []
        for k, (s, t) in enumerate(a.peirce):
            acc = Matrix.zeros(self.field, self.dims[s], self.dims[t])
            for w, c in a.word_table.expressions[k]:
                acc = acc + words[w].scale(c)
            out.append(acc)
        return tuple(out)

    def action(self, x: Sequence[Scalar]) -> Matrix:
        """Action totale d'un élément quelconque (matrice dim M x dim M)."""
        n = self.dim
        rows = [[self.field.zero] * n for _ in range(n)]
        for k, c in enumerate(x):
            if not c:
                continue
            s, t = self.algebra.peirce[k]
            block = self.basis_actions[k]
            r0, c0 = self.offsets[s], self.offsets[t]
            for i, row in enumerate(block.entries):
                target = rows[r0 + i]
                for j, value in enumerate(row):
                    if value:
                        target[c0 + j] = target[c0 + j] + c * value
        return Matrix(self.field, n, n, tuple(tuple(r) for r in rows))

    def act(self, v: Sequence[Scalar], x: Sequence[Scalar]) -> Vector:
        """v·x pour v dans M (coordonnées globales)."""
        return self.action(x).left_apply(v)

    def validate(self) -> None:
        """Vérifie act(b_k)·X_g = act(b_k·g) pour tout vecteur de base et générateur."""
        a = self.algebra
        errors: List[str] = []
        for gi, g in enumerate(a.generators):
            for k, (s, t) in enumerate(a.peirce):
                if t != g.source:
                    continue
                lhs = self.basis_actions[k] @ self.blocks[gi]
                product = a.mul(a.basis_vector(k), g.vector)
                rhs = Matrix.zeros(self.field, self.dims[s], self.dims[g.target])
                for m, c in enumerate(product):
                    if c:
                        rhs = rhs + self.basis_actions[m].scale(c)
                if lhs != rhs:
                    errors.append(f"{a.labels[k]}·{g.label}")
        if errors:
            raise ModuleRelationError("relations violées : " + " / ".join(errors[:5]))

    # ------------------------------------------------------------------ #
    # Coordonnées
    # ------------------------------------------------------------------ #

    def split_vector(self, v: Sequence[Scalar]) -> List[Vector]:
        return [tuple(v[o:o + d]) for o, d in zip(self.offsets, self.dims)]

    def join_vectors(self, parts: Sequence[Sequence[Scalar]]) -> Vector:
        return tuple(x for p in parts for x in p)

    def vertex_vector(self, v: int, local: Sequence[Scalar]) -> Vector:
        zero = self.field.zero
        out = [zero] * self.dim
        out[self.offsets[v]:self.offsets[v] + self.dims[v]] = list(local)
        return tuple(out)

    def describe(self) -> str:
        dims = "(" + ",".join(str(d) for d in self.dims) + ")"
        return f"{self.name or 'M'} {dims}"

    def __repr__(self) -> str:
        return f"Module({self.describe()})"


@dataclass(frozen=True, eq=False)
class Morphism:
    """Homomorphisme de modules : une matrice par sommet (vecteurs lignes)."""

    source: Module
    target: Module
    maps: Tuple[Matrix, ...]

    def __post_init__(self) -> None:
        for v, m in enumerate(self.maps):
            if m.shape != (self.source.dims[v], self.target.dims[v]):
                raise DimensionMismatchError(f"morphisme au sommet {v}: forme {m.shape}")

    @classmethod
    def zero(cls, source: Module, target: Module) -> "Morphism":
        f = source.field
        return cls(source, target, tuple(Matrix.zeros(f, a, b) for a, b in zip(source.dims, target.dims)))

    @classmethod
    def identity(cls, module: Module) -> "Morphism":
        return cls(module, module, tuple(Matrix.identity(module.field, d) for d in module.dims))

    def then(self, other: "Morphism") -> "Morphism":
        """self puis other."""
        return Morphism(self.source, other.target, tuple(f @ g for f, g in zip(self.maps, other.maps)))

    def __add__(self, other: "Morphism") -> "Morphism":
        return Morphism(self.source, self.target, tuple(f + g for f, g in zip(self.maps, other.maps)))

    def scale(self, c: Scalar) -> "Morphism":
        return Morphism(self.source, self.target, tuple(f.scale(c) for f in self.maps))

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self.maps)

    def is_invertible(self) -> bool:
        return all(m.is_square and m.is_invertible() for m in self.maps)

    def inverse(self) -> "Morphism":
        inverses = []
        for m in self.maps:
            inv = m.inverse() if m.is_square else None
            if inv is None:
                raise ValueError("morphisme non inversible")
            inverses.append(inv)
        return Morphism(self.target, self.source, tuple(inverses))

    def flatten(self) -> Vector:
        return tuple(x for m in self.maps for x in m.flatten())

    def apply(self, v: Sequence[Scalar]) -> Vector:
        parts = self.source.split_vector(v)
        return self.target.join_vectors([m.left_apply(p) for m, p in zip(self.maps, parts)])

    def total_matrix(self) -> Matrix:
        return Matrix.block_diagonal(self.source.field, list(self.maps))

    def is_homomorphism(self) -> bool:
        for gi, g in enumerate(self.source.algebra.generators):
            lhs = self.source.blocks[gi] @ self.maps[g.target]
            rhs = self.maps[g.source] @ self.target.blocks[gi]
            if lhs != rhs:
                return False
        return True


def compose(f: Morphism, g: Morphism) -> Morphism:
    """f puis g."""
    return f.then(g)


# ------------------------------------------------------------------ #
# Modules standard
# ------------------------------------------------------------------ #


def _block_coordinates(a: Algebra, x: Sequence[Scalar], s: int, t: int) -> Vector:
    return tuple(x[k] for k in a.block(s, t))


def projective(a: Algebra, i: int) -> Module:
    """P_i = e_i A ; base de P_i·e_v = vecteurs de base de e_i A e_v."""
    dims = tuple(len(a.block(i, v)) for v in range(a.n_vertices))
    blocks = []
    for g in a.generators:
        rows = [
            _block_coordinates(a, a.mul(a.basis_vector(k), g.vector), i, g.target)
            for k in a.block(i, g.source)
        ]
        blocks.append(Matrix(a.field, len(rows), dims[g.target], tuple(rows)))
    return Module(a, dims, tuple(blocks), f"P{a.vertex_names[i]}")


def simple(a: Algebra, i: int) -> Module:
    p = projective(a, i)
    s, _ = top(p)
    return s.with_name(f"S{a.vertex_names[i]}")


def dual(m: Module) -> Module:
    """D(M) = Hom_K(M, K), module sur l'algèbre opposée (matrices transposées)."""
    op = m.algebra.opposite
    d = Module(op, m.dims, tuple(b.transpose() for b in m.blocks), f"D({m.name})" if m.name else "")
    return d


def dual_morphism(f: Morphism, source: Optional[Module] = None, target: Optional[Module] = None) -> Morphism:
    """D(f) : D(Y) -> D(X)."""
    return Morphism(
        source if source is not None else dual(f.target),
        target if target is not None else dual(f.source),
        tuple(m.transpose() for m in f.maps),
    )


def injective(a: Algebra, i: int) -> Module:
    """I_i = D(A e_i) = D(e_i A^op)."""
    return dual(projective(a.opposite, i)).with_name(f"I{a.vertex_names[i]}")


def projective_map(a: Algebra, sources: Sequence[int], targets: Sequence[int], entries) -> Morphism:
    """
    ⊕_u P_{sources[u]} -> ⊕_v P_{targets[v]} ; la composante u -> v est
    x ↦ entries[u][v]·x avec entries[u][v] dans e_{targets[v]} A e_{sources[u]}.
    """
    source = direct_sum([projective(a, s) for s in sources])[0]
    target = direct_sum([projective(a, t) for t in targets])[0]
    maps = []
    for w in range(a.n_vertices):
        rows: List[Vector] = []
        for u, s in enumerate(sources):
            for k in a.block(s, w):
                row: List[Scalar] = []
                for v, t in enumerate(targets):
                    entry = entries[u][v]
                    if entry is None or not any(entry):
                        row.extend([a.field.zero] * len(a.block(t, w)))
                    else:
                        row.extend(_block_coordinates(a, a.mul(entry, a.basis_vector(k)), t, w))
                rows.append(tuple(row))
        maps.append(matrix_from_vectors(a.field, rows, target.dims[w]))
    return Morphism(source, target, tuple(maps))


# ------------------------------------------------------------------ #
# Sommes directes, sous-modules, quotients
# ------------------------------------------------------------------ #


def direct_sum(modules: Sequence[Module], algebra: Optional[Algebra] = None) -> Tuple[Module, List[Morphism], List[Morphism]]:
    """Somme directe avec inclusions et projections canoniques."""
    if not modules:
        if algebra is None:
            raise ValueError("somme directe vide sans algèbre")
        a = algebra
        empty = Module(
            a,
            tuple(0 for _ in range(a.n_vertices)),
            tuple(Matrix.zeros(a.field, 0, 0) for _ in a.generators),
        )
        return empty, [], []
    a = modules[0].algebra
    field = a.field
    dims = tuple(sum(m.dims[v] for m in modules) for v in range(a.n_vertices))
    blocks = tuple(Matrix.block_diagonal(field, [m.blocks[gi] for m in modules]) for gi in range(len(a.generators)))
    name = " ⊕ ".join(m.name or "M" for m in modules) if len(modules) > 1 else modules[0].name
    total = Module(a, dims, blocks, name)
    inclusions, projections = [], []
    starts = [0] * a.n_vertices
    for m in modules:
        inc, proj = [], []
        for v in range(a.n_vertices):
            d, big, o = m.dims[v], dims[v], starts[v]
            inc.append(Matrix(field, d, big, tuple(
                tuple(field.one if j == o + i else field.zero for j in range(big)) for i in range(d)
            )))
            proj.append(Matrix(field, big, d, tuple(
                tuple(field.one if j + o == i else field.zero for j in range(d)) for i in range(big)
            )))
            starts[v] += d
        inclusions.append(Morphism(m, total, tuple(inc)))
        projections.append(Morphism(total, m, tuple(proj)))
    return total, inclusions, projections


def _check_stable(m: Module, spaces: Sequence[Subspace]) -> None:
    errors = []
    for gi, g in enumerate(m.algebra.generators):
        block = m.blocks[gi]
        for u in spaces[g.source].basis:
            if not spaces[g.target].contains(block.left_apply(u)):
                errors.append(g.label)
                break
    if errors:
        raise NotStableError("sous-espace non stable sous " + ", ".join(errors))


def submodule(m: Module, spaces: Sequence[Subspace], name: str = "") -> Tuple[Module, Morphism]:
    """Sous-module donné par un sous-espace par sommet ; renvoie (N, inclusion)."""
    _check_stable(m, spaces)
    field = m.field
    dims = tuple(s.dim for s in spaces)
    blocks = []
    for gi, g in enumerate(m.algebra.generators):
        rows = [spaces[g.target].coordinates(m.blocks[gi].left_apply(u)) for u in spaces[g.source].basis]
        blocks.append(Matrix(field, dims[g.source], dims[g.target], tuple(rows)))
    sub = Module(m.algebra, dims, tuple(blocks), name)
    inclusion = Morphism(sub, m, tuple(s.as_matrix() for s in spaces))
    return sub, inclusion


def quotient_module(m: Module, spaces: Sequence[Subspace], name: str = "") -> Tuple[Module, Morphism]:
    """Quotient M/N sur les colonnes non pivots ; renvoie (M/N, projection)."""
    _check_stable(m, spaces)
    field = m.field
    keep = [s.complement_indices() for s in spaces]
    dims = tuple(len(k) for k in keep)
    projections = []
    for v, space in enumerate(spaces):
        rows = []
        for p in range(m.dims[v]):
            unit = tuple(field.one if i == p else field.zero for i in range(m.dims[v]))
            reduced = space.reduce(unit)
            rows.append(tuple(reduced[c] for c in keep[v]))
        projections.append(matrix_from_vectors(field, rows, dims[v]))
    blocks = []
    for gi, g in enumerate(m.algebra.generators):
        block = m.blocks[gi]
        rows = [projections[g.target].left_apply(block.row(c)) for c in keep[g.source]]
        blocks.append(Matrix(field, dims[g.source], dims[g.target], tuple(rows)))
    q = Module(m.algebra, dims, tuple(blocks), name)
    return q, Morphism(m, q, tuple(projections))


def kernel(f: Morphism) -> Tuple[Module, Morphism]:
    spaces = [Subspace.span(f.source.field, f.source.dims[v], m.left_kernel_basis()) for v, m in enumerate(f.maps)]
    return submodule(f.source, spaces)


def image_spaces(f: Morphism) -> List[Subspace]:
    return [Subspace.span(f.target.field, f.target.dims[v], m.entries) for v, m in enumerate(f.maps)]


def image(f: Morphism) -> Tuple[Module, Morphism]:
    return submodule(f.target, image_spaces(f))


def cokernel(f: Morphism) -> Tuple[Module, Morphism]:
    return quotient_module(f.target, image_spaces(f))


def radical_spaces(m: Module) -> List[Subspace]:
    """rad M en t = somme des images des générateurs arrivant en t."""
    vectors: Dict[int, List[Vector]] = {v: [] for v in range(len(m.dims))}
    for gi, g in enumerate(m.algebra.generators):
        vectors[g.target].extend(m.blocks[gi].entries)
    return [Subspace.span(m.field, m.dims[v], vectors[v]) for v in range(len(m.dims))]


def socle_spaces(m: Module) -> List[Subspace]:
    """soc M en s = intersection des noyaux des générateurs partant de s."""
    out = []
    for v in range(len(m.dims)):
        outgoing = [m.blocks[gi] for gi, g in enumerate(m.algebra.generators) if g.source == v]
        if not outgoing:
            out.append(Subspace.full(m.field, m.dims[v]))
            continue
        stacked = outgoing[0]
        for b in outgoing[1:]:
            stacked = stacked.hstack(b)
        out.append(Subspace.span(m.field, m.dims[v], stacked.left_kernel_basis()))
    return out


def radical_module(m: Module) -> Tuple[Module, Morphism]:
    return submodule(m, radical_spaces(m), f"rad {m.name}" if m.name else "")


def socle_module(m: Module) -> Tuple[Module, Morphism]:
    return submodule(m, socle_spaces(m), f"soc {m.name}" if m.name else "")


def top(m: Module) -> Tuple[Module, Morphism]:
    return quotient_module(m, radical_spaces(m), f"top {m.name}" if m.name else "")


def top_vector(m: Module) -> Tuple[int, ...]:
    return tuple(d - s.dim for d, s in zip(m.dims, radical_spaces(m)))


def socle_vector(m: Module) -> Tuple[int, ...]:
    return tuple(s.dim for s in socle_spaces(m))


def submodule_generated(m: Module, vectors: Sequence[Sequence[Scalar]]) -> Tuple[Module, Morphism]:
    """Plus petit sous-module contenant les vecteurs donnés (coordonnées globales)."""
    return submodule(m, generated_spaces(m, vectors))


def generated_spaces(m: Module, vectors: Sequence[Sequence[Scalar]]) -> List[Subspace]:
    n_vertices = len(m.dims)
    acc = [EchelonBasis(m.field, m.dims[v]) for v in range(n_vertices)]
    queue: List[Tuple[int, Vector]] = []
    for vec in vectors:
        for v, part in enumerate(m.split_vector(vec)):
            if any(part) and acc[v].add(part):
                queue.append((v, part))
    outgoing: Dict[int, List[int]] = {v: [] for v in range(n_vertices)}
    for gi, g in enumerate(m.algebra.generators):
        outgoing[g.source].append(gi)
    while queue:
        v, part = queue.pop()
        for gi in outgoing[v]:
            t = m.algebra.generators[gi].target
            image_vec = m.blocks[gi].left_apply(part)
            if any(image_vec) and acc[t].add(image_vec):
                queue.append((t, image_vec))
    return [a.to_subspace() for a in acc]


def radical_series(m: Module) -> List[Tuple[int, ...]]:
    """Vecteurs dimension des couches de Loewy M·rad^k / M·rad^(k+1)."""
    layers = []
    current = m
    while current.dim:
        spaces = radical_spaces(current)
        layers.append(tuple(d - s.dim for d, s in zip(current.dims, spaces)))
        current, _ = submodule(current, spaces)
    return layers


def module_annihilator(m: Module) -> Subspace:
    """r_A(M) = {x | M·x = 0}."""
    a = m.algebra
    rows = [m.basis_actions[k].flatten() for k in range(a.dim)]
    # les actions ont des formes différentes : on les place dans des colonnes disjointes
    offsets: Dict[Tuple[int, int], int] = {}
    width = 0
    for k, (s, t) in enumerate(a.peirce):
        if (s, t) not in offsets:
            offsets[(s, t)] = width
            width += m.dims[s] * m.dims[t]
    zero = m.field.zero
    stacked = []
    for k, (s, t) in enumerate(a.peirce):
        row = [zero] * width
        o = offsets[(s, t)]
        row[o:o + len(rows[k])] = list(rows[k])
        stacked.append(tuple(row))
    if width == 0:
        return Subspace.full(a.field, a.dim)
    return a.span(matrix_from_vectors(a.field, stacked, width).left_kernel_basis())


def restrict_to_quotient(m: Module, qmap) -> Module:
    """Un A-module annulé par I vu comme A/I-module (QuotientMap fournie)."""
    b = qmap.target
    errors = []
    for v in range(m.algebra.n_vertices):
        if v not in qmap.survivors and m.dims[v]:
            errors.append(f"sommet {m.algebra.vertex_names[v]} tué par I mais M·e ≠ 0")
    if errors:
        raise ConsistencyError(" / ".join(errors))
    dims = tuple(m.dims[v] for v in qmap.survivors)
    blocks = []
    for g in b.generators:
        lifted = qmap.lift(g.vector)
        s, t = qmap.survivors[g.source], qmap.survivors[g.target]
        full = m.action(lifted)
        rows = full.submatrix(range(m.offsets[s], m.offsets[s] + m.dims[s]), range(m.offsets[t], m.offsets[t] + m.dims[t]))
        blocks.append(rows)
    return Module(b, dims, tuple(blocks), m.name)


def morphism_from_total(source: Module, target: Module, total: Matrix) -> Morphism:
    maps = []
    for v in range(len(source.dims)):
        rows = range(source.offsets[v], source.offsets[v] + source.dims[v])
        cols = range(target.offsets[v], target.offsets[v] + target.dims[v])
        maps.append(total.submatrix(rows, cols))
    return Morphism(source, target, tuple(maps))


class FactorizationError(ValueError):
    """Le morphisme ne se factorise pas par le morphisme imposé."""


def restrict_to_submodule(f: Morphism, inclusion: Morphism) -> Morphism:
    """g : X -> N avec g puis inclusion = f, quand f(X) est dans l'image de l'inclusion."""
    maps = []
    for v, (fm, im) in enumerate(zip(f.maps, inclusion.maps)):
        rows = []
        for row in fm.entries:
            solution = im.solve_left(row) if im.rows else (() if not any(row) else None)
            if solution is None:
                raise FactorizationError(f"image hors du sous-module au sommet {v}")
            rows.append(solution)
        maps.append(matrix_from_vectors(f.source.field, rows, im.rows))
    return Morphism(f.source, inclusion.source, tuple(maps))


def induced_from_quotient(projection: Morphism, f: Morphism) -> Morphism:
    """g : M/N -> Y avec projection puis g = f ; f doit s'annuler sur N."""
    maps = []
    for v, (pm, fm) in enumerate(zip(projection.maps, f.maps)):
        rows = []
        for j in range(pm.cols):
            unit = tuple(pm.field.one if i == j else pm.field.zero for i in range(pm.cols))
            preimage = pm.solve_left(unit)
            if preimage is None:
                raise FactorizationError(f"projection non surjective au sommet {v}")
            rows.append(fm.left_apply(preimage))
        maps.append(matrix_from_vectors(pm.field, rows, fm.cols))
    induced = Morphism(projection.target, f.target, tuple(maps))
    if projection.then(induced).flatten() != f.flatten():
        raise FactorizationError("le morphisme ne s'annule pas sur le noyau de la projection")
    return induced
