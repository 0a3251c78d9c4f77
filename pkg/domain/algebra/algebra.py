# domain/algebra/algebra.py

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Dict, List, NamedTuple, Optional, Sequence, Tuple

from domain.linalg.field import FieldSpec, Scalar
from domain.linalg.matrix import Matrix, Vector, unit_vector
from domain.linalg.subspace import EchelonBasis, Subspace

logger = logging.getLogger(__name__)

# Produits non nuls de vecteurs de base : (i, j) -> ((k, c_ijk), ...)
ProductTable = Dict[Tuple[int, int], Tuple[Tuple[int, Scalar], ...]]


class ConsistencyError(RuntimeError):
    """
    Exception technique : un invariant qui découle d'un théorème est violé.
    Signale un bug d'implémentation, jamais une entrée invalide.
    """


class NonSplitResidueError(ValueError):
    """
    Exception fonctionnelle : un coin e_v A e_v a un résidu
    e_v A e_v / e_v rad e_v de dimension > 1 sur K. Les modules, vus comme
    représentations du carquois, exigent un résidu égal à K en chaque sommet.
    """


class Generator(NamedTuple):
    """Relevé homogène d'un élément de base de rad/rad² (une flèche)."""

    vector: Vector
    source: int
    target: int
    label: str


@dataclass(frozen=True)
class WordTable:
    """
    Mots en les générateurs formant une base de l'algèbre.

    Chaque mot est (sommet de départ, indices de générateurs) ; `expressions[k]`
    exprime le k-ième vecteur de base comme combinaison de mots.
    """

    words: Tuple[Tuple[int, Tuple[int, ...]], ...]
    values: Tuple[Vector, ...]
    expressions: Tuple[Tuple[Tuple[int, Scalar], ...], ...]


@dataclass(frozen=True, eq=False)
class Algebra:
    """
    Algèbre associative unitaire de dimension finie, donnée par constantes de
    structure sur une base Peirce-homogène.

    `peirce[k] = (s, t)` signifie e_s·b_k·e_t = b_k ; `idempotents[v]` est
    l'indice du vecteur de base e_v. Convention de composition des chemins :
    p*q parcourt p puis q.
    """

    field: FieldSpec
    labels: Tuple[str, ...]
    peirce: Tuple[Tuple[int, int], ...]
    products: ProductTable
    idempotents: Tuple[int, ...]
    vertex_names: Tuple[str, ...]
    radical_hint: Optional[Tuple[Vector, ...]] = None
    generator_hint: Optional[Tuple[int, ...]] = None
    presentation: Optional[Any] = None
    provenance: str = "constantes de structure"

    def __post_init__(self) -> None:
        errors: List[str] = []
        if len(self.labels) != len(self.peirce):
            errors.append(f"{len(self.labels)} libellés pour {len(self.peirce)} vecteurs de base")
        if len(self.idempotents) != len(self.vertex_names):
            errors.append("un idempotent par sommet est requis")
        for v, k in enumerate(self.idempotents):
            if k >= len(self.peirce) or self.peirce[k] != (v, v):
                errors.append(f"idempotent du sommet {v} mal typé")
        if errors:
            raise ConsistencyError(" / ".join(errors))

    # ------------------------------------------------------------------ #
    # Dimensions et blocs de Peirce
    # ------------------------------------------------------------------ #

    @property
    def dim(self) -> int:
        return len(self.labels)

    @property
    def n_vertices(self) -> int:
        return len(self.idempotents)

    @cached_property
    def blocks(self) -> Dict[Tuple[int, int], Tuple[int, ...]]:
        table: Dict[Tuple[int, int], List[int]] = {}
        for k, st in enumerate(self.peirce):
            table.setdefault(st, []).append(k)
        return {st: tuple(ks) for st, ks in table.items()}

    def block(self, s: int, t: int) -> Tuple[int, ...]:
        """Indices des vecteurs de base de e_s A e_t."""
        return self.blocks.get((s, t), ())

    def vertex_index(self, name: str) -> int:
        return self.vertex_names.index(name)

    # ------------------------------------------------------------------ #
    # Éléments
    # ------------------------------------------------------------------ #

    def zero(self) -> Vector:
        zero = self.field.zero
        return tuple(zero for _ in range(self.dim))

    def basis_vector(self, k: int) -> Vector:
        return unit_vector(self.field, self.dim, k)

    def idempotent(self, v: int) -> Vector:
        return self.basis_vector(self.idempotents[v])

    def unit(self) -> Vector:
        one = self.field.one
        out = list(self.zero())
        for k in self.idempotents:
            out[k] = one
        return tuple(out)

    def idempotent_sum(self, vertices: Sequence[int]) -> Vector:
        out = list(self.zero())
        for v in vertices:
            out[self.idempotents[v]] = self.field.one
        return tuple(out)

    def basis_product(self, i: int, j: int) -> Vector:
        out = list(self.zero())
        for k, c in self.products.get((i, j), ()):
            out[k] = c
        return tuple(out)

    def mul(self, x: Sequence[Scalar], y: Sequence[Scalar]) -> Vector:
        out = [self.field.zero] * self.dim
        ys = [(j, b) for j, b in enumerate(y) if b]
        for i, a in enumerate(x):
            if not a:
                continue
            for j, b in ys:
                entry = self.products.get((i, j))
                if entry:
                    ab = a * b
                    for k, c in entry:
                        out[k] = out[k] + ab * c
        return tuple(out)

    def left_multiplication(self, x: Sequence[Scalar]) -> Matrix:
        """Matrice dont la ligne j est x·b_j (y ↦ x·y en convention ligne)."""
        return Matrix(self.field, self.dim, self.dim, tuple(self.mul(x, self.basis_vector(j)) for j in range(self.dim)))

    def right_multiplication(self, x: Sequence[Scalar]) -> Matrix:
        """Matrice dont la ligne i est b_i·x (y ↦ y·x en convention ligne)."""
        return Matrix(self.field, self.dim, self.dim, tuple(self.mul(self.basis_vector(i), x) for i in range(self.dim)))

    def element_label(self, x: Sequence[Scalar]) -> str:
        terms = []
        for k, c in enumerate(x):
            if c:
                terms.append(self.labels[k] if c == 1 else f"{c}*{self.labels[k]}")
        return " + ".join(terms) if terms else "0"

    def is_associative(self) -> bool:
        n = self.dim
        for i in range(n):
            bi = self.basis_vector(i)
            for j in range(n):
                if self.peirce[i][1] != self.peirce[j][0]:
                    continue
                bij = self.basis_product(i, j)
                for k in range(n):
                    if self.peirce[j][1] != self.peirce[k][0]:
                        continue
                    left = self.mul(bij, self.basis_vector(k))
                    right = self.mul(bi, self.basis_product(j, k))
                    if left != right:
                        logger.debug("Associativité violée sur (%d, %d, %d).", i, j, k)
                        return False
        return True

    def span(self, vectors: Sequence[Sequence[Scalar]]) -> Subspace:
        return Subspace.span(self.field, self.dim, vectors)

    def product_span(self, left: Sequence[Sequence[Scalar]], right: Sequence[Sequence[Scalar]]) -> Subspace:
        """Sous-espace engendré par les produits x·y."""
        acc = EchelonBasis(self.field, self.dim)
        for x in left:
            for y in right:
                p = self.mul(x, y)
                if any(p):
                    acc.add(p)
        return acc.to_subspace()

    # ------------------------------------------------------------------ #
    # Constructions dérivées (mises en cache)
    # ------------------------------------------------------------------ #

    @cached_property
    def opposite(self) -> "Algebra":
        products = {(j, i): entry for (i, j), entry in self.products.items()}
        op = Algebra(
            field=self.field,
            labels=self.labels,
            peirce=tuple((t, s) for s, t in self.peirce),
            products=products,
            idempotents=self.idempotents,
            vertex_names=self.vertex_names,
            radical_hint=self.radical_hint,
            generator_hint=self.generator_hint,
            presentation=None,
            provenance=f"opposée de ({self.provenance})",
        )
        op.__dict__["opposite"] = self
        op.__dict__["_mirror"] = self
        return op

    @cached_property
    def radical(self) -> Subspace:
        from domain.algebra.radical import compute_radical

        mirror = self.__dict__.get("_mirror")
        if mirror is not None:
            return mirror.radical
        return compute_radical(self)

    @cached_property
    def radical_square(self) -> Subspace:
        basis = self.radical.basis
        return self.product_span(basis, basis)

    def radical_power(self, k: int) -> Subspace:
        if k <= 0:
            return Subspace.full(self.field, self.dim)
        current = self.radical
        for _ in range(k - 1):
            current = self.product_span(current.basis, self.radical.basis)
        return current

    @cached_property
    def loewy_length(self) -> int:
        k = 0
        current = Subspace.full(self.field, self.dim)
        while current.dim:
            current = self.product_span(current.basis, self.radical.basis)
            k += 1
        return k

    def block_subspace(self, space: Subspace, s: int, t: int) -> Subspace:
        """Projection d'un sous-espace gradué sur le bloc e_s A e_t."""
        idx = set(self.block(s, t))
        zero = self.field.zero
        return Subspace.span(
            self.field, self.dim,
            [tuple(x if k in idx else zero for k, x in enumerate(v)) for v in space.basis],
        )

    def residue_dim(self, v: int) -> int:
        """dim_K de e_v A e_v / e_v rad e_v."""
        return len(self.block(v, v)) - self.block_subspace(self.radical, v, v).dim

    @cached_property
    def residue_dims(self) -> Tuple[int, ...]:
        return tuple(self.residue_dim(v) for v in range(self.n_vertices))

    def require_split_residues(self) -> None:
        """Lève NonSplitResidueError si un résidu e_v A e_v / e_v rad e_v n'est pas K."""
        wide = [f"{self.vertex_names[v]} (dim {d})" for v, d in enumerate(self.residue_dims) if d != 1]
        if wide:
            raise NonSplitResidueError(
                f"résidus différents de K aux sommets {', '.join(wide)} : modules non représentables"
            )

    @cached_property
    def generators(self) -> Tuple[Generator, ...]:
        # l'opposée réutilise les générateurs de son algèbre d'origine, types inversés
        mirror = self.__dict__.get("_mirror")
        if mirror is not None:
            return tuple(Generator(g.vector, g.target, g.source, g.label) for g in mirror.generators)
        if self.generator_hint is not None:
            return tuple(
                Generator(self.basis_vector(k), self.peirce[k][0], self.peirce[k][1], self.labels[k])
                for k in self.generator_hint
            )
        gens: List[Generator] = []
        rad, rad2 = self.radical, self.radical_square
        for (s, t) in sorted(self.blocks):
            rad_block = self.block_subspace(rad, s, t)
            if not rad_block.dim:
                continue
            acc = EchelonBasis(self.field, self.dim)
            for v in self.block_subspace(rad2, s, t).basis:
                acc.add(v)
            candidates = [self.basis_vector(k) for k in self.block(s, t)]
            candidates += list(rad_block.basis)
            for cand in candidates:
                if len(acc) == rad_block.dim:
                    break
                if rad_block.contains(cand) and acc.add(cand):
                    label = self.element_label(cand)
                    gens.append(Generator(tuple(cand), s, t, label))
        logger.debug("%d générateurs homogènes calculés.", len(gens))
        return tuple(gens)

    @cached_property
    def word_table(self) -> WordTable:
        gens = self.generators
        acc = EchelonBasis(self.field, self.dim)
        words: List[Tuple[int, Tuple[int, ...]]] = []
        values: List[Vector] = []
        for v in range(self.n_vertices):
            e = self.idempotent(v)
            acc.add(e)
            words.append((v, ()))
            values.append(e)
        cursor = 0
        while cursor < len(words):
            start, path = words[cursor]
            end = gens[path[-1]].target if path else start
            for gi, g in enumerate(gens):
                if g.source != end:
                    continue
                value = self.mul(values[cursor], g.vector)
                if any(value) and acc.add(value):
                    words.append((start, path + (gi,)))
                    values.append(value)
            cursor += 1
        if len(words) != self.dim:
            raise ConsistencyError(
                f"les générateurs n'engendrent pas l'algèbre ({len(words)} mots pour dim {self.dim})"
            )
        inverse = Matrix(self.field, self.dim, self.dim, tuple(values)).inverse()
        if inverse is None:
            raise ConsistencyError("base de mots non inversible")
        expressions = tuple(
            tuple((w, c) for w, c in enumerate(inverse.row(k)) if c) for k in range(self.dim)
        )
        return WordTable(tuple(words), tuple(values), expressions)

    def express(self, x: Sequence[Scalar]) -> Dict[int, Scalar]:
        """Coordonnées de x dans la base de mots."""
        out: Dict[int, Scalar] = {}
        for k, c in enumerate(x):
            if not c:
                continue
            for w, d in self.word_table.expressions[k]:
                out[w] = out.get(w, self.field.zero) + c * d
        return {w: c for w, c in out.items() if c}

    def describe(self) -> str:
        return f"algèbre de dimension {self.dim} sur {self.field} ({self.n_vertices} sommets, {self.provenance})"


def build_algebra(
    field: FieldSpec,
    labels: Sequence[str],
    peirce: Sequence[Tuple[int, int]],
    product,
    idempotents: Sequence[int],
    vertex_names: Sequence[str],
    **kwargs: Any,
) -> Algebra:
    """
    Assemble une algèbre à partir d'une fonction `product(i, j) -> Vector`
    évaluée sur les paires de Peirce composables.
    """
    table: ProductTable = {}
    n = len(labels)
    for i in range(n):
        for j in range(n):
            if peirce[i][1] != peirce[j][0]:
                continue
            v = product(i, j)
            entry = tuple((k, c) for k, c in enumerate(v) if c)
            if entry:
                table[(i, j)] = entry
    return Algebra(
        field=field,
        labels=tuple(labels),
        peirce=tuple(tuple(p) for p in peirce),
        products=table,
        idempotents=tuple(idempotents),
        vertex_names=tuple(vertex_names),
        **kwargs,
    )

