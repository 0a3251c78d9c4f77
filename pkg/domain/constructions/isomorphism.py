# domain/constructions/isomorphism.py

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple

from domain.algebra.algebra import Algebra
from domain.algebra.ideals import quotient, socle
from domain.algebra.properties import cartan_matrix, center, is_self_injective, radical_layers
from domain.algebra.quiver import arrow_space_dims
from domain.linalg.field import Scalar
from domain.linalg.matrix import Matrix, Vector, matrix_from_vectors, vec_add, vec_scale
from domain.linalg.subspace import EchelonBasis, Subspace
from domain.status import Verdict

logger = logging.getLogger(__name__)

DEFAULT_ISO_MAX_DIM = 48
DEFAULT_ISO_MAX_VERTICES = 6
DEFAULT_ISO_MAX_NODES = 20000


class SearchBudgetExceeded(RuntimeError):
    """Exception technique : budget de nœuds épuisé pour une permutation."""


@dataclass(frozen=True)
class IsoBudget:
    max_dim: int = DEFAULT_ISO_MAX_DIM
    max_vertices: int = DEFAULT_ISO_MAX_VERTICES
    max_nodes: int = DEFAULT_ISO_MAX_NODES


@dataclass(frozen=True, eq=False)
class IsomorphismWitness:
    """φ : A1 -> A2, ligne k de `matrix` = φ(b_k) ; φ(e_v) = e_π(v)."""

    source: Algebra
    target: Algebra
    permutation: Tuple[int, ...]
    matrix: Matrix

    def __call__(self, x: Sequence[Scalar]) -> Vector:
        return self.matrix.left_apply(x)

    def verify(self) -> bool:
        a1, a2 = self.source, self.target
        if a1.dim != a2.dim or not self.matrix.is_invertible():
            return False
        if self(a1.unit()) != a2.unit():
            return False
        images = [self.matrix.row(k) for k in range(a1.dim)]
        for i in range(a1.dim):
            for j in range(a1.dim):
                if a1.peirce[i][1] != a1.peirce[j][0]:
                    continue
                if self(a1.basis_product(i, j)) != a2.mul(images[i], images[j]):
                    return False
        return True

    def to_dict(self) -> Dict[str, Any]:
        a1, a2 = self.source, self.target
        return {
            "vertices": {a1.vertex_names[v]: a2.vertex_names[w] for v, w in enumerate(self.permutation)},
            "generators": {
                g.label: a2.element_label(self(g.vector)) for g in a1.generators
            },
        }


@dataclass
class IsoSearchResult:
    verdict: Verdict
    witness: Optional[IsomorphismWitness] = None
    invariant: Optional[str] = None
    permutations_tried: int = 0
    nodes: int = 0
    reason: str = ""

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {
            "verdict": self.verdict.value,
            "permutations_tried": self.permutations_tried,
            "nodes": self.nodes,
        }
        if self.invariant:
            out["invariant"] = self.invariant
        if self.reason:
            out["reason"] = self.reason
        if self.witness is not None:
            out["witness"] = self.witness.to_dict()
        return out


# ------------------------------------------------------------------ #
# Batterie d'invariants
# ------------------------------------------------------------------ #


def _cartan_signature(c: Sequence[Sequence[int]]) -> List[Tuple[int, Tuple[int, ...], Tuple[int, ...]]]:
    n = len(c)
    return sorted(
        (c[i][i], tuple(sorted(c[i])), tuple(sorted(c[j][i] for j in range(n)))) for i in range(n)
    )


def invariant_mismatch(a1: Algebra, a2: Algebra) -> Optional[str]:
    """Premier invariant qui distingue A1 de A2, None si la batterie passe."""
    if a1.dim != a2.dim:
        return "dimension"
    if a1.n_vertices != a2.n_vertices:
        return "vertex_count"
    if _cartan_signature(cartan_matrix(a1)) != _cartan_signature(cartan_matrix(a2)):
        return "cartan_matrix"
    if radical_layers(a1) != radical_layers(a2):
        return "radical_layers"
    if center(a1).dim != center(a2).dim:
        return "center_dimension"
    return None


def vertex_permutations(a1: Algebra, a2: Algebra) -> Iterator[Tuple[int, ...]]:
    """Permutations π respectant matrices de Cartan, espaces de flèches et corps résiduels."""
    n = a1.n_vertices
    c1, c2 = cartan_matrix(a1), cartan_matrix(a2)
    d1, d2 = arrow_space_dims(a1), arrow_space_dims(a2)
    r1 = [a1.residue_dim(v) for v in range(n)]
    r2 = [a2.residue_dim(v) for v in range(n)]
    for perm in itertools.permutations(range(n)):
        if any(r1[i] != r2[perm[i]] for i in range(n)):
            continue
        if any(c1[i][j] != c2[perm[i]][perm[j]] for i in range(n) for j in range(n)):
            continue
        if any(d1.get((i, j), 0) != d2.get((perm[i], perm[j]), 0) for i in range(n) for j in range(n)):
            continue
        yield perm


# ------------------------------------------------------------------ #
# Recherche des images des générateurs
# ------------------------------------------------------------------ #


@dataclass
class _Constraint:
    """φ(w)·φ(g) = Σ c·φ(w') pour un produit mot·générateur hors de la table."""

    word: int
    generator: int
    terms: List[Tuple[int, Scalar]]
    level: int


class _GeneratorSearch:
    """
    Retour arrière sur les images des générateurs de A1 dans les blocs
    e_π(s) rad(A2) e_π(t). Les coefficients sont pris dans 1, -1, 2, -2, 0
    sur rad/rad² et dans 0, 1, -1, 2, -2 sur rad² ; chaque relation est
    vérifiée dès que ses générateurs sont fixés.
    """

    def __init__(self, a1: Algebra, a2: Algebra, permutation: Tuple[int, ...], max_nodes: int) -> None:
        self.a1, self.a2 = a1, a2
        self.permutation = permutation
        self.max_nodes = max_nodes
        self.nodes = 0
        self.gens = a1.generators
        table = a1.word_table
        self.table = table
        index = {w: k for k, w in enumerate(table.words)}
        self.max_generator = [max(path) if path else -1 for _, path in table.words]
        self.constraints: Dict[int, List[_Constraint]] = {}
        for w, (start, path) in enumerate(table.words):
            end = self.gens[path[-1]].target if path else start
            for gi, g in enumerate(self.gens):
                if g.source != end or (start, path + (gi,)) in index:
                    continue
                value = a1.mul(table.values[w], g.vector)
                terms = sorted(a1.express(value).items())
                level = max([gi, self.max_generator[w]] + [self.max_generator[u] for u, _ in terms])
                self.constraints.setdefault(level, []).append(_Constraint(w, gi, terms, level))
        self.images: List[Optional[Vector]] = [None] * len(self.gens)
        self.cache: Dict[int, Vector] = {}
        self.rad2: Dict[Tuple[int, int], Subspace] = {}
        self.choices = [self._choices(g) for g in self.gens]

    def _choices(self, g) -> List[Vector]:
        a2 = self.a2
        s, t = self.permutation[g.source], self.permutation[g.target]
        rad_block = a2.block_subspace(a2.radical, s, t)
        rad2_block = a2.block_subspace(a2.radical_square, s, t)
        self.rad2[(s, t)] = rad2_block
        top = rad2_block.extend_with(rad_block.basis)
        low = list(rad2_block.basis)
        zero = a2.field.zero
        top_values = a2.field.small_values(4) + [zero]
        low_values = [zero] + a2.field.small_values(4)
        out: List[Vector] = []
        for coeffs in itertools.product(top_values, repeat=len(top)):
            if not any(coeffs):
                continue
            head = a2.zero()
            for c, v in zip(coeffs, top):
                if c:
                    head = vec_add(head, vec_scale(c, v))
            for tail in itertools.product(low_values, repeat=len(low)):
                value = head
                for c, v in zip(tail, low):
                    if c:
                        value = vec_add(value, vec_scale(c, v))
                out.append(value)
        return out

    def _word_image(self, w: int) -> Vector:
        cached = self.cache.get(w)
        if cached is not None:
            return cached
        start, path = self.table.words[w]
        value = self.a2.idempotent(self.permutation[start])
        for gi in path:
            value = self.a2.mul(value, self.images[gi])
        self.cache[w] = value
        return value

    def _independent_mod_rad2(self, level: int, candidate: Vector) -> bool:
        g = self.gens[level]
        block = (self.permutation[g.source], self.permutation[g.target])
        acc = EchelonBasis(self.a2.field, self.a2.dim)
        for v in self.rad2[block].basis:
            acc.add(v)
        for gi in range(level):
            h = self.gens[gi]
            if (h.source, h.target) == (g.source, g.target):
                acc.add(self.images[gi])
        return acc.add(candidate)

    def _satisfied(self, level: int) -> bool:
        a2 = self.a2
        for c in self.constraints.get(level, []):
            left = a2.mul(self._word_image(c.word), self.images[c.generator])
            right = a2.zero()
            for u, coef in c.terms:
                right = vec_add(right, vec_scale(coef, self._word_image(u)))
            if left != right:
                return False
        return True

    def _assign(self, level: int) -> bool:
        if level == len(self.gens):
            return True
        for candidate in self.choices[level]:
            self.nodes += 1
            if self.nodes > self.max_nodes:
                raise SearchBudgetExceeded(f"{self.max_nodes} nœuds explorés")
            if not self._independent_mod_rad2(level, candidate):
                continue
            self.images[level] = candidate
            self.cache = {w: v for w, v in self.cache.items() if self.max_generator[w] < level}
            if self._satisfied(level) and self._assign(level + 1):
                return True
        self.images[level] = None
        return False

    def run(self) -> Optional[Matrix]:
        if not self._assign(0):
            return None
        a2 = self.a2
        word_images = [self._word_image(w) for w in range(len(self.table.words))]
        rows = []
        for k in range(self.a1.dim):
            row = a2.zero()
            for w, c in self.table.expressions[k]:
                row = vec_add(row, vec_scale(c, word_images[w]))
            rows.append(row)
        return matrix_from_vectors(a2.field, rows, a2.dim)


def algebra_isomorphism(a1: Algebra, a2: Algebra, budget: Optional[IsoBudget] = None) -> IsoSearchResult:
    """
    Recherche exacte d'un isomorphisme A1 ≅ A2 : batterie d'invariants, puis
    permutations de sommets filtrées par Cartan, puis images des générateurs.
    Tout témoin trouvé est vérifié sur toute la table de multiplication.
    """
    budget = budget or IsoBudget()
    mismatch = invariant_mismatch(a1, a2)
    if mismatch is not None:
        logger.info("Algèbres non isomorphes : invariant %s distinct.", mismatch)
        return IsoSearchResult(Verdict.NO, invariant=mismatch)
    if a1.dim > budget.max_dim or a1.n_vertices > budget.max_vertices:
        return IsoSearchResult(
            Verdict.UNDETERMINED,
            reason=f"hors budget (dim {a1.dim} > {budget.max_dim} ou {a1.n_vertices} sommets > {budget.max_vertices})",
        )

    result = IsoSearchResult(Verdict.UNDETERMINED)
    exceeded = False
    for perm in vertex_permutations(a1, a2):
        result.permutations_tried += 1
        search = _GeneratorSearch(a1, a2, perm, budget.max_nodes)
        try:
            matrix = search.run()
        except SearchBudgetExceeded:
            logger.debug("Budget épuisé pour la permutation %s.", perm)
            exceeded = True
            matrix = None
        result.nodes += search.nodes
        if matrix is None:
            continue
        witness = IsomorphismWitness(a1, a2, perm, matrix)
        if not witness.verify():
            logger.warning("Candidat rejeté à la vérification finale (permutation %s).", perm)
            continue
        result.verdict = Verdict.YES
        result.witness = witness
        logger.info("Isomorphisme trouvé (permutation %s, %d nœuds).", perm, result.nodes)
        return result

    if result.permutations_tried == 0:
        result.verdict = Verdict.NO
        result.invariant = "cartan_matrix"
        return result
    result.reason = "budget de nœuds épuisé" if exceeded else "aucune image de générateurs parmi les coefficients explorés"
    logger.info("Isomorphisme non établi : %s.", result.reason)
    return result


# ------------------------------------------------------------------ #
# Équivalence socle
# ------------------------------------------------------------------ #


@dataclass
class SocleComparison:
    verdict: Verdict
    search: IsoSearchResult
    quotient_dims: Tuple[int, int]
    self_injective: Tuple[bool, bool]

    @property
    def witness(self) -> Optional[IsomorphismWitness]:
        return self.search.witness

    @property
    def invariant(self) -> Optional[str]:
        return self.search.invariant

    def to_dict(self) -> Dict[str, Any]:
        out = self.search.to_dict()
        out["socle_quotient_dims"] = list(self.quotient_dims)
        out["self_injective"] = list(self.self_injective)
        return out


def socle_equivalent(a1: Algebra, a2: Algebra, budget: Optional[IsoBudget] = None) -> SocleComparison:
    """Compare A1/soc(A1) et A2/soc(A2) : oui (témoin), non (invariant) ou indéterminé."""
    flags = (is_self_injective(a1) is not None, is_self_injective(a2) is not None)
    if not all(flags):
        logger.warning("Comparaison des socles sur une algèbre non auto-injective (socle à droite utilisé).")
    q1 = quotient(a1, socle(a1)).target
    q2 = q1 if a2 is a1 else quotient(a2, socle(a2)).target
    search = algebra_isomorphism(q1, q2, budget)
    comparison = SocleComparison(search.verdict, search, (q1.dim, q2.dim), flags)
    logger.info("Équivalence socle : %s.", comparison.verdict.value)
    return comparison
