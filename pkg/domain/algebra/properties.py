# domain/algebra/properties.py

from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from math import lcm
from typing import Dict, List, Optional, Sequence, Tuple

from domain.algebra.algebra import Algebra, build_algebra
from domain.algebra.ideals import Ideal, left_socle_space, quotient, right_socle_space
from domain.linalg.matrix import Matrix
from domain.linalg.spectral import split_semisimple_element
from domain.linalg.subspace import Subspace

logger = logging.getLogger(__name__)


class PrimitiveIdempotentError(ValueError):
    """
    Exception fonctionnelle : un idempotent distingué n'est pas primitif
    (le coin e_i A e_i n'est pas local).
    """


@dataclass(frozen=True)
class NakayamaPermutation:
    """
    Permutation i ↦ π(i) telle que soc(e_i A) ≅ top(e_π(i) A).
    `mapping[i] = π(i)` en indices de sommets.
    """

    mapping: Tuple[int, ...]
    vertex_names: Tuple[str, ...]

    def __call__(self, i: int) -> int:
        return self.mapping[i]

    def inverse(self) -> "NakayamaPermutation":
        inv = [0] * len(self.mapping)
        for i, j in enumerate(self.mapping):
            inv[j] = i
        return NakayamaPermutation(tuple(inv), self.vertex_names)

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.mapping))

    def order(self) -> int:
        return lcm(*[len(c) for c in self.cycles()]) if self.mapping else 1

    def cycles(self) -> List[Tuple[int, ...]]:
        seen = set()
        out = []
        for start in range(len(self.mapping)):
            if start in seen:
                continue
            cycle = [start]
            seen.add(start)
            nxt = self.mapping[start]
            while nxt != start:
                cycle.append(nxt)
                seen.add(nxt)
                nxt = self.mapping[nxt]
            out.append(tuple(cycle))
        return out

    def as_names(self) -> Dict[str, str]:
        return {self.vertex_names[i]: self.vertex_names[j] for i, j in enumerate(self.mapping)}

    def __str__(self) -> str:
        return "".join("(" + " ".join(self.vertex_names[i] for i in c) + ")" for c in self.cycles())


# ------------------------------------------------------------------ #
# Socles des projectifs indécomposables
# ------------------------------------------------------------------ #


def _simple_socle_targets(a: Algebra, socle_space: Subspace, right: bool) -> Optional[List[int]]:
    """
    Pour chaque sommet i, l'unique sommet j tel que le socle de e_iA (ou de Ae_i)
    soit concentré en j avec la dimension d'un simple ; None sinon.
    """
    targets: List[int] = []
    for i in range(a.n_vertices):
        found = []
        for j in range(a.n_vertices):
            s, t = (i, j) if right else (j, i)
            if not a.block(s, t):
                continue
            d = a.block_subspace(socle_space, s, t).dim
            if d:
                found.append((j, d))
        if len(found) != 1:
            logger.debug("Socle non simple au sommet %s (%d composantes).", a.vertex_names[i], len(found))
            return None
        j, d = found[0]
        if d != a.residue_dim(j):
            logger.debug("Socle au sommet %s de dimension %d : non simple.", a.vertex_names[i], d)
            return None
        targets.append(j)
    return targets


def is_self_injective(a: Algebra) -> Optional[NakayamaPermutation]:
    """
    Critère de Nakayama : les socles de e_iA et de Ae_i sont simples, les deux
    affectations sont des bijections inverses l'une de l'autre.
    """
    right = _simple_socle_targets(a, right_socle_space(a), right=True)
    if right is None or len(set(right)) != len(right):
        return None
    left = _simple_socle_targets(a, left_socle_space(a), right=False)
    if left is None or len(set(left)) != len(left):
        return None
    if any(left[right[i]] != i for i in range(a.n_vertices)):
        logger.debug("Affectations de socles à gauche et à droite incompatibles.")
        return None
    return NakayamaPermutation(tuple(right), tuple(a.vertex_names))


# ------------------------------------------------------------------ #
# Invariants
# ------------------------------------------------------------------ #


def center(a: Algebra) -> Subspace:
    """{z | z·b = b·z pour tout vecteur de base b}."""
    if a.dim == 0:
        return Subspace.zero(a.field, 0)
    stacked: Optional[Matrix] = None
    for k in range(a.dim):
        b = a.basis_vector(k)
        block = a.right_multiplication(b) - a.left_multiplication(b)
        stacked = block if stacked is None else stacked.hstack(block)
    return a.span(stacked.left_kernel_basis())


def cartan_matrix(a: Algebra) -> Tuple[Tuple[int, ...], ...]:
    """C[i][j] = dim e_i A e_j."""
    n = a.n_vertices
    return tuple(tuple(len(a.block(i, j)) for j in range(n)) for i in range(n))


def radical_layers(a: Algebra) -> Tuple[int, ...]:
    """Dimensions de rad^k(A) pour k = 0, 1, ... jusqu'à 0 inclus."""
    dims = []
    for k in range(a.loewy_length + 1):
        dims.append(a.radical_power(k).dim)
    return tuple(dims)


def corner(a: Algebra, vertices: Sequence[int]) -> Algebra:
    """Algèbre eAe pour e = somme des e_v, v dans `vertices`."""
    keep = sorted(set(vertices))
    renumber = {old: new for new, old in enumerate(keep)}
    indices = [k for k, (s, t) in enumerate(a.peirce) if s in renumber and t in renumber]
    position = {k: i for i, k in enumerate(indices)}

    def restrict(v):
        return tuple(v[k] for k in indices)

    def product(i: int, j: int):
        return restrict(a.basis_product(indices[i], indices[j]))

    hint = tuple(r for r in (restrict(v) for v in a.radical.basis) if any(r))
    return build_algebra(
        a.field,
        [a.labels[k] for k in indices],
        [(renumber[a.peirce[k][0]], renumber[a.peirce[k][1]]) for k in indices],
        product,
        [position[a.idempotents[v]] for v in keep],
        [a.vertex_names[v] for v in keep],
        radical_hint=hint,
        provenance=f"coin sur {', '.join(a.vertex_names[v] for v in keep)}",
    )


def _uniserial_layers(a: Algebra, right: bool) -> bool:
    for i in range(a.n_vertices):
        e = a.idempotent(i)
        for k in range(a.loewy_length):
            upper = a.radical_power(k)
            lower = a.radical_power(k + 1)
            if right:
                u = a.span([a.mul(e, v) for v in upper.basis])
                w = a.span([a.mul(e, v) for v in lower.basis])
            else:
                u = a.span([a.mul(v, e) for v in upper.basis])
                w = a.span([a.mul(v, e) for v in lower.basis])
            layer = u.dim - w.dim
            if layer == 0:
                break
            columns = [
                j for j in range(a.n_vertices)
                if (a.block_subspace(u, *((i, j) if right else (j, i))).dim
                    - a.block_subspace(w, *((i, j) if right else (j, i))).dim)
            ]
            if len(columns) != 1 or layer != a.residue_dim(columns[0]):
                return False
    return True


def is_nakayama(a: Algebra) -> bool:
    """Tous les projectifs indécomposables à droite et à gauche sont unisériels."""
    return _uniserial_layers(a, right=True) and _uniserial_layers(a, right=False)


def verify_primitive_idempotents(a: Algebra) -> None:
    """
    Vérifie que les idempotents distingués sont orthogonaux et primitifs.

    Un coin e_v A e_v de résidu de dimension 1 est local de résidu K. Pour un
    résidu plus grand, un vecteur de base du résidu dont le polynôme minimal
    se scinde exhibe un idempotent non trivial (PrimitiveIdempotentError) ;
    sinon le coin est refusé comme non déployé (NonSplitResidueError).
    Le test est déterministe.
    """
    errors: List[str] = []
    for i in range(a.n_vertices):
        for j in range(a.n_vertices):
            p = a.mul(a.idempotent(i), a.idempotent(j))
            expected = a.idempotent(i) if i == j else a.zero()
            if p != expected:
                errors.append(f"e_{a.vertex_names[i]}·e_{a.vertex_names[j]} incorrect")
    wide = False
    for v, d in enumerate(a.residue_dims):
        if d == 1:
            continue
        c = corner(a, [v])
        residue = quotient(c, Ideal(c, c.radical), check_idempotents=False).target
        rng = random.Random(0)
        if any(
            len(split_semisimple_element(residue.right_multiplication(residue.basis_vector(k)), rng)) > 1
            for k in range(residue.dim)
        ):
            errors.append(f"coin du sommet {a.vertex_names[v]} non local : e_{a.vertex_names[v]} n'est pas primitif")
        else:
            wide = True
    if errors:
        raise PrimitiveIdempotentError(" / ".join(errors))
    if wide:
        a.require_split_residues()
    logger.debug("Idempotents primitifs vérifiés (%s).", a.provenance)
