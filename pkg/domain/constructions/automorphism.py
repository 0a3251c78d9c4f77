# domain/constructions/automorphism.py

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

from domain.algebra.algebra import Algebra
from domain.linalg.field import Scalar
from domain.linalg.matrix import Matrix, Vector, matrix_from_vectors, vec_add, vec_scale

logger = logging.getLogger(__name__)


class AutomorphismError(ValueError):
    """
    Exception fonctionnelle : la matrice fournie n'est pas un automorphisme
    d'algèbre (non inversible, non multiplicative, unité non conservée ou
    idempotents distingués non permutés).
    """


@dataclass(frozen=True, eq=False)
class AlgebraAutomorphism:
    """
    Automorphisme σ de B donné par sa matrice : la ligne k est σ(b_k),
    σ(x) = x·matrix.
    """

    algebra: Algebra
    matrix: Matrix
    name: str = "sigma"

    def __post_init__(self) -> None:
        self.validate()

    def __call__(self, x: Sequence[Scalar]) -> Vector:
        return self.matrix.left_apply(x)

    def image(self, k: int) -> Vector:
        return self.matrix.row(k)

    # ------------------------------------------------------------------ #
    # Validation
    # ------------------------------------------------------------------ #

    def validate(self) -> None:
        b = self.algebra
        errors: List[str] = []
        if self.matrix.shape != (b.dim, b.dim):
            raise AutomorphismError(f"matrice {self.matrix.rows}x{self.matrix.cols} pour dim B = {b.dim}")
        if not self.matrix.is_invertible():
            errors.append("matrice non inversible")
        if self(b.unit()) != b.unit():
            errors.append("σ(1) ≠ 1")
        if self._permutation() is None:
            errors.append("les idempotents distingués ne sont pas permutés")
        if errors:
            raise AutomorphismError(" / ".join(errors))
        for i in range(b.dim):
            for j in range(b.dim):
                if b.peirce[i][1] != b.peirce[j][0]:
                    continue
                if self(b.basis_product(i, j)) != b.mul(self.image(i), self.image(j)):
                    raise AutomorphismError(
                        f"σ non multiplicatif sur {b.labels[i]} * {b.labels[j]}"
                    )

    def _permutation(self) -> Optional[Tuple[int, ...]]:
        b = self.algebra
        images: List[int] = []
        for v in range(b.n_vertices):
            image = self.image(b.idempotents[v])
            target = next((w for w in range(b.n_vertices) if b.idempotent(w) == image), None)
            if target is None:
                return None
            images.append(target)
        if len(set(images)) != len(images):
            return None
        return tuple(images)

    @cached_property
    def vertex_permutation(self) -> Tuple[int, ...]:
        """π avec σ(e_v) = e_π(v)."""
        permutation = self._permutation()
        if permutation is None:
            raise AutomorphismError("les idempotents distingués ne sont pas permutés")
        return permutation

    @property
    def is_identity(self) -> bool:
        return self.matrix == Matrix.identity(self.algebra.field, self.algebra.dim)

    def to_dict(self) -> Dict[str, Any]:
        names = self.algebra.vertex_names
        return {
            "name": self.name,
            "vertices": {names[v]: names[w] for v, w in enumerate(self.vertex_permutation)},
            "identity": self.is_identity,
        }

    # ------------------------------------------------------------------ #
    # Constructeurs
    # ------------------------------------------------------------------ #

    @classmethod
    def identity(cls, b: Algebra) -> "AlgebraAutomorphism":
        return cls(b, Matrix.identity(b.field, b.dim), "id")

    @classmethod
    def from_generator_images(
        cls,
        b: Algebra,
        vertex_map: Mapping[int, int],
        generator_images: Mapping[int, Sequence[Scalar]],
        name: str = "sigma",
    ) -> "AlgebraAutomorphism":
        """
        Prolonge multiplicativement des images de sommets et de générateurs
        (indices de `b.generators`) à toute la base, via la table de mots.
        Un générateur absent de `generator_images` est envoyé sur lui-même.
        """
        errors: List[str] = []
        if sorted(vertex_map) != list(range(b.n_vertices)):
            errors.append("image de chaque sommet requise")
        elif sorted(vertex_map.values()) != list(range(b.n_vertices)):
            errors.append("l'image des sommets n'est pas une permutation")
        gens = b.generators
        for gi in generator_images:
            if gi < 0 or gi >= len(gens):
                errors.append(f"générateur {gi} inconnu")
        if errors:
            raise AutomorphismError(" / ".join(errors))

        images: Dict[int, Vector] = {}
        for gi, g in enumerate(gens):
            vector = tuple(b.field.element(c) for c in generator_images.get(gi, g.vector))
            if len(vector) != b.dim:
                raise AutomorphismError(f"image de {g.label} de longueur {len(vector)}")
            images[gi] = vector

        table = b.word_table
        word_images: List[Vector] = []
        for start, path in table.words:
            value = b.idempotent(vertex_map[start])
            for gi in path:
                value = b.mul(value, images[gi])
            word_images.append(value)
        rows: List[Vector] = []
        for k in range(b.dim):
            row = b.zero()
            for w, c in table.expressions[k]:
                row = vec_add(row, vec_scale(c, word_images[w]))
            rows.append(row)
        sigma = cls(b, matrix_from_vectors(b.field, rows, b.dim), name)
        logger.debug("Automorphisme %s construit (permutation %s).", name, sigma.vertex_permutation)
        return sigma
