# domain/constructions/twist.py

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Any, Dict, Iterator, List, Optional

from domain.algebra.algebra import Algebra
from domain.algebra.quiver import quiver_isomorphisms, valued_quiver
from domain.constructions.automorphism import AlgebraAutomorphism, AutomorphismError
from domain.constructions.isomorphism import IsoBudget, IsoSearchResult, algebra_isomorphism
from domain.constructions.orbit import twisted_trivial_extension
from domain.linalg.matrix import Vector, vec_scale
from domain.status import Verdict

logger = logging.getLogger(__name__)

DEFAULT_TWIST_CANDIDATES = 64


@dataclass
class TwistWitness:
    sigma: AlgebraAutomorphism
    algebra: Algebra
    isomorphism: IsoSearchResult

    def to_dict(self) -> Dict[str, Any]:
        return {"sigma": self.sigma.to_dict(), "isomorphism": self.isomorphism.to_dict()}


def quiver_automorphisms(b: Algebra) -> Iterator[AlgebraAutomorphism]:
    """
    Automorphismes de B induits par une symétrie du carquois valué : chaque
    générateur est envoyé sur ±h, h un générateur du bloc image. L'identité
    vient en premier.
    """
    q = valued_quiver(b)
    identity = tuple(range(b.n_vertices))
    perms = sorted(
        (tuple(m[v] for v in range(b.n_vertices)) for m in quiver_isomorphisms(q, q)),
        key=lambda p: (p != identity, p),
    )
    gens = b.generators
    signs = b.field.small_values(2)
    count = 0
    for perm in perms:
        options: List[List[Vector]] = []
        for g in gens:
            block = [h for h in gens if (h.source, h.target) == (perm[g.source], perm[g.target])]
            options.append([vec_scale(c, h.vector) for h in block for c in signs])
        for combo in itertools.product(*options):
            try:
                sigma = AlgebraAutomorphism.from_generator_images(
                    b, dict(enumerate(perm)), dict(enumerate(combo)), name=f"sigma{count}",
                )
            except AutomorphismError:
                continue
            count += 1
            yield sigma


def find_twist_witness(
    b: Algebra,
    target: Algebra,
    budget: Optional[IsoBudget] = None,
    max_candidates: int = DEFAULT_TWIST_CANDIDATES,
) -> Optional[TwistWitness]:
    """Cherche σ avec T_σ(B) ≅ target parmi les automorphismes de carquois de B."""
    if target.dim != 2 * b.dim:
        logger.info("Pas de torsion possible : dim cible %d ≠ 2·%d.", target.dim, b.dim)
        return None
    for k, sigma in enumerate(quiver_automorphisms(b)):
        if k >= max_candidates:
            logger.warning("Recherche de torsion arrêtée après %d candidats.", max_candidates)
            break
        twisted = twisted_trivial_extension(b, sigma)
        result = algebra_isomorphism(twisted, target, budget)
        if result.verdict == Verdict.YES:
            logger.info("Torsion trouvée : %s.", sigma.to_dict()["vertices"])
            return TwistWitness(sigma, twisted, result)
    return None
