# domain/linalg/spectral.py

from __future__ import annotations

import logging
import random
from typing import List, Optional

from domain.linalg import polynomial as P
from domain.linalg.matrix import DimensionMismatchError, Matrix, unit_vector
from domain.linalg.subspace import Subspace

logger = logging.getLogger(__name__)


def _local_minimal_polynomial(m: Matrix, v) -> P.Poly:
    """Polynôme unitaire minimal de v sous l'action à droite v ↦ v·m."""
    field = m.field
    krylov = [tuple(v)]
    while True:
        nxt = m.left_apply(krylov[-1])
        space = Subspace.span(field, m.rows, krylov)
        if space.contains(nxt):
            # nxt = Σ c_k krylov[k]
            coeffs = Matrix(field, len(krylov), m.rows, tuple(krylov)).solve_left(nxt)
            return P.trim([-c for c in coeffs] + [field.one])
        krylov.append(nxt)
    return (field.one,)


def minimal_polynomial(m: Matrix) -> P.Poly:
    """Polynôme minimal unitaire : ppcm des polynômes minimaux locaux des vecteurs de base."""
    if not m.is_square:
        raise DimensionMismatchError("polynôme minimal d'une matrice non carrée")
    field = m.field
    result: P.Poly = (field.one,)
    covered = Subspace.zero(field, m.rows)
    for i in range(m.rows):
        e = unit_vector(field, m.rows, i)
        if covered.contains(e):
            continue
        local = _local_minimal_polynomial(m, e)
        g = P.gcd_poly(result, local, field)
        quot, _ = P.divmod_poly(P.mul(result, local, field), g, field)
        result = P.monic(quot)
        # l'espace cyclique de e est stable : ses vecteurs sont couverts
        orbit = [e]
        for _ in range(P.degree(local) - 1):
            orbit.append(m.left_apply(orbit[-1]))
        covered = covered + Subspace.span(field, m.rows, orbit)
    logger.debug("Polynôme minimal de degré %d pour une matrice %dx%d.", P.degree(result), m.rows, m.cols)
    return result


def split_semisimple_element(m: Matrix, rng: Optional[random.Random] = None) -> List[Matrix]:
    """
    Projecteurs spectraux de m sur les sous-espaces caractéristiques associés
    aux facteurs premiers entre eux de son polynôme minimal.

    Les projecteurs sont des polynômes en m : idempotents, orthogonaux deux à
    deux, de somme l'identité. Un seul projecteur (l'identité) signifie que m
    n'a qu'un facteur accessible.
    """
    if not m.is_square:
        raise DimensionMismatchError("décomposition spectrale d'une matrice non carrée")
    field = m.field
    n = m.rows
    if n == 0:
        return []
    f = minimal_polynomial(m)
    factors = P.coprime_factors(f, field, rng)
    if len(factors) <= 1:
        return [Matrix.identity(field, n)]

    projectors: List[Matrix] = []
    for h in factors:
        # q_h = plus grande puissance de h divisant f
        q_h: P.Poly = (field.one,)
        rest = f
        while True:
            quo, rem = P.divmod_poly(rest, h, field)
            if rem:
                break
            rest = quo
            q_h = P.mul(q_h, h, field)
        cofactor, _ = P.divmod_poly(f, q_h, field)
        inverse = P.inverse_mod(cofactor, q_h, field)
        idem = P.mod(P.mul(cofactor, inverse, field), f, field)
        projectors.append(P.evaluate_matrix(idem, m))
    logger.debug("Élément scindé en %d projecteurs spectraux.", len(projectors))
    return projectors
