# domain/modules/decomposition.py

from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from tenacity import (
    before_sleep_log,
    retry,
    retry_if_exception_type,
    stop_after_attempt,
    wait_none,
)

from domain.linalg.matrix import Matrix, matrix_from_vectors
from domain.linalg.spectral import split_semisimple_element
from domain.linalg.subspace import Subspace
from domain.modules.hom import endomorphism_ring, hom_basis
from domain.modules.module import Module, Morphism, direct_sum, socle_vector, submodule, top_vector

logger = logging.getLogger(__name__)

DEFAULT_SPLIT_ATTEMPTS = 5
RANDOM_CANDIDATES_PER_ATTEMPT = 8


class DecompositionError(RuntimeError):
    """
    Exception technique : aucun idempotent de scindage trouvé alors que
    End(M)/rad End(M) n'est pas K. `residue_dim` est la dimension de ce
    résidu : au-delà de 1 il peut aussi s'agir d'un corps gauche plus grand
    que K (M indécomposable non déployé), cas non pris en charge.
    """

    def __init__(self, message: str, residue_dim: Optional[int] = None) -> None:
        super().__init__(message)
        self.residue_dim = residue_dim


class SplitAttemptFailed(RuntimeError):
    """Tentative de scindage infructueuse (déclenche un nouvel essai)."""


@dataclass(frozen=True, eq=False)
class Summand:
    """Facteur direct avec inclusion dans M et projection depuis M."""

    module: Module
    inclusion: Morphism
    projection: Morphism


# ------------------------------------------------------------------ #
# Scindage par idempotents spectraux
# ------------------------------------------------------------------ #


def _pieces_from_projectors(m: Module, projectors: Sequence[Matrix]) -> List[Summand]:
    pieces = []
    for p in projectors:
        spaces, projections = [], []
        for v in range(len(m.dims)):
            rows = range(m.offsets[v], m.offsets[v] + m.dims[v])
            block = p.submatrix(rows, rows)
            space = Subspace.span(m.field, m.dims[v], block.entries)
            spaces.append(space)
            projections.append(matrix_from_vectors(m.field, [space.coordinates(r) for r in block.entries], space.dim))
        sub, inclusion = submodule(m, spaces)
        pieces.append(Summand(sub, inclusion, Morphism(m, sub, tuple(projections))))
    return pieces


def _try_split(m: Module, candidates: Sequence[Morphism], rng: random.Random) -> Optional[List[Summand]]:
    for f in candidates:
        projectors = split_semisimple_element(f.total_matrix(), rng)
        if len(projectors) > 1:
            return _pieces_from_projectors(m, projectors)
    return None


def _random_combination(basis: Sequence[Morphism], rng: random.Random) -> Morphism:
    field = basis[0].source.field
    acc = basis[0].scale(field.random_element(rng))
    for f in basis[1:]:
        acc = acc + f.scale(field.random_element(rng))
    return acc


def _residue_dim(m: Module, basis: Sequence[Morphism]) -> int:
    """dim End(M)/rad End(M) ; 1 exactement quand End(M) est local de résidu K."""
    ring, _ = endomorphism_ring(m, basis)
    codim = ring.dim - ring.radical.dim
    logger.debug("End(%s) : dimension %d, codimension du radical %d.", m.describe(), ring.dim, codim)
    return codim


def split_once(m: Module, attempts: int = DEFAULT_SPLIT_ATTEMPTS, seed: int = 0) -> Optional[List[Summand]]:
    """
    Scinde M en facteurs non triviaux, ou renvoie None si M est indécomposable.
    Les essais aléatoires sont rejoués par tenacity.
    """
    basis = hom_basis(m, m)
    if len(basis) <= 1:
        return None
    rng = random.Random(seed)
    pieces = _try_split(m, basis, rng)
    if pieces is not None:
        return pieces
    products = [f.then(g) for f in basis for g in basis]
    pieces = _try_split(m, products, rng)
    if pieces is not None:
        return pieces
    residue = _residue_dim(m, basis)
    if residue == 1:
        return None

    @retry(
        stop=stop_after_attempt(attempts),
        wait=wait_none(),
        retry=retry_if_exception_type(SplitAttemptFailed),
        before_sleep=before_sleep_log(logger, logging.WARNING),
        reraise=True,
    )
    def attempt() -> List[Summand]:
        candidates = [_random_combination(basis, rng) for _ in range(RANDOM_CANDIDATES_PER_ATTEMPT)]
        found = _try_split(m, candidates, rng)
        if found is None:
            raise SplitAttemptFailed(f"aucun idempotent trouvé pour {m.describe()}")
        return found

    try:
        return attempt()
    except SplitAttemptFailed as exc:
        logger.error("Décomposition impossible après %d tentatives : %s", attempts, exc)
        raise DecompositionError(
            f"End({m.describe()}) de résidu de dimension {residue} : aucun scindage trouvé en {attempts} tentatives",
            residue_dim=residue,
        ) from exc


def decompose_summands(m: Module, attempts: int = DEFAULT_SPLIT_ATTEMPTS, seed: int = 0) -> List[Summand]:
    """Décomposition complète en facteurs indécomposables (avec inclusions et projections)."""
    if m.dim == 0:
        return []
    stack = [Summand(m, Morphism.identity(m), Morphism.identity(m))]
    result: List[Summand] = []
    while stack:
        current = stack.pop()
        pieces = split_once(current.module, attempts, seed)
        if pieces is None:
            result.append(current)
            continue
        for piece in pieces:
            stack.append(Summand(
                piece.module,
                piece.inclusion.then(current.inclusion),
                current.projection.then(piece.projection),
            ))
    result.sort(key=lambda s: (s.module.dims, top_vector(s.module), socle_vector(s.module)))
    if sum(s.module.dim for s in result) != m.dim:
        raise DecompositionError("la somme des facteurs ne redonne pas la dimension de M")
    logger.debug("%s se décompose en %d facteurs.", m.describe(), len(result))
    return result


def is_indecomposable(m: Module, attempts: int = DEFAULT_SPLIT_ATTEMPTS, seed: int = 0) -> bool:
    return m.dim > 0 and split_once(m, attempts, seed) is None


def group_isoclasses(summands: Sequence[Summand]) -> List[List[Summand]]:
    """Regroupe des facteurs indécomposables par classe d'isomorphisme."""
    groups: List[List[Summand]] = []
    for s in summands:
        for group in groups:
            if is_isomorphic(group[0].module, s.module, indecomposable=True) is not None:
                group.append(s)
                break
        else:
            groups.append([s])
    return groups


def decompose(m: Module, attempts: int = DEFAULT_SPLIT_ATTEMPTS, seed: int = 0) -> List[Tuple[Module, int]]:
    """Facteurs indécomposables avec multiplicités."""
    groups = group_isoclasses(decompose_summands(m, attempts, seed))
    return [(g[0].module, len(g)) for g in groups]


# ------------------------------------------------------------------ #
# Isomorphismes
# ------------------------------------------------------------------ #


def fingerprint(m: Module) -> Tuple[Tuple[int, ...], Tuple[int, ...], Tuple[int, ...]]:
    return m.dims, top_vector(m), socle_vector(m)


def is_isomorphic(x: Module, y: Module, indecomposable: bool = False, seed: int = 0) -> Optional[Morphism]:
    """
    Isomorphisme X -> Y ou None.

    Pour X indécomposable le test est exact : X ≅ Y ssi un produit g_j∘f_i de
    vecteurs de base de Hom(X, Y) et Hom(Y, X) est inversible.
    """
    if x.algebra is not y.algebra or x.dims != y.dims:
        return None
    if x.dim == 0:
        return Morphism.zero(x, y)
    if fingerprint(x) != fingerprint(y):
        return None
    forward = hom_basis(x, y)
    if not forward:
        return None
    for f in forward:
        if f.is_invertible():
            return f
    backward = hom_basis(y, x)
    if not backward:
        return None
    if indecomposable:
        for f in forward:
            for g in backward:
                if f.then(g).is_invertible():
                    return f
        return None
    rng = random.Random(seed)
    for _ in range(RANDOM_CANDIDATES_PER_ATTEMPT):
        f = _random_combination(forward, rng)
        if f.is_invertible():
            return f
    return _iso_by_decomposition(x, y, seed)


def _iso_by_decomposition(x: Module, y: Module, seed: int) -> Optional[Morphism]:
    xs = decompose_summands(x, seed=seed)
    ys = list(decompose_summands(y, seed=seed))
    pairs = []
    for s in xs:
        for k, t in enumerate(ys):
            iso = is_isomorphic(s.module, t.module, indecomposable=True)
            if iso is not None:
                pairs.append((s, t, iso))
                ys.pop(k)
                break
        else:
            return None
    total = Morphism.zero(x, y)
    for s, t, iso in pairs:
        total = total + s.projection.then(iso).then(t.inclusion)
    return total if total.is_invertible() else None


def direct_sum_of(summands: Sequence[Summand]) -> Module:
    return direct_sum([s.module for s in summands])[0]
