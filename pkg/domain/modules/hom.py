# domain/modules/hom.py

from __future__ import annotations

import logging
from typing import List, Optional, Sequence

from domain.algebra.algebra import build_algebra
from domain.linalg.field import Scalar
from domain.linalg.matrix import Matrix, matrix_from_vectors
from domain.linalg.subspace import Subspace
from domain.modules.module import Module, Morphism

logger = logging.getLogger(__name__)


def _variable_offsets(x: Module, y: Module) -> List[int]:
    out, acc = [], 0
    for dx, dy in zip(x.dims, y.dims):
        out.append(acc)
        acc += dx * dy
    out.append(acc)
    return out


def morphism_from_vector(x: Module, y: Module, coords: Sequence[Scalar]) -> Morphism:
    """Reconstruit un morphisme depuis ses coordonnées aplaties (sommet par sommet)."""
    offsets = _variable_offsets(x, y)
    maps = []
    for v, (dx, dy) in enumerate(zip(x.dims, y.dims)):
        o = offsets[v]
        rows = tuple(tuple(coords[o + p * dy + q] for q in range(dy)) for p in range(dx))
        maps.append(Matrix(x.field, dx, dy, rows))
    return Morphism(x, y, tuple(maps))


def hom_basis(x: Module, y: Module) -> List[Morphism]:
    """
    Base de Hom_A(X, Y) : noyau du système X_g·F_t = F_s·Y_g sur les
    inconnues F_v, un seul système linéaire.
    """
    if x.algebra is not y.algebra:
        raise ValueError("Hom entre modules sur des algèbres différentes")
    field = x.field
    offsets = _variable_offsets(x, y)
    n_vars = offsets[-1]
    if n_vars == 0:
        return []
    zero = field.zero
    equations = []
    for gi, g in enumerate(x.algebra.generators):
        s, t = g.source, g.target
        xg, yg = x.blocks[gi].entries, y.blocks[gi].entries
        dys, dyt = y.dims[s], y.dims[t]
        for p in range(x.dims[s]):
            for q in range(dyt):
                row = [zero] * n_vars
                for r in range(x.dims[t]):
                    c = xg[p][r]
                    if c:
                        k = offsets[t] + r * dyt + q
                        row[k] = row[k] + c
                for r in range(dys):
                    c = yg[r][q]
                    if c:
                        k = offsets[s] + p * dys + r
                        row[k] = row[k] - c
                if any(row):
                    equations.append(tuple(row))
    if equations:
        kernel = matrix_from_vectors(field, equations, n_vars).kernel_basis()
    else:
        kernel = [tuple(field.one if i == j else zero for i in range(n_vars)) for j in range(n_vars)]
    logger.debug("Hom(%s, %s) : %d inconnues, dimension %d.", x.describe(), y.describe(), n_vars, len(kernel))
    return [morphism_from_vector(x, y, k) for k in kernel]


def hom_dim(x: Module, y: Module) -> int:
    return len(hom_basis(x, y))


def span_dimension(morphisms: Sequence[Morphism], ambient: int) -> int:
    """Dimension de l'espace engendré par des morphismes de même source et but."""
    if not morphisms:
        return 0
    return Subspace.span(morphisms[0].source.field, ambient, [f.flatten() for f in morphisms]).dim


def hom_ambient(x: Module, y: Module) -> int:
    return sum(dx * dy for dx, dy in zip(x.dims, y.dims))


def lift_along(f: Morphism, epi: Morphism) -> Optional[Morphism]:
    """g : X -> Y avec g puis epi = f (f : X -> Z, epi : Y -> Z), ou None."""
    basis = hom_basis(f.source, epi.source)
    if not basis:
        return Morphism.zero(f.source, epi.source) if f.is_zero() else None
    images = matrix_from_vectors(f.source.field, [g.then(epi).flatten() for g in basis], len(f.flatten()))
    coords = images.solve_left(f.flatten())
    if coords is None:
        return None
    return combine(basis, coords)


def combine(basis: Sequence[Morphism], coords: Sequence[Scalar]) -> Morphism:
    """Combinaison linéaire non vide de morphismes de même source et but."""
    acc = Morphism.zero(basis[0].source, basis[0].target)
    for c, g in zip(coords, basis):
        if c:
            acc = acc + g.scale(c)
    return acc


class CoordinateSystem:
    """
    Coordonnées dans une famille libre de vecteurs, via les colonnes pivots
    (une seule inversion pour toutes les requêtes).
    """

    def __init__(self, field, vectors: Sequence[Sequence[Scalar]], ambient: int) -> None:
        self.field = field
        self.size = len(vectors)
        self.ambient = ambient
        self.vectors = [tuple(v) for v in vectors]
        if not vectors:
            self.pivots: List[int] = []
            self.inverse = None
            return
        basis = matrix_from_vectors(field, vectors, ambient)
        _, pivots = basis.rref()
        if len(pivots) != len(vectors):
            raise ValueError("famille liée : coordonnées non définies")
        self.pivots = pivots
        self.inverse = basis.submatrix(range(len(vectors)), pivots).inverse()

    def coordinates(self, v: Sequence[Scalar]):
        if not self.size:
            return ()
        return self.inverse.left_apply(tuple(v[c] for c in self.pivots))

    def checked_coordinates(self, v: Sequence[Scalar]):
        """Coordonnées, None si v n'est pas dans le span."""
        coords = self.coordinates(v)
        if not self.size:
            return coords if not any(v) else None
        rebuilt = [self.field.zero] * self.ambient
        for c, vec in zip(coords, self.vectors):
            if c:
                rebuilt = [r + c * x for r, x in zip(rebuilt, vec)]
        return coords if tuple(rebuilt) == tuple(v) else None


def endomorphism_ring(m: Module, basis: Sequence[Morphism]):
    """
    Algèbre End(M) à un seul sommet (identité en tête), produit f·g = f∘g.
    Sert au test de localité.
    """
    field = m.field
    ambient = hom_ambient(m, m)
    identity = Morphism.identity(m)
    start = Subspace.span(field, ambient, [identity.flatten()])
    extra = start.extend_with([f.flatten() for f in basis])
    elements = [identity] + [morphism_from_vector(m, m, v) for v in extra]
    coords = CoordinateSystem(field, [f.flatten() for f in elements], ambient)

    def product(i: int, j: int):
        return coords.coordinates(elements[j].then(elements[i]).flatten())

    algebra = build_algebra(
        field,
        ["id"] + [f"f{k}" for k in range(1, len(elements))],
        [(0, 0)] * len(elements),
        product,
        [0],
        ["0"],
        provenance=f"End({m.describe()})",
    )
    return algebra, elements


def radical_endomorphisms(m: Module) -> List[Morphism]:
    """Base de rad End(M) (M indécomposable : End(M) local)."""
    basis = hom_basis(m, m)
    if not basis:
        return []
    ring, elements = endomorphism_ring(m, basis)
    return [combine(elements, v) for v in ring.radical.basis]
