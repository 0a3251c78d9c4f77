# domain/algebra/presentation.py

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

from domain.algebra.algebra import Algebra, build_algebra
from domain.linalg.field import FieldSpec, Scalar
from domain.linalg.matrix import Vector
from domain.linalg.subspace import Subspace

logger = logging.getLogger(__name__)

DEFAULT_LENGTH_CAP = 64


class PresentationError(ValueError):
    """
    Exception fonctionnelle : présentation de carquois invalide
    (sommet inconnu, flèche dupliquée, relation mêlant des extrémités).
    """


class NotAdmissibleError(PresentationError):
    """
    Exception fonctionnelle : les relations n'engendrent pas un idéal
    admissible (l'algèbre serait de dimension infinie).
    """


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


# Un chemin est (sommet de départ, noms de flèches) ; le chemin trivial a () comme flèches.
Path = Tuple[str, Tuple[str, ...]]
Term = Tuple[Scalar, Tuple[str, ...]]


@dataclass(frozen=True)
class QuiverPresentation:
    """
    Carquois lié (Q, R) sur un corps exact.

    Les relations sont des combinaisons formelles de chemins de longueur ≥ 2
    partageant la même source et le même but ; p*q parcourt p puis q.
    """

    field: FieldSpec
    vertices: Tuple[str, ...]
    arrows: Tuple[Arrow, ...]
    relations: Tuple[Tuple[Term, ...], ...] = ()
    name: str = "algèbre"

    def arrow(self, name: str) -> Arrow:
        for a in self.arrows:
            if a.name == name:
                return a
        raise PresentationError(f"flèche inconnue: {name!r}")

    def path_endpoints(self, arrows: Sequence[str]) -> Tuple[str, str]:
        first = self.arrow(arrows[0])
        current = first.target
        for name in arrows[1:]:
            nxt = self.arrow(name)
            if nxt.source != current:
                raise PresentationError(
                    f"chemin non composable: {'*'.join(arrows)} ({name} part de {nxt.source}, attendu {current})"
                )
            current = nxt.target
        return first.source, current

    def validate(self) -> None:
        errors: List[str] = []
        if not self.vertices:
            errors.append("aucun sommet déclaré")
        if len(set(self.vertices)) != len(self.vertices):
            errors.append("sommets dupliqués")
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            errors.append("flèches dupliquées")
        for a in self.arrows:
            if a.source not in self.vertices or a.target not in self.vertices:
                errors.append(f"flèche {a.name}: extrémité non déclarée ({a.source} -> {a.target})")
        if errors:
            raise PresentationError(" / ".join(errors))
        for k, relation in enumerate(self.relations, start=1):
            endpoints = set()
            for _, path in relation:
                if len(path) < 2:
                    errors.append(f"relation {k}: chemin {'*'.join(path)} de longueur < 2")
                    continue
                try:
                    endpoints.add(self.path_endpoints(path))
                except PresentationError as exc:
                    errors.append(f"relation {k}: {exc}")
            if len(endpoints) > 1:
                errors.append(f"relation {k}: termes d'extrémités différentes {sorted(endpoints)}")
        if errors:
            raise PresentationError(" / ".join(errors))


# ------------------------------------------------------------------ #
# Construction de KQ/R
# ------------------------------------------------------------------ #


def _vertex_label(name: str) -> str:
    return f"e{name}" if name.isdigit() else f"e_{name}"


def path_label(path: Path) -> str:
    start, arrows = path
    return "*".join(arrows) if arrows else _vertex_label(start)


class _PathSpace:
    """Chemins de longueur ≤ N indexés de façon stable."""

    def __init__(self, presentation: QuiverPresentation, max_length: int) -> None:
        self.presentation = presentation
        by_length: List[List[Path]] = [[(v, ()) for v in presentation.vertices]]
        outgoing: Dict[str, List[Arrow]] = {v: [] for v in presentation.vertices}
        for a in presentation.arrows:
            outgoing[a.source].append(a)
        self.targets: Dict[Path, str] = {(v, ()): v for v in presentation.vertices}
        for _ in range(max_length):
            layer: List[Path] = []
            for path in by_length[-1]:
                for a in outgoing[self.targets[path]]:
                    new = (path[0], path[1] + (a.name,))
                    self.targets[new] = a.target
                    layer.append(new)
            by_length.append(layer)
        self.by_length = by_length
        paths = [p for layer in by_length for p in layer]
        # colonnes : longueur décroissante puis nom décroissant, les plus petits chemins restent en base
        paths.sort(key=lambda p: (len(p[1]), path_label(p)), reverse=True)
        self.paths = paths
        self.index = {p: k for k, p in enumerate(paths)}

    def paths_from(self, vertex: str, max_len: int) -> List[Path]:
        return [p for layer in self.by_length[: max_len + 1] for p in layer if p[0] == vertex]

    def paths_to(self, vertex: str, max_len: int) -> List[Path]:
        return [p for layer in self.by_length[: max_len + 1] for p in layer if self.targets[p] == vertex]


def _relation_span(presentation: QuiverPresentation, space: _PathSpace, max_length: int) -> Subspace:
    """Span des u·ρ·v tronqués à la longueur N."""
    field = presentation.field
    n = len(space.paths)
    rows: List[Vector] = []
    zero = field.zero
    for relation in presentation.relations:
        source, target = presentation.path_endpoints(relation[0][1])
        shortest = min(len(p) for _, p in relation)
        for u in space.paths_to(source, max_length - shortest):
            for v in space.paths_from(target, max_length - shortest - len(u[1])):
                row = [zero] * n
                hit = False
                for coeff, path in relation:
                    arrows = u[1] + path + v[1]
                    if len(arrows) > max_length:
                        continue
                    k = space.index[(u[0], arrows)]
                    row[k] = row[k] + coeff
                    hit = True
                if hit and any(row):
                    rows.append(tuple(row))
    return Subspace.span(field, n, rows)


def build_bound_quiver_algebra(presentation: QuiverPresentation, length_cap: int = DEFAULT_LENGTH_CAP) -> Algebra:
    """
    Construit KQ/R : base = résidus de chemins, obtenue en augmentant N jusqu'à
    ce que tous les chemins de longueur N tombent dans l'image de R.
    """
    presentation.validate()
    field = presentation.field
    for max_length in range(2, length_cap + 1):
        space = _PathSpace(presentation, max_length)
        if not space.by_length[max_length]:
            relations = _relation_span(presentation, space, max_length)
            break
        relations = _relation_span(presentation, space, max_length)
        top = space.by_length[max_length]
        n = len(space.paths)
        if all(relations.contains(_unit(field, n, space.index[p])) for p in top):
            break
    else:
        raise NotAdmissibleError(
            f"idéal non admissible / dimension infinie : les chemins de longueur {length_cap} "
            "ne tombent pas dans l'idéal des relations"
        )

    pivot_rows = {c: row for c, row in zip(relations.pivots, relations.basis)}
    basis_paths = [p for p in space.paths if space.index[p] not in pivot_rows]
    arrow_order = {a.name: k for k, a in enumerate(presentation.arrows)}
    vertex_order = {v: k for k, v in enumerate(presentation.vertices)}
    basis_paths.sort(key=lambda p: (len(p[1]), vertex_order[p[0]], [arrow_order[x] for x in p[1]]))
    position = {p: k for k, p in enumerate(basis_paths)}
    dim = len(basis_paths)
    zero = field.zero

    def normal_form(path: Path) -> Vector:
        out = [zero] * dim
        if path in position:
            out[position[path]] = field.one
            return tuple(out)
        col = space.index.get(path)
        if col is None:
            # au-delà de N : nul dans KQ/R
            return tuple(out)
        row = pivot_rows[col]
        for c, x in enumerate(row):
            if x and c != col:
                out[position[space.paths[c]]] = -x
        return tuple(out)

    def target_of(path: Path) -> str:
        return space.targets[path]

    def product(i: int, j: int) -> Vector:
        p, q = basis_paths[i], basis_paths[j]
        if not p[1]:
            return normal_form(q)
        if not q[1]:
            return normal_form(p)
        arrows = p[1] + q[1]
        if len(arrows) > max_length:
            return tuple([zero] * dim)
        return normal_form((p[0], arrows))

    peirce = [(vertex_order[p[0]], vertex_order[target_of(p)]) for p in basis_paths]
    idempotents = [position[(v, ())] for v in presentation.vertices]
    arrow_indices = tuple(position[(a.source, (a.name,))] for a in presentation.arrows)
    hint = tuple(
        tuple(field.one if k == idx else zero for k in range(dim))
        for idx, p in enumerate(basis_paths) if p[1]
    )
    algebra = build_algebra(
        field,
        [path_label(p) for p in basis_paths],
        peirce,
        product,
        idempotents,
        presentation.vertices,
        radical_hint=hint,
        generator_hint=arrow_indices,
        presentation=presentation,
        provenance=f"carquois lié {presentation.name}",
    )
    logger.info(
        "Algèbre %s construite : dimension %d, %d sommets, longueur de troncature %d.",
        presentation.name, dim, len(presentation.vertices), max_length,
    )
    return algebra


def _unit(field: FieldSpec, n: int, k: int) -> Vector:
    zero, one = field.zero, field.one
    return tuple(one if i == k else zero for i in range(n))


def path_algebra(field: FieldSpec, vertices: Sequence[str], arrows: Sequence[Tuple[str, str, str]], name: str = "KQ") -> Algebra:
    """Algèbre des chemins d'un carquois sans cycle orienté (aucune relation)."""
    presentation = QuiverPresentation(
        field=field,
        vertices=tuple(vertices),
        arrows=tuple(Arrow(n, s, t) for n, s, t in arrows),
        relations=(),
        name=name,
    )
    return build_bound_quiver_algebra(presentation)


def presentation_from_terms(
    field: FieldSpec,
    vertices: Sequence[str],
    arrows: Sequence[Tuple[str, str, str]],
    relations: Sequence[Sequence[Tuple[object, Sequence[str]]]],
    name: str = "algèbre",
) -> QuiverPresentation:
    """Raccourci : relations données comme listes de (coefficient, chemin)."""
    return QuiverPresentation(
        field=field,
        vertices=tuple(vertices),
        arrows=tuple(Arrow(n, s, t) for n, s, t in arrows),
        relations=tuple(tuple((field.element(c), tuple(p)) for c, p in rel) for rel in relations),
        name=name,
    )

