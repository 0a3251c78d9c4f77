# infrastructure/document_writer.py

from __future__ import annotations

import logging
import re
from typing import Dict, List, Optional, Sequence, Tuple

from domain.algebra.algebra import Algebra, ConsistencyError
from domain.algebra.presentation import Arrow, QuiverPresentation, build_bound_quiver_algebra
from domain.linalg.field import FieldSpec, Scalar
from domain.linalg.matrix import Matrix, Vector
from domain.linalg.subspace import EchelonBasis

logger = logging.getLogger(__name__)

_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_']*")
_VERTEX_BAD_CHARS = re.compile(r"[^A-Za-z0-9_.']")

# chemin = indices de générateurs, longueur ≥ 2
PathKey = Tuple[int, ...]


def _vertex_names(a: Algebra) -> List[str]:
    names: List[str] = []
    for k, raw in enumerate(a.vertex_names):
        name = _VERTEX_BAD_CHARS.sub("_", raw) or f"v{k}"
        while name in names:
            name += "'"
        names.append(name)
    return names


def _arrow_names(a: Algebra) -> List[str]:
    """Nom de flèche du générateur quand c'est un identifiant, sinon x<k>."""
    names: List[str] = []
    for k, g in enumerate(a.generators):
        label = g.label if _IDENT_RE.fullmatch(g.label) else f"x{k}"
        if label in names:
            label = f"x{k}"
        names.append(label)
    return names


def _paths(a: Algebra, max_length: int) -> List[PathKey]:
    gens = a.generators
    out: List[PathKey] = []
    layer: List[PathKey] = [(k,) for k in range(len(gens))]
    for _ in range(2, max_length + 1):
        layer = [p + (k,) for p in layer for k, g in enumerate(gens) if g.source == gens[p[-1]].target]
        out.extend(layer)
    return out


def _path_value(a: Algebra, path: PathKey, cache: Dict[PathKey, Vector]) -> Vector:
    if path in cache:
        return cache[path]
    gens = a.generators
    value = gens[path[0]].vector if len(path) == 1 else a.mul(_path_value(a, path[:-1], cache), gens[path[-1]].vector)
    cache[path] = value
    return value


def _split_by_endpoints(a: Algebra, paths: Sequence[PathKey], vectors: Sequence[Vector]) -> List[Vector]:
    """Composantes de chaque vecteur par couple (source, but) ; chacune reste dans le noyau."""
    gens = a.generators
    out: List[Vector] = []
    for v in vectors:
        parts: Dict[Tuple[int, int], List[Scalar]] = {}
        for k, c in enumerate(v):
            if c:
                key = (gens[paths[k][0]].source, gens[paths[k][-1]].target)
                parts.setdefault(key, [a.field.zero] * len(paths))[k] = c
        out.extend(tuple(part) for _, part in sorted(parts.items()))
    return out


def relation_basis(a: Algebra) -> List[Dict[PathKey, Scalar]]:
    """
    Relations minimales : noyau de l'application chemins -> A sur les chemins de
    longueur 2..L (L = longueur de Loewy), réduit modulo l'idéal engendré par
    les relations déjà retenues.
    """
    length = a.loewy_length
    if length < 2 or not a.generators:
        return []
    paths = _paths(a, length)
    if not paths:
        return []
    index = {p: k for k, p in enumerate(paths)}
    cache: Dict[PathKey, Vector] = {}
    values = Matrix(a.field, len(paths), a.dim, tuple(_path_value(a, p, cache) for p in paths))
    kernel = _split_by_endpoints(a, paths, values.left_kernel_basis())
    logger.debug("%d chemins de longueur 2..%d, noyau de dimension %d.", len(paths), length, len(kernel))

    def degree(v: Sequence[Scalar]) -> Tuple[int, int]:
        support = [len(paths[k]) for k, c in enumerate(v) if c]
        return (min(support), len(support))

    gens = a.generators
    implied = EchelonBasis(a.field, len(paths))
    chosen: List[Dict[PathKey, Scalar]] = []
    for v in sorted(kernel, key=degree):
        if implied.contains(v):
            continue
        chosen.append({paths[k]: c for k, c in enumerate(v) if c})
        pending = [tuple(v)]
        while pending:
            current = pending.pop()
            if not implied.add(current):
                continue
            terms = [(paths[k], c) for k, c in enumerate(current) if c]
            for g_index, g in enumerate(gens):
                right = [0] * len(paths)
                left = [0] * len(paths)
                for path, c in terms:
                    if gens[path[-1]].target == g.source and path + (g_index,) in index:
                        right[index[path + (g_index,)]] = c
                    if gens[path[0]].source == g.target and (g_index,) + path in index:
                        left[index[(g_index,) + path]] = c
                for candidate in (right, left):
                    vec = tuple(c if c else a.field.zero for c in candidate)
                    if any(vec):
                        pending.append(vec)
    logger.info("%d relation(s) retenue(s) pour la présentation.", len(chosen))
    return chosen


def _format_coefficient(field: FieldSpec, c: Scalar, first: bool) -> Tuple[str, str]:
    if field.is_prime_field:
        value, sign = int(c), "+"
    else:
        value, sign = (-c if c < 0 else c), ("-" if c < 0 else "+")
    text = "" if value == 1 else f"{value}*"
    if first:
        return ("-" if sign == "-" else ""), text
    return f" {sign} ", text


def format_relation(field: FieldSpec, terms: Sequence[Tuple[Scalar, Tuple[str, ...]]]) -> str:
    parts: List[str] = []
    for k, (c, path) in enumerate(terms):
        sign, coeff = _format_coefficient(field, c, k == 0)
        parts.append(f"{sign}{coeff}{'*'.join(path)}")
    return "".join(parts)


def presentation_of(a: Algebra, name: Optional[str] = None) -> QuiverPresentation:
    """Présentation KQ/R de `a` par son carquois ; les générateurs deviennent les flèches."""
    a.require_split_residues()
    vertices = _vertex_names(a)
    arrow_names = _arrow_names(a)
    arrows = tuple(
        Arrow(arrow_names[k], vertices[g.source], vertices[g.target]) for k, g in enumerate(a.generators)
    )
    relations = tuple(
        tuple((c, tuple(arrow_names[g] for g in path)) for path, c in sorted(rel.items(), key=lambda kv: (len(kv[0]), kv[0])))
        for rel in relation_basis(a)
    )
    return QuiverPresentation(a.field, tuple(vertices), arrows, relations, name=(name or a.provenance).replace("#", ""))


def write_document(a: Algebra, name: Optional[str] = None, verify: bool = True) -> str:
    """
    Document texte (même grammaire que l'entrée) présentant `a` par carquois et
    relations. Avec verify=True, la présentation est reconstruite et sa
    dimension comparée à celle de `a`.
    """
    presentation = presentation_of(a, name)
    lines = [
        f"# {a.describe()}",
        f"name {presentation.name}",
        f"field {a.field}",
        f"vertices: {' '.join(presentation.vertices)}",
    ]
    lines += [f"arrow {arrow.name}: {arrow.source} -> {arrow.target}" for arrow in presentation.arrows]
    lines += [f"relation {format_relation(a.field, terms)}" for terms in presentation.relations]

    if verify:
        rebuilt = build_bound_quiver_algebra(presentation)
        if rebuilt.dim != a.dim:
            logger.error("Présentation écrite de dimension %d au lieu de %d.", rebuilt.dim, a.dim)
            raise ConsistencyError(f"présentation incohérente : dimension {rebuilt.dim} au lieu de {a.dim}")
        logger.debug("Présentation vérifiée : dimension %d.", rebuilt.dim)
    return "\n".join(lines) + "\n"
