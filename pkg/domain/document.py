# domain/document.py

from __future__ import annotations

import logging
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, Field, field_validator, model_validator

from domain.algebra.algebra import Algebra
from domain.algebra.presentation import DEFAULT_LENGTH_CAP, Arrow, QuiverPresentation, build_bound_quiver_algebra
from domain.constructions.automorphism import AlgebraAutomorphism, AutomorphismError
from domain.linalg.field import FieldSpec, FieldSpecError
from domain.linalg.matrix import Vector, vec_add, vec_scale

logger = logging.getLogger(__name__)


class DocumentValidationError(ValueError):
    """
    Exception fonctionnelle : document syntaxiquement lisible mais incohérent
    (extrémités non déclarées, noms dupliqués, termes d'extrémités différentes).
    Porte la ligne de la déclaration fautive quand elle est connue.
    """

    def __init__(self, message: str, line: int = 0) -> None:
        super().__init__(message)
        self.line = line


class ArrowSpec(BaseModel):
    name: str
    source: str
    target: str
    line: int = 0


class TermSpec(BaseModel):
    """Terme `[coeff*] a*b*...` ; le coefficient est gardé en texte jusqu'au choix du corps."""

    coefficient: str = "1"
    path: List[str] = Field(min_length=1)


class RelationSpec(BaseModel):
    terms: List[TermSpec] = Field(min_length=1)
    line: int = 0


class AutomorphismSpec(BaseModel):
    name: str
    vertices: Dict[str, str] = Field(default_factory=dict)
    arrows: Dict[str, List[TermSpec]] = Field(default_factory=dict)
    line: int = 0


class SliceSpec(BaseModel):
    name: str
    selectors: List[str] = Field(min_length=1)
    line: int = 0


class InputDocument(BaseModel):
    """Présentation d'une algèbre de carquois lié, avec automorphismes et sections nommés."""

    name: str = "algèbre"
    field: str = "Q"
    vertices: List[str] = Field(min_length=1)
    arrows: List[ArrowSpec] = Field(default_factory=list)
    relations: List[RelationSpec] = Field(default_factory=list)
    automorphisms: List[AutomorphismSpec] = Field(default_factory=list)
    slices: List[SliceSpec] = Field(default_factory=list)

    @field_validator("field")
    @classmethod
    def _field_is_known(cls, value: str) -> str:
        try:
            FieldSpec.parse(value)
        except FieldSpecError as exc:
            raise DocumentValidationError(str(exc)) from exc
        return value.strip()

    @field_validator("vertices")
    @classmethod
    def _unique_vertices(cls, value: List[str]) -> List[str]:
        duplicates = sorted({v for v in value if value.count(v) > 1})
        if duplicates:
            raise DocumentValidationError(f"sommets dupliqués : {', '.join(duplicates)}")
        return value

    @model_validator(mode="after")
    def _check_structure(self) -> "InputDocument":
        declared = set(self.vertices)
        seen: Dict[str, ArrowSpec] = {}
        for arrow in self.arrows:
            if arrow.name in seen:
                raise DocumentValidationError(f"flèche {arrow.name} dupliquée", arrow.line)
            for end in (arrow.source, arrow.target):
                if end not in declared:
                    raise DocumentValidationError(f"flèche {arrow.name}: sommet {end} non déclaré", arrow.line)
            seen[arrow.name] = arrow

        for relation in self.relations:
            endpoints = {self._endpoints(term.path, relation.line) for term in relation.terms}
            if len(endpoints) > 1:
                raise DocumentValidationError(
                    "termes d'extrémités différentes : "
                    + ", ".join(f"{s}->{t}" for s, t in sorted(endpoints)),
                    relation.line,
                )
            if any(len(term.path) < 2 for term in relation.terms):
                raise DocumentValidationError("relation avec un chemin de longueur < 2", relation.line)

        names = set()
        for auto in self.automorphisms:
            if auto.name in names:
                raise DocumentValidationError(f"automorphisme {auto.name} dupliqué", auto.line)
            names.add(auto.name)
            self._check_automorphism(auto, seen)
        for spec in self.slices:
            if not spec.selectors:
                raise DocumentValidationError(f"section {spec.name} vide", spec.line)
        return self

    def _endpoints(self, path: List[str], line: int) -> Tuple[str, str]:
        arrows = {a.name: a for a in self.arrows}
        current: Optional[str] = None
        source: Optional[str] = None
        for name in path:
            arrow = arrows.get(name)
            if arrow is None:
                raise DocumentValidationError(f"flèche inconnue : {name}", line)
            if current is not None and arrow.source != current:
                raise DocumentValidationError(
                    f"chemin non composable {'*'.join(path)} ({name} part de {arrow.source}, attendu {current})",
                    line,
                )
            source = arrow.source if source is None else source
            current = arrow.target
        return source, current

    def _check_automorphism(self, auto: AutomorphismSpec, arrows: Dict[str, ArrowSpec]) -> None:
        vertex_map = {v: auto.vertices.get(v, v) for v in self.vertices}
        if sorted(vertex_map.values()) != sorted(self.vertices):
            raise DocumentValidationError(f"automorphisme {auto.name}: l'image des sommets n'est pas une permutation", auto.line)
        for name, terms in auto.arrows.items():
            arrow = arrows.get(name)
            if arrow is None:
                raise DocumentValidationError(f"automorphisme {auto.name}: flèche inconnue {name}", auto.line)
            expected = (vertex_map[arrow.source], vertex_map[arrow.target])
            for term in terms:
                if self._endpoints(term.path, auto.line) != expected:
                    raise DocumentValidationError(
                        f"automorphisme {auto.name}: image de {name} hors de e_{expected[0]} A e_{expected[1]}",
                        auto.line,
                    )

    # ------------------------------------------------------------------ #
    # Conversions
    # ------------------------------------------------------------------ #

    @property
    def field_spec(self) -> FieldSpec:
        return FieldSpec.parse(self.field)

    def to_presentation(self) -> QuiverPresentation:
        field = self.field_spec
        return QuiverPresentation(
            field=field,
            vertices=tuple(self.vertices),
            arrows=tuple(Arrow(a.name, a.source, a.target) for a in self.arrows),
            relations=tuple(
                tuple((field.parse_scalar(t.coefficient), tuple(t.path)) for t in r.terms)
                for r in self.relations
            ),
            name=self.name,
        )

    def build(self, length_cap: int = DEFAULT_LENGTH_CAP) -> Algebra:
        return build_bound_quiver_algebra(self.to_presentation(), length_cap)

    def automorphism_spec(self, name: str) -> AutomorphismSpec:
        for auto in self.automorphisms:
            if auto.name == name:
                return auto
        known = ", ".join(a.name for a in self.automorphisms) or "aucun"
        raise AutomorphismError(f"automorphisme {name!r} absent du document (déclarés : {known})")

    def slice_spec(self, name: str) -> SliceSpec:
        for spec in self.slices:
            if spec.name == name:
                return spec
        raise KeyError(name)

    def automorphism(self, name: str, algebra: Algebra) -> AlgebraAutomorphism:
        """Automorphisme nommé, prolongé à l'algèbre construite depuis ce document."""
        spec = self.automorphism_spec(name)
        field = algebra.field
        arrow_position = {a.name: k for k, a in enumerate(self.arrows)}
        gens = algebra.generators

        def path_value(path: List[str]) -> Vector:
            value = gens[arrow_position[path[0]]].vector
            for arrow in path[1:]:
                value = algebra.mul(value, gens[arrow_position[arrow]].vector)
            return value

        images: Dict[int, Vector] = {}
        for arrow, terms in spec.arrows.items():
            total = algebra.zero()
            for term in terms:
                total = vec_add(total, vec_scale(field.parse_scalar(term.coefficient), path_value(term.path)))
            images[arrow_position[arrow]] = total
        vertex_map = {
            k: algebra.vertex_index(spec.vertices.get(v, v)) for k, v in enumerate(algebra.vertex_names)
        }
        return AlgebraAutomorphism.from_generator_images(algebra, vertex_map, images, name=name)
