# domain/algebra/__init__.py
"""Algèbres de dimension finie par constantes de structure."""

from .algebra import Algebra, ConsistencyError, Generator, NonSplitResidueError, build_algebra
from .bracket import BracketPreconditionError, a_bracket_i
from .ideals import (
    Ideal,
    ImproperIdealError,
    NotAnIdealError,
    QuotientMap,
    left_annihilator,
    quotient,
    radical,
    residual_identity,
    right_annihilator,
    socle,
)
from .presentation import (
    Arrow,
    NotAdmissibleError,
    PresentationError,
    QuiverPresentation,
    build_bound_quiver_algebra,
    path_algebra,
    presentation_from_terms,
)
from .properties import (
    NakayamaPermutation,
    PrimitiveIdempotentError,
    cartan_matrix,
    center,
    corner,
    is_nakayama,
    is_self_injective,
    radical_layers,
    verify_primitive_idempotents,
)
from .quiver import ValuedArrow, ValuedQuiver, is_acyclic, valued_quiver

__all__ = [
    "Algebra",
    "Arrow",
    "BracketPreconditionError",
    "ConsistencyError",
    "Generator",
    "Ideal",
    "ImproperIdealError",
    "NakayamaPermutation",
    "NonSplitResidueError",
    "NotAdmissibleError",
    "NotAnIdealError",
    "PresentationError",
    "PrimitiveIdempotentError",
    "QuiverPresentation",
    "QuotientMap",
    "ValuedArrow",
    "ValuedQuiver",
    "a_bracket_i",
    "build_algebra",
    "build_bound_quiver_algebra",
    "cartan_matrix",
    "center",
    "corner",
    "is_acyclic",
    "is_nakayama",
    "is_self_injective",
    "left_annihilator",
    "path_algebra",
    "presentation_from_terms",
    "quotient",
    "radical",
    "radical_layers",
    "residual_identity",
    "right_annihilator",
    "socle",
    "valued_quiver",
    "verify_primitive_idempotents",
]
