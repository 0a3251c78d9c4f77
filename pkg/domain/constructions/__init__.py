# domain/constructions/__init__.py
"""Extensions triviales, troncatures répétitives, équivalence socle et chaîne du théorème."""

from .automorphism import AlgebraAutomorphism, AutomorphismError
from .isomorphism import (
    IsoBudget,
    IsomorphismWitness,
    IsoSearchResult,
    SocleComparison,
    algebra_isomorphism,
    invariant_mismatch,
    socle_equivalent,
)
from .orbit import orbit_algebra, r_fold_trivial_extension, trivial_extension, twisted_trivial_extension
from .pipeline import StageResult, TheoremReport, theorem_pipeline
from .repetitive import RepetitiveTruncation, period_dimension, repetitive_truncation
from .twist import TwistWitness, find_twist_witness, quiver_automorphisms

__all__ = [
    "AlgebraAutomorphism",
    "AutomorphismError",
    "IsoBudget",
    "IsoSearchResult",
    "IsomorphismWitness",
    "RepetitiveTruncation",
    "SocleComparison",
    "StageResult",
    "TheoremReport",
    "TwistWitness",
    "algebra_isomorphism",
    "find_twist_witness",
    "invariant_mismatch",
    "orbit_algebra",
    "period_dimension",
    "quiver_automorphisms",
    "r_fold_trivial_extension",
    "repetitive_truncation",
    "socle_equivalent",
    "theorem_pipeline",
    "trivial_extension",
    "twisted_trivial_extension",
]
