# domain/modules/__init__.py
"""Modules de dimension finie sur une algèbre de base : Hom, décomposition, τ."""

from .decomposition import (
    DecompositionError,
    Summand,
    decompose,
    decompose_summands,
    is_indecomposable,
    is_isomorphic,
)
from .endomorphisms import EndomorphismAlgebra, end_algebra
from .hom import hom_basis, hom_dim
from .homology import (
    Presentation,
    ProjectiveCover,
    TiltingReport,
    ext1_dim,
    id_le_1,
    injective_envelope,
    is_injective_module,
    is_projective_module,
    is_tilting,
    minimal_presentation,
    pd_le_1,
    projective_cover,
    stable_hom_dim_mod_inj,
    stable_hom_dim_mod_proj,
    tau,
    tau_inverse,
    transpose,
)
from .module import (
    Module,
    ModuleRelationError,
    Morphism,
    NotStableError,
    direct_sum,
    dual,
    injective,
    module_annihilator,
    projective,
    simple,
)
from .trace import dual_trace_ideal, trace_ideal

__all__ = [
    "DecompositionError",
    "EndomorphismAlgebra",
    "Module",
    "ModuleRelationError",
    "Morphism",
    "NotStableError",
    "Presentation",
    "ProjectiveCover",
    "Summand",
    "TiltingReport",
    "decompose",
    "decompose_summands",
    "direct_sum",
    "dual",
    "dual_trace_ideal",
    "end_algebra",
    "ext1_dim",
    "hom_basis",
    "hom_dim",
    "id_le_1",
    "injective",
    "injective_envelope",
    "is_indecomposable",
    "is_injective_module",
    "is_isomorphic",
    "is_projective_module",
    "is_tilting",
    "minimal_presentation",
    "module_annihilator",
    "pd_le_1",
    "projective",
    "projective_cover",
    "simple",
    "stable_hom_dim_mod_inj",
    "stable_hom_dim_mod_proj",
    "tau",
    "tau_inverse",
    "trace_ideal",
    "transpose",
]
