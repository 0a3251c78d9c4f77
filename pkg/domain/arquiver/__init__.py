# domain/arquiver/__init__.py
"""Suites presque scindées et tricotage du carquois d'Auslander-Reiten."""

from .analysis import (
    SocleFactorReport,
    StableARQuiver,
    canonical_projective_meshes,
    mesh_symmetry_violations,
    socle_factor_check,
    stable_quiver,
    tau_orbits,
    to_dot,
    verify_almost_split,
)
from .irreducible import irreducible_dims
from .knitting import ARQuiver, ARVertex, KnittingLimitError, KnittingLimits, knit
from .sequences import AlmostSplitError, AlmostSplitSequence, ProjectiveEndError, almost_split_sequence

__all__ = [
    "ARQuiver",
    "ARVertex",
    "AlmostSplitError",
    "AlmostSplitSequence",
    "KnittingLimitError",
    "KnittingLimits",
    "ProjectiveEndError",
    "SocleFactorReport",
    "StableARQuiver",
    "almost_split_sequence",
    "canonical_projective_meshes",
    "irreducible_dims",
    "knit",
    "mesh_symmetry_violations",
    "socle_factor_check",
    "stable_quiver",
    "tau_orbits",
    "to_dot",
    "verify_almost_split",
]
