# domain/slices/__init__.py
"""Sections stables de Γ_A : axiomes, classification, constructions explicites."""

from .enumeration import (
    SliceEnumeration,
    delta_p_slice,
    enumerate_stable_slices,
    nakayama_slice,
    tau_delta_p,
)
from .slice import (
    Slice,
    SliceCheck,
    SliceHypothesisError,
    SelectorError,
    SliceReport,
    classify_slice,
    classify_slices,
    find_vertex,
    is_hereditary_algebra,
    is_stable_slice,
    radical_vertices,
    select_slice,
    select_vertex,
    slice_end_algebra,
    slice_module,
    split_selectors,
)

__all__ = [
    "SelectorError",
    "Slice",
    "SliceCheck",
    "SliceEnumeration",
    "SliceHypothesisError",
    "SliceReport",
    "classify_slice",
    "classify_slices",
    "delta_p_slice",
    "enumerate_stable_slices",
    "find_vertex",
    "is_hereditary_algebra",
    "is_stable_slice",
    "nakayama_slice",
    "radical_vertices",
    "select_slice",
    "select_vertex",
    "slice_end_algebra",
    "slice_module",
    "split_selectors",
    "tau_delta_p",
]
