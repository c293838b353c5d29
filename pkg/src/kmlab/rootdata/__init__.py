"""Root data: generalized Cartan matrices, weights, Weyl groups and presets."""

from kmlab.rootdata.gcm import GCM, Weight, as_weight, require_dominant, validate_gcm
from kmlab.rootdata.presets import get_preset, list_presets, load_gcm_file, resolve_gcm
from kmlab.rootdata.weyl import (
    WeylElement,
    bruhat_leq,
    bruhat_leq_oracle,
    canonicalize,
    enumerate_elements,
    format_word,
    identity,
    interval,
    longest_element,
    min_coset_rep,
    minimal_upper_bounds,
    parse_word,
    reduced_words,
)

__all__ = [
    "GCM",
    "Weight",
    "validate_gcm",
    "as_weight",
    "require_dominant",
    "get_preset",
    "list_presets",
    "load_gcm_file",
    "resolve_gcm",
    "WeylElement",
    "bruhat_leq",
    "bruhat_leq_oracle",
    "canonicalize",
    "enumerate_elements",
    "format_word",
    "identity",
    "interval",
    "longest_element",
    "min_coset_rep",
    "minimal_upper_bounds",
    "parse_word",
    "reduced_words",
]
