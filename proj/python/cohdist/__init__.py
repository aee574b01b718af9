"""Deterministic coherence distillation: majorization lattice, block structure,
distillation reports and strictly incoherent channel synthesis."""

from ._cohdist import (
    DEFAULT_DIM_CAP,
    DEFAULT_TOL,
    CohdistError,
    apply_channel,
    block_decompose,
    can_transform_to,
    candidates,
    comparison_matrix,
    distillation_channel,
    is_strictly_incoherent,
    join,
    majorizes,
    meet,
    n_max,
    pure_to_pure_channel,
    validate,
)

__all__ = [
    "DEFAULT_DIM_CAP",
    "DEFAULT_TOL",
    "CohdistError",
    "apply_channel",
    "block_decompose",
    "can_transform_to",
    "candidates",
    "comparison_matrix",
    "distillation_channel",
    "is_strictly_incoherent",
    "join",
    "majorizes",
    "meet",
    "n_max",
    "pure_to_pure_channel",
    "validate",
]
