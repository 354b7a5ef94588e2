"""DatalogMTL reasoning with stable-model negation over the integers."""

from ._temporalis import (
    Dataset,
    GuardError,
    InputError,
    Program,
    entails,
    has_stable_model,
    normalize,
    oracle_stable_models,
    parse_dataset,
    parse_program,
)

__all__ = [
    "Dataset",
    "GuardError",
    "InputError",
    "Program",
    "entails",
    "has_stable_model",
    "normalize",
    "oracle_stable_models",
    "parse_dataset",
    "parse_program",
]
