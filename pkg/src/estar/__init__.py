"""Double-direction equivalence-preserving transformation semigroups and their regular part."""

from .core import (
    CapacityError,
    Partition,
    PreconditionError,
    Transformation,
    compose,
    image,
    kernel_data,
)
from .engine import Budget, SemigroupInstance, closure, enumerate_semigroup, greens_oracle

__all__ = [
    "Budget",
    "CapacityError",
    "Partition",
    "PreconditionError",
    "SemigroupInstance",
    "Transformation",
    "closure",
    "compose",
    "enumerate_semigroup",
    "greens_oracle",
    "image",
    "kernel_data",
]
