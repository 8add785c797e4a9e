"""Exact linear algebra for finite-dimensional Hopf module algebras and their regularity."""

from .action import Action, RepresentedExtension, enveloping_hopf_algebroid, smash_product
from .algebra import Algebra, Element, is_regular, jacobson_radical
from .errors import (
    HopfRegError,
    NotSplitError,
    PreconditionError,
    ResourceError,
    TheoremViolation,
    UsageError,
    ValidationError,
)
from .exactla import Field, Subspace
from .hopf import HopfAlgebra, check_hopf_axioms, dual_hopf

__all__ = [
    "Action",
    "Algebra",
    "Element",
    "Field",
    "HopfAlgebra",
    "HopfRegError",
    "NotSplitError",
    "PreconditionError",
    "RepresentedExtension",
    "ResourceError",
    "Subspace",
    "TheoremViolation",
    "UsageError",
    "ValidationError",
    "check_hopf_axioms",
    "dual_hopf",
    "enveloping_hopf_algebroid",
    "is_regular",
    "jacobson_radical",
    "smash_product",
]
