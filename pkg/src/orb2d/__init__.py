"""Exact classification of finite-type 2-orbifold signatures.

Decide whether a 2-orbifold is good or bad, whether its orbifold
fundamental group is finite or infinite, which geometry it carries, and
exhibit a finite manifold orbifold-cover as a constructive certificate
of goodness.
"""
from .classify import Classification, Geometry, classify, is_bad_closed, theorem_check
from .cover import CoverWitness, manifold_cover_search, verify_witness
from .group import (
    AbelianInvariants,
    IntegerMatrix,
    Presentation,
    SmithForm,
    abelianization,
    group_order_if_finite,
    presentation_of_closed,
    relation_matrix,
    smith_normal_form,
)
from .reduce import (
    ReductionStep,
    ReductionTrace,
    end_cut,
    manifold_double,
    mirror_double,
    orientation_double,
    reduce_final,
    reduce_to_closed,
)
from .signature import (
    BoundaryCircle,
    PreconditionError,
    Signature,
    SignatureSyntaxError,
    SignatureValueError,
    format_signature,
    orbifold_euler,
    parse_signature,
    underlying_euler,
)

__all__ = [
    "AbelianInvariants",
    "BoundaryCircle",
    "Classification",
    "CoverWitness",
    "Geometry",
    "IntegerMatrix",
    "PreconditionError",
    "Presentation",
    "ReductionStep",
    "ReductionTrace",
    "Signature",
    "SignatureSyntaxError",
    "SignatureValueError",
    "SmithForm",
    "abelianization",
    "classify",
    "end_cut",
    "format_signature",
    "group_order_if_finite",
    "is_bad_closed",
    "manifold_cover_search",
    "manifold_double",
    "mirror_double",
    "orbifold_euler",
    "orientation_double",
    "parse_signature",
    "presentation_of_closed",
    "reduce_final",
    "reduce_to_closed",
    "relation_matrix",
    "smith_normal_form",
    "theorem_check",
    "underlying_euler",
    "verify_witness",
]

__version__ = "0.1.0"
