"""Good/bad and finite/infinite classification of 2-orbifold signatures.

Badness is decided on the reduced (closed orientable cone-only)
signature: the only bad closed cases are the teardrop (one cone) and the
spindle (two cones of different orders), both on the sphere.  The
verdict transfers back along the reduction trace unchanged.  Group
finiteness is decided by the sign of the exact orbifold Euler
characteristic.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import NamedTuple

from .group import group_order_if_finite
from .reduce import ReductionTrace, StepKind, reduce_final, reduce_to_closed
from .signature import PreconditionError, Signature, format_signature, orbifold_euler


class Geometry(str, Enum):
    SPHERICAL = "spherical"
    EUCLIDEAN = "euclidean"
    HYPERBOLIC = "hyperbolic"
    BAD_NO_GEOMETRY = "bad_no_geometry"
    OPEN_OR_BOUNDED = "open_or_bounded"


class Classification(NamedTuple):
    signature: Signature
    euler: Fraction
    reduced: Signature
    good: bool
    group_finite: bool
    group_order: int | None
    geometry: Geometry

    def to_record(self) -> dict:
        """Serializable record with the fixed field order of the catalog."""
        return {
            "sig": format_signature(self.signature),
            "euler": f"{self.euler.numerator}/{self.euler.denominator}",
            "good": self.good,
            "finite": self.group_finite,
            "order": self.group_order,
            "geometry": self.geometry.value,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_record(), separators=(", ", ": "))


def is_bad_closed(sig: Signature) -> bool:
    """Bad list for closed orientable cone-only signatures.

    Exactly the sphere with one cone point and the sphere with two cone
    points of different orders.
    """
    if not sig.is_reduced:
        raise PreconditionError("bad list applies to closed orientable cone-only signatures")
    if sig.genus != 0:
        return False
    cones = sig.cones
    return len(cones) == 1 or (len(cones) == 2 and cones[0] != cones[1])


def _order_from_trace(trace: ReductionTrace, good: bool) -> int | None:
    """Group order of the start signature, propagated back along the trace.

    The reduced signature's order comes from the order formulas; each
    2-sheeted covering step doubles it (index-2 subgroup).  Across a
    manifold double the order is determined only when the pre-double
    signature is a disk with at most one cone, where it equals the cone
    order.
    """
    final = trace.final
    order: int | None = group_order_if_finite(final, orbifold_euler(final), good)
    for step, pre in zip(reversed(trace.steps), reversed(trace.inputs())):
        if order is None:
            return None
        if step.kind is StepKind.MANIFOLD_DOUBLE:
            is_disk = (
                pre.genus == 0
                and len(pre.boundary) == 1
                and len(pre.cones) <= 1
            )
            if is_disk:
                order = pre.cones[0] if pre.cones else 1
            else:
                order = None
        elif step.kind is StepKind.END_CUT:
            pass
        else:
            order = 2 * order
    return order


def classify(sig: Signature) -> Classification:
    """Full verdict: exact Euler characteristic, goodness, finiteness,
    group order where determined, and geometry tag."""
    final = reduce_final(sig)
    chi = orbifold_euler(sig)
    # Inline bad-list test (final is reduced by construction); the sign
    # tests read the numerator directly (denominators are positive).
    cones = final.cones
    good = not (
        final.genus == 0
        and (len(cones) == 1 or (len(cones) == 2 and cones[0] != cones[1]))
    )
    sign = chi.numerator
    finite = sign > 0
    # The full trace is only needed to propagate the order back, and
    # only finite groups have one.
    order = _order_from_trace(reduce_to_closed(sig), good) if finite else None
    if not good:
        geometry = Geometry.BAD_NO_GEOMETRY
    elif sig.boundary or sig.punctures:
        geometry = Geometry.OPEN_OR_BOUNDED
    elif sign > 0:
        geometry = Geometry.SPHERICAL
    elif sign == 0:
        geometry = Geometry.EUCLIDEAN
    else:
        geometry = Geometry.HYPERBOLIC
    return Classification(sig, chi, final, good, finite, order, geometry)


@dataclass(frozen=True)
class ClauseResult:
    clause: str
    applicable: bool
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class TheoremReport:
    signature: Signature
    classification: Classification
    clauses: tuple[ClauseResult, ...]

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.clauses)

    def failures(self) -> tuple[ClauseResult, ...]:
        return tuple(c for c in self.clauses if not c.passed)


def theorem_check(sig: Signature) -> TheoremReport:
    """Consistency clauses the classifier must satisfy on every signature.

    (a) chi <= 0 (infinite group) implies good;
    (b) punctures or manifold boundary imply good (mirror circles are
        excluded: a mirror disk with one corner, or two corners of
        different orders, doubles to a bad closed orbifold);
    (c) good, closed, chi > 0 implies 2/chi is a positive integer.
    """
    cls = classify(sig)
    clauses = []

    applicable = cls.euler <= 0
    clauses.append(
        ClauseResult(
            "a:infinite-implies-good",
            applicable,
            (not applicable) or cls.good,
            "chi <= 0 but classified bad" if applicable and not cls.good else "",
        )
    )

    applicable = sig.punctures > 0 or sig.manifold_circle_count > 0
    clauses.append(
        ClauseResult(
            "b:open-or-manifold-bounded-implies-good",
            applicable,
            (not applicable) or cls.good,
            "open/bounded but classified bad" if applicable and not cls.good else "",
        )
    )

    applicable = cls.good and sig.is_closed and cls.euler > 0
    passed = True
    detail = ""
    if applicable:
        order = Fraction(2) / cls.euler
        passed = order.denominator == 1 and order > 0
        if not passed:
            detail = f"2/chi = {order} is not a positive integer"
    clauses.append(ClauseResult("c:spherical-order-integral", applicable, passed, detail))

    return TheoremReport(sig, cls, tuple(clauses))
