"""Structured errors shared across the library.

Every error that callers are expected to catch carries enough fields to
rebuild the offending configuration; messages alone are never the contract.
"""

from __future__ import annotations


class CirclinkError(Exception):
    """Base class for all library errors."""


class NotDisjointError(CirclinkError):
    """Two point sets that were required to be disjoint share points."""

    def __init__(self, shared):
        self.shared = tuple(shared)
        super().__init__("sets share points: %s" % (", ".join(str(p) for p in self.shared)))


class OutsideDiscError(CirclinkError):
    """A plane point lies strictly outside the closed unit disc."""

    def __init__(self, point):
        self.point = point
        super().__init__("point (%s, %s) is outside the closed unit disc" % (point.x, point.y))


class NotInteriorError(CirclinkError):
    """An index pair is not an interior Z-point of the given pair of families."""

    def __init__(self, z):
        self.z = z
        super().__init__("(%d, %d) is not an interior Z-point" % z)


class EmptyLinkedCellError(CirclinkError):
    """A linked pair produced an empty hull intersection; this is a bug."""

    def __init__(self, z):
        self.z = z
        super().__init__("linked pair (%d, %d) has an empty cell" % z)


class NotLinearlyOrderedError(CirclinkError):
    """Separation data failed to produce a total order.

    witness is a triple of element indices that cannot be arranged in a chain.
    """

    def __init__(self, witness):
        self.witness = tuple(witness)
        super().__init__("elements %s are not linearly ordered by separation" % (self.witness,))


class GroupOrderNotTotalError(CirclinkError):
    """A leaf-graph group could not be chained by the separation order."""

    def __init__(self, witness):
        self.witness = tuple(witness)
        super().__init__("group members %s admit no separation chain" % (self.witness,))


class FamilyValidationError(CirclinkError):
    """A family pair violates the admissibility clauses.

    violations lists every violated clause, not just the first one found.
    """

    def __init__(self, violations):
        self.violations = tuple(violations)
        lines = "; ".join(v.describe() for v in self.violations)
        super().__init__("invalid family pair: %s" % lines)


class MalformedInputError(CirclinkError):
    """Input text or JSON does not match the documented wire format."""

    def __init__(self, message, location=None):
        self.message = message
        self.location = location
        if location:
            message = "%s (at %s)" % (message, location)
        super().__init__(message)
