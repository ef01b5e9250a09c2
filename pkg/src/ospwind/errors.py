# SPDX-License-Identifier: MPL-2.0
"""Exception hierarchy shared by the enumeration, Ehrhart and verification layers."""
from __future__ import annotations


class OspwindError(Exception):
    """Base class for every error raised by ospwind."""


class PartitionError(OspwindError):
    """A decorated ordered set partition violates a structural invariant."""


class OverlappingBlocks(PartitionError):
    pass


class MissingElements(PartitionError):
    pass


class UnknownElements(PartitionError):
    """An element lies outside the ground set {1, ..., n}."""


class EmptyBlock(PartitionError):
    pass


class NonPositiveDecoration(PartitionError):
    pass


class NotCanonical(PartitionError):
    """Element 1 is not in the first block."""


class EncodingError(OspwindError):
    """Malformed canonical text encoding."""


class InvalidFamily(OspwindError):
    """Polytope family parameters violate their constraints."""


class NotAdmissible(OspwindError):
    pass


class ModulusMismatch(OspwindError):
    pass


class WindingError(OspwindError):
    pass


class LevelNotDivisible(WindingError):
    pass


class NoPreimage(WindingError):
    pass


class EhrhartError(OspwindError):
    pass


class InvalidParams(EhrhartError):
    pass


class NegativeCoefficient(EhrhartError):
    """An extracted h*-coefficient is negative, so the lattice counts are inconsistent."""


class LengthMismatch(EhrhartError):
    pass


class InvalidRange(OspwindError):
    """A sweep range is empty or out of bounds for its family."""
