# SPDX-License-Identifier: MPL-2.0
"""Winding-graded decorated ordered set partitions and Ehrhart h*-vectors."""
from .models import DecoratedOSP, FamilyKind, FamilySpec, HStarVector, VerificationReport

__all__ = ["DecoratedOSP", "FamilyKind", "FamilySpec", "HStarVector", "VerificationReport"]
__version__ = "0.1.0"
