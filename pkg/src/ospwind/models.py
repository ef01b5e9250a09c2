# SPDX-License-Identifier: MPL-2.0
from __future__ import annotations

from enum import Enum
from typing import Any, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from .errors import InvalidFamily

SCHEMA_VERSION = "1"


class FamilyKind(str, Enum):
    """The three parametric polytope families."""

    HYPERSIMPLEX = "hypersimplex"
    DILATED_SIMPLEX = "simplex"
    CUBE_SLICE = "slice"


_KIND_ORDER = {
    FamilyKind.HYPERSIMPLEX: 0,
    FamilyKind.DILATED_SIMPLEX: 1,
    FamilyKind.CUBE_SLICE: 2,
}


def check_family_params(kind: FamilyKind, n: int, r: int, s: int) -> None:
    """Raise InvalidFamily unless (n, r, s) is admissible for ``kind``.

    Every family is stored as a slice {x in [0, r]^n : sum x_i = s}: the hypersimplex
    B_{a,b} is (r=1, s=a, n=a+b) and the dilated simplex is (r, s=r, n).
    """
    if kind is FamilyKind.HYPERSIMPLEX:
        if r != 1:
            raise InvalidFamily(f"hypersimplex must have unit cube side, got r={r}")
        if not 1 <= s < n:
            raise InvalidFamily(f"hypersimplex needs 1 <= a < n, got a={s}, b={n - s}")
    elif kind is FamilyKind.DILATED_SIMPLEX:
        if r < 1:
            raise InvalidFamily(f"dilated simplex needs r >= 1, got r={r}")
        if n < 2:
            raise InvalidFamily(f"dilated simplex needs n >= 2, got n={n}")
        if s != r:
            raise InvalidFamily(f"dilated simplex has decoration total r={r}, got s={s}")
    elif kind is FamilyKind.CUBE_SLICE:
        if r < 1 or n < 1:
            raise InvalidFamily(f"cube slice needs r >= 1 and n >= 1, got r={r}, n={n}")
        if not 1 <= s <= r * n - 1:
            raise InvalidFamily(f"cube slice needs 1 <= s <= rn-1 = {r * n - 1}, got s={s}")
    else:  # pragma: no cover - exhaustive over the enum
        raise InvalidFamily(f"unknown family kind {kind!r}")


class FamilySpec(BaseModel):
    """One instance of a polytope family together with its admissibility rule."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    kind: FamilyKind
    n: int
    r: int
    s: int

    @model_validator(mode="after")
    def _check_params(self) -> FamilySpec:
        check_family_params(self.kind, self.n, self.r, self.s)
        return self

    @classmethod
    def hypersimplex(cls, a: int, b: int) -> FamilySpec:
        check_family_params(FamilyKind.HYPERSIMPLEX, a + b, 1, a)
        return cls(kind=FamilyKind.HYPERSIMPLEX, n=a + b, r=1, s=a)

    @classmethod
    def dilated_simplex(cls, r: int, n: int) -> FamilySpec:
        check_family_params(FamilyKind.DILATED_SIMPLEX, n, r, r)
        return cls(kind=FamilyKind.DILATED_SIMPLEX, n=n, r=r, s=r)

    @classmethod
    def cube_slice(cls, r: int, n: int, s: int) -> FamilySpec:
        check_family_params(FamilyKind.CUBE_SLICE, n, r, s)
        return cls(kind=FamilyKind.CUBE_SLICE, n=n, r=r, s=s)

    @property
    def decoration_total(self) -> int:
        return self.s

    @property
    def winding_modulus(self) -> int:
        return self.s

    @property
    def ambient_dim(self) -> int:
        return self.n

    @property
    def hstar_length(self) -> int:
        return self.n

    def upper_bound(self, block_size: int) -> int:
        """Largest decoration a block of ``block_size`` elements may carry."""
        return self.r * block_size - 1

    @property
    def params(self) -> dict[str, int]:
        if self.kind is FamilyKind.HYPERSIMPLEX:
            return {"a": self.s, "b": self.n - self.s}
        if self.kind is FamilyKind.DILATED_SIMPLEX:
            return {"r": self.r, "n": self.n}
        return {"r": self.r, "n": self.n, "s": self.s}

    @property
    def sort_key(self) -> tuple[int, int, int, int]:
        return (_KIND_ORDER[self.kind], self.n, self.r, self.s)

    @property
    def label(self) -> str:
        args = ",".join(f"{k}={v}" for k, v in self.params.items())
        return f"{self.kind.value}({args})"


class DecoratedOSP(BaseModel):
    """Ordered set partition of {1, ..., n} whose blocks carry positive decorations.

    Construction only normalises block order and checks that every block has a
    decoration; the partition invariants are checked by ``partitions.validate``.
    """

    model_config = ConfigDict(extra="forbid", frozen=True)

    n: int = Field(..., ge=1)
    blocks: tuple[tuple[int, ...], ...]
    decorations: tuple[int, ...]

    @field_validator("blocks")
    @classmethod
    def _sort_blocks(cls, v: tuple[tuple[int, ...], ...]) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(sorted(block)) for block in v)

    @model_validator(mode="after")
    def _check_lengths(self) -> DecoratedOSP:
        if len(self.blocks) != len(self.decorations):
            raise ValueError(
                f"{len(self.blocks)} blocks but {len(self.decorations)} decorations"
            )
        return self

    @property
    def block_count(self) -> int:
        return len(self.blocks)

    @property
    def decoration_sum(self) -> int:
        return sum(self.decorations)


class WindingData(BaseModel):
    """Position labels and winding statistics of a canonical partition."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    positions: tuple[int, ...]
    winding_vector: tuple[int, ...]
    level: int = Field(..., ge=0)
    winding_number: int = Field(..., ge=0)


class HStarVector(BaseModel):
    """Exact nonnegative coefficient vector (an h*-vector or a winding histogram)."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    coeffs: tuple[int, ...] = Field(..., min_length=1)

    @field_validator("coeffs")
    @classmethod
    def _check_nonnegative(cls, v: tuple[int, ...]) -> tuple[int, ...]:
        if any(c < 0 for c in v):
            raise ValueError(f"coefficients must be nonnegative, got {v}")
        return v

    def trimmed(self) -> HStarVector:
        """Drop trailing zeros, keeping at least the constant term."""
        end = len(self.coeffs)
        while end > 1 and self.coeffs[end - 1] == 0:
            end -= 1
        return HStarVector(coeffs=self.coeffs[:end])

    @property
    def total(self) -> int:
        return sum(self.coeffs)

    @property
    def degree(self) -> int:
        return len(self.trimmed().coeffs) - 1

    def render(self) -> str:
        return "(" + ",".join(str(c) for c in self.trimmed().coeffs) + ")"


class EhrhartCounts(BaseModel):
    """Lattice-point counts L(0), ..., L(n-1) of the dilates of a cube slice."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    r: int
    s: int
    n: int
    values: tuple[int, ...]

    @model_validator(mode="after")
    def _check_origin(self) -> EhrhartCounts:
        if self.values and self.values[0] != 1:
            raise ValueError(f"L(0) must be 1, got {self.values[0]}")
        # n >= 2 slices have dimension n - 1 >= 1, so every dilate gains lattice points.
        if self.n >= 2 and any(b <= a for a, b in zip(self.values, self.values[1:])):
            raise ValueError(f"L(t) must be strictly increasing, got {self.values}")
        return self


class CheckOutcome(BaseModel):
    """Outcome of one named structural property check."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    name: str
    passed: bool
    detail: Optional[str] = None
    witness: Optional[tuple[int, ...]] = None


class VerificationReport(BaseModel):
    """Comparison of the winding histogram and the Ehrhart h*-vector for one instance."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    family: FamilySpec
    histogram: HStarVector
    hstar: HStarVector
    match: bool
    total_count: int = Field(..., ge=0)
    expected_count: Optional[int] = None
    checks: tuple[CheckOutcome, ...] = ()
    elapsed: float = Field(0.0, ge=0.0, description="Wall time in seconds")
    diagnostics: dict[int, tuple[str, ...]] = Field(
        default_factory=dict,
        description="First partitions per winding class, filled on mismatch or failed check",
    )

    @model_validator(mode="after")
    def _check_consistency(self) -> VerificationReport:
        if self.match != (self.histogram.trimmed() == self.hstar.trimmed()):
            raise ValueError("match flag disagrees with the compared vectors")
        if self.total_count != self.histogram.total:
            raise ValueError(
                f"total_count {self.total_count} != histogram sum {self.histogram.total}"
            )
        return self

    @property
    def failed_checks(self) -> list[CheckOutcome]:
        return [c for c in self.checks if not c.passed]

    @property
    def ok(self) -> bool:
        return self.match and not self.failed_checks


class OutputRecord(BaseModel):
    """Top-level machine-readable document emitted by one CLI invocation."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    schema_version: str = SCHEMA_VERSION
    command: str
    family: Optional[dict[str, Any]] = None
    payload: Any = None
