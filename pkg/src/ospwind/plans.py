# SPDX-License-Identifier: MPL-2.0
"""Sweep plans: parameter ranges per family, loadable from YAML.

Example plan::

    jobs: 4
    sweeps:
      - family: hypersimplex
        max_n: 8
      - family: slice
        min_r: 2
        max_r: 2
        min_n: 3
        max_n: 3

Unset bounds fall back to the per-family defaults in ``DEFAULT_BOUNDS``.
"""
from __future__ import annotations

from itertools import chain
from pathlib import Path
from typing import Optional

import yaml
from pydantic import BaseModel, ConfigDict, Field, model_validator

from .errors import InvalidRange
from .models import FamilyKind, FamilySpec

__all__ = ["DEFAULT_BOUNDS", "FamilyRange", "SweepPlan", "load_sweep_plan"]

# (min_n, max_n, min_r, max_r) per family.
DEFAULT_BOUNDS: dict[FamilyKind, tuple[int, int, int, int]] = {
    FamilyKind.HYPERSIMPLEX: (2, 8, 1, 1),
    FamilyKind.DILATED_SIMPLEX: (2, 5, 2, 5),
    FamilyKind.CUBE_SLICE: (2, 5, 1, 3),
}

_FLOOR_N = {
    FamilyKind.HYPERSIMPLEX: 2,
    FamilyKind.DILATED_SIMPLEX: 2,
    FamilyKind.CUBE_SLICE: 1,
}


class FamilyRange(BaseModel):
    """Inclusive parameter ranges for one family; ``None`` means the family default."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    family: FamilyKind
    min_n: Optional[int] = None
    max_n: Optional[int] = None
    min_r: Optional[int] = None
    max_r: Optional[int] = None
    min_s: Optional[int] = Field(None, description="Slice level bounds (slice family only)")
    max_s: Optional[int] = None
    min_a: Optional[int] = Field(None, description="Number of ones (hypersimplex only)")
    max_a: Optional[int] = None

    @model_validator(mode="after")
    def _check_bounds(self) -> FamilyRange:
        n_lo, n_hi = self.n_bounds
        r_lo, r_hi = self.r_bounds
        if n_lo < _FLOOR_N[self.family]:
            floor = _FLOOR_N[self.family]
            raise InvalidRange(f"{self.family.value} needs n >= {floor}, got {n_lo}")
        if r_lo < 1:
            raise InvalidRange(f"{self.family.value} needs r >= 1, got {r_lo}")
        if self.family is FamilyKind.HYPERSIMPLEX and (r_lo, r_hi) != (1, 1):
            raise InvalidRange("hypersimplex ranges cannot set r")
        if self.family is not FamilyKind.CUBE_SLICE and (self.min_s, self.max_s) != (None, None):
            raise InvalidRange("s bounds only apply to the slice family")
        if self.family is not FamilyKind.HYPERSIMPLEX and (self.min_a, self.max_a) != (None, None):
            raise InvalidRange("a bounds only apply to the hypersimplex family")
        for name, lo, hi in (
            ("n", n_lo, n_hi),
            ("r", r_lo, r_hi),
            ("s", self.min_s, self.max_s),
            ("a", self.min_a, self.max_a),
        ):
            if lo is not None and lo < 1:
                raise InvalidRange(f"{name} lower bound must be positive, got {lo}")
            if lo is not None and hi is not None and lo > hi:
                raise InvalidRange(f"empty {name} range {lo}..{hi}")
        return self

    @property
    def n_bounds(self) -> tuple[int, int]:
        default_lo, default_hi, _, _ = DEFAULT_BOUNDS[self.family]
        lo = self.min_n if self.min_n is not None else default_lo
        if self.min_n is None and self.max_n is not None:
            lo = min(lo, max(self.max_n, _FLOOR_N[self.family]))
        hi = self.max_n if self.max_n is not None else max(lo, default_hi)
        return lo, hi

    @property
    def r_bounds(self) -> tuple[int, int]:
        _, _, default_lo, default_hi = DEFAULT_BOUNDS[self.family]
        lo = self.min_r if self.min_r is not None else default_lo
        if self.min_r is None and self.max_r is not None:
            lo = min(lo, max(self.max_r, 1))
        hi = self.max_r if self.max_r is not None else max(lo, default_hi)
        return lo, hi

    def instances(self) -> list[FamilySpec]:
        """Every family instance in range, in canonical order."""

        n_lo, n_hi = self.n_bounds
        r_lo, r_hi = self.r_bounds
        specs: list[FamilySpec] = []
        for n in range(n_lo, n_hi + 1):
            if self.family is FamilyKind.HYPERSIMPLEX:
                a_lo = max(1, self.min_a or 1)
                a_hi = min(n - 1, self.max_a if self.max_a is not None else n - 1)
                specs.extend(FamilySpec.hypersimplex(a, n - a) for a in range(a_lo, a_hi + 1))
                continue
            for r in range(r_lo, r_hi + 1):
                if self.family is FamilyKind.DILATED_SIMPLEX:
                    specs.append(FamilySpec.dilated_simplex(r, n))
                    continue
                s_lo = max(1, self.min_s or 1)
                s_hi = min(r * n - 1, self.max_s if self.max_s is not None else r * n - 1)
                specs.extend(FamilySpec.cube_slice(r, n, s) for s in range(s_lo, s_hi + 1))
        return sorted(specs, key=lambda spec: spec.sort_key)


class SweepPlan(BaseModel):
    """A list of family ranges swept together."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    sweeps: list[FamilyRange] = Field(default_factory=list)
    jobs: Optional[int] = Field(None, ge=1, description="Worker processes; CLI flag wins")

    def instances(self) -> list[FamilySpec]:
        """Deduplicated union of every range, in canonical order."""

        unique = set(chain.from_iterable(r.instances() for r in self.sweeps))
        return sorted(unique, key=lambda spec: spec.sort_key)


def load_sweep_plan(path: str | Path) -> SweepPlan:
    with open(path, encoding="utf-8") as f:
        raw = yaml.safe_load(f)
    return SweepPlan.model_validate(raw or {})
