# SPDX-License-Identifier: MPL-2.0
from __future__ import annotations

import pytest
from pydantic import ValidationError

from ospwind.errors import InvalidFamily
from ospwind.models import (
    CheckOutcome,
    DecoratedOSP,
    EhrhartCounts,
    FamilyKind,
    FamilySpec,
    HStarVector,
    OutputRecord,
    VerificationReport,
)


def test_hypersimplex_is_stored_as_unit_cube_slice() -> None:
    spec = FamilySpec.hypersimplex(2, 3)

    assert (spec.kind, spec.n, spec.r, spec.s) == (FamilyKind.HYPERSIMPLEX, 5, 1, 2)
    assert spec.params == {"a": 2, "b": 3}
    assert spec.winding_modulus == 2
    assert spec.label == "hypersimplex(a=2,b=3)"


def test_dilated_simplex_decoration_total_is_r() -> None:
    spec = FamilySpec.dilated_simplex(4, 3)

    assert spec.decoration_total == 4
    assert spec.upper_bound(1) == 3
    assert spec.params == {"r": 4, "n": 3}


@pytest.mark.parametrize(
    "build",
    [
        lambda: FamilySpec.hypersimplex(0, 3),
        lambda: FamilySpec.hypersimplex(4, -1),
        lambda: FamilySpec.hypersimplex(3, 0),
        lambda: FamilySpec.dilated_simplex(0, 3),
        lambda: FamilySpec.dilated_simplex(2, 1),
        lambda: FamilySpec.cube_slice(2, 3, 0),
        lambda: FamilySpec.cube_slice(2, 3, 6),
        lambda: FamilySpec.cube_slice(0, 3, 1),
    ],
)
def test_invalid_family_parameters_raise(build) -> None:
    with pytest.raises(InvalidFamily):
        build()


def test_direct_construction_runs_the_same_check() -> None:
    with pytest.raises(InvalidFamily):
        FamilySpec(kind=FamilyKind.DILATED_SIMPLEX, n=3, r=2, s=3)


def test_sort_key_orders_kinds_before_parameters() -> None:
    specs = [
        FamilySpec.cube_slice(1, 2, 1),
        FamilySpec.dilated_simplex(2, 2),
        FamilySpec.hypersimplex(1, 4),
        FamilySpec.hypersimplex(1, 1),
    ]

    ordered = sorted(specs, key=lambda spec: spec.sort_key)

    assert [spec.kind for spec in ordered] == [
        FamilyKind.HYPERSIMPLEX,
        FamilyKind.HYPERSIMPLEX,
        FamilyKind.DILATED_SIMPLEX,
        FamilyKind.CUBE_SLICE,
    ]
    assert ordered[0].n == 2


def test_family_specs_are_hashable_and_frozen() -> None:
    spec = FamilySpec.cube_slice(2, 3, 3)

    assert spec == FamilySpec.cube_slice(2, 3, 3)
    assert len({spec, FamilySpec.cube_slice(2, 3, 3)}) == 1
    with pytest.raises(ValidationError):
        spec.n = 4  # type: ignore[misc]


def test_decorated_partition_sorts_blocks() -> None:
    partition = DecoratedOSP(n=4, blocks=((3, 1), (4, 2)), decorations=(1, 1))

    assert partition.blocks == ((1, 3), (2, 4))
    assert partition.block_count == 2
    assert partition.decoration_sum == 2


def test_decorated_partition_needs_one_decoration_per_block() -> None:
    with pytest.raises(ValidationError):
        DecoratedOSP(n=2, blocks=((1, 2),), decorations=(1, 1))


def test_hstar_vector_trims_trailing_zeros() -> None:
    vector = HStarVector(coeffs=(1, 3, 0, 0))

    assert vector.trimmed().coeffs == (1, 3)
    assert vector.degree == 1
    assert vector.total == 4
    assert vector.render() == "(1,3)"
    assert HStarVector(coeffs=(0, 0)).trimmed().coeffs == (0,)


def test_hstar_vector_rejects_negative_entries() -> None:
    with pytest.raises(ValidationError):
        HStarVector(coeffs=(1, -1))


@pytest.mark.parametrize("values", [(2, 7, 19), (1, 7, 7), (1, 7, 6)])
def test_ehrhart_counts_must_start_at_one_and_increase(values: tuple[int, ...]) -> None:
    with pytest.raises(ValidationError):
        EhrhartCounts(r=2, s=3, n=3, values=values)


def test_ehrhart_counts_accept_points_and_increasing_counts() -> None:
    assert EhrhartCounts(r=2, s=1, n=1, values=(1,)).values == (1,)
    assert EhrhartCounts(r=2, s=3, n=3, values=(1, 7, 19)).values == (1, 7, 19)


def _report(**overrides) -> VerificationReport:
    fields = dict(
        family=FamilySpec.hypersimplex(2, 2),
        histogram=HStarVector(coeffs=(1, 2, 1, 0)),
        hstar=HStarVector(coeffs=(1, 2, 1, 0)),
        match=True,
        total_count=4,
        expected_count=4,
    )
    fields.update(overrides)
    return VerificationReport(**fields)


def test_report_match_flag_must_agree_with_vectors() -> None:
    assert _report().ok

    with pytest.raises(ValidationError):
        _report(match=False)
    with pytest.raises(ValidationError):
        _report(total_count=5)


def test_report_is_not_ok_with_a_failed_check() -> None:
    report = _report(checks=(CheckOutcome(name="injectivity", passed=False),))

    assert report.match
    assert not report.ok
    assert [c.name for c in report.failed_checks] == ["injectivity"]


def test_output_record_defaults_schema_version() -> None:
    record = OutputRecord(command="hstar", payload={"ehrhart": [1, 2, 1]})

    assert record.model_dump(mode="json")["schema_version"] == "1"
