# SPDX-License-Identifier: MPL-2.0
from __future__ import annotations

import logging

import pytest

from ospwind import logging as ospwind_logging
from ospwind import verify
from ospwind.errors import InvalidRange
from ospwind.models import FamilyKind, FamilySpec, HStarVector
from ospwind.plans import FamilyRange, SweepPlan
from ospwind.verify import (
    _bijection_outcome,
    check_bijection_simplex,
    expected_count,
    report_to_dict,
    sweep,
    verify_instance,
)


def test_expected_count_per_family() -> None:
    assert expected_count(FamilySpec.hypersimplex(2, 3)) == 11
    assert expected_count(FamilySpec.dilated_simplex(3, 4)) == 27
    assert expected_count(FamilySpec.cube_slice(2, 3, 3)) is None


def test_verify_instance_matches_small_hypersimplex() -> None:
    report = verify_instance(FamilySpec.hypersimplex(2, 3))

    assert report.match
    assert report.ok
    assert report.histogram.trimmed().coeffs == (1, 5, 5)
    assert report.total_count == report.expected_count == 11
    assert report.diagnostics == {}
    assert {c.name for c in report.checks} >= {
        "partition-validity",
        "level-divisibility",
        "winding-bound",
        "injectivity",
        "unwind-roundtrip",
        "count-admissible",
        "count-identity",
        "complement-symmetry",
    }


def test_verify_instance_runs_simplex_checks() -> None:
    report = verify_instance(FamilySpec.dilated_simplex(3, 3))
    names = {c.name for c in report.checks}

    assert report.ok
    assert {"bijection", "section-layers", "closed-form-series"} <= names
    assert report.histogram.trimmed().coeffs == (1, 7, 1)


def test_verify_instance_on_cube_slice() -> None:
    report = verify_instance(FamilySpec.cube_slice(2, 3, 3))

    assert report.ok
    assert report.expected_count is None
    assert report.hstar.trimmed().coeffs == (1, 4, 1)
    assert "count-identity" not in {c.name for c in report.checks}


def test_mismatch_is_reported_with_diagnostics(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setattr(verify, "ehrhart_side", lambda family: HStarVector(coeffs=(1, 4, 6)))

    report = verify_instance(FamilySpec.hypersimplex(2, 3), dump_limit=2)

    assert not report.match
    assert not report.ok
    assert sorted(report.diagnostics) == [0, 1, 2]
    assert all(len(members) <= 2 for members in report.diagnostics.values())
    assert report.diagnostics[0] == ("{1,2,3,4,5}_2",)


def test_bijection_check_on_simplices() -> None:
    outcome = check_bijection_simplex(3, 3)

    assert outcome.passed
    assert outcome.name == "bijection"


def test_bijection_outcome_names_a_witness() -> None:
    stray = _bijection_outcome([(0, 0), (1, 0)], 2, 2)
    unhit = _bijection_outcome([(0, 0)], 2, 2)

    assert not stray.passed and stray.witness == (1, 0)
    assert not unhit.passed and unhit.witness == (1, 1)


def test_sweep_is_sorted_and_covers_the_range() -> None:
    reports = sweep(FamilyRange(family=FamilyKind.HYPERSIMPLEX, max_n=4))

    assert [r.family.params for r in reports] == [
        {"a": 1, "b": 1},
        {"a": 1, "b": 2},
        {"a": 2, "b": 1},
        {"a": 1, "b": 3},
        {"a": 2, "b": 2},
        {"a": 3, "b": 1},
    ]
    assert [r.total_count for r in reports[-3:]] == [1, 4, 1]
    assert all(r.ok for r in reports)


def test_sweep_accepts_explicit_instances() -> None:
    specs = [FamilySpec.dilated_simplex(2, 3), FamilySpec.hypersimplex(1, 2)]

    reports = sweep(specs)

    assert [r.family for r in reports] == sorted(specs, key=lambda spec: spec.sort_key)


def test_sweep_result_does_not_depend_on_workers() -> None:
    plan = SweepPlan(
        sweeps=[
            FamilyRange(family=FamilyKind.DILATED_SIMPLEX, max_n=3, max_r=3),
            FamilyRange(family=FamilyKind.CUBE_SLICE, min_r=2, max_r=2, max_n=3),
        ]
    )

    serial = [report_to_dict(r) for r in sweep(plan, workers=1)]
    parallel = [report_to_dict(r) for r in sweep(plan, workers=3)]

    assert serial == parallel


def test_sweep_workers_inherit_trace_and_log_level(monkeypatch: pytest.MonkeyPatch) -> None:
    seen: list[tuple] = []

    class InlinePool:
        def __init__(self, processes: int, initializer, initargs: tuple) -> None:
            seen.append(initargs)

        def __enter__(self) -> InlinePool:
            return self

        def __exit__(self, *exc_info) -> None:
            return None

        def imap_unordered(self, func, items):
            return map(func, items)

    ospwind_logging.configure_logging("DEBUG", force=True)
    ospwind_logging.bind_trace("sweep-trace")
    monkeypatch.setattr(verify, "Pool", InlinePool)

    reports = sweep(FamilyRange(family=FamilyKind.HYPERSIMPLEX, max_n=3), workers=2)

    assert len(reports) == 3
    assert seen == [("sweep-trace", logging.DEBUG)]
    ospwind_logging.configure_logging(force=True)


def test_sweep_rejects_non_positive_workers() -> None:
    with pytest.raises(InvalidRange):
        sweep([FamilySpec.hypersimplex(1, 1)], workers=0)


def test_report_to_dict_omits_timing_by_default() -> None:
    report = verify_instance(FamilySpec.hypersimplex(2, 2))

    record = report_to_dict(report)
    timed_record = report_to_dict(report, include_timing=True)

    assert "elapsed_seconds" not in record
    assert timed_record["elapsed_seconds"] >= 0
    assert record["family"] == {"kind": "hypersimplex", "params": {"a": 2, "b": 2}}
    assert record["histogram"] == record["hstar"] == [1, 2, 1]
    assert record["match"] is True
