# SPDX-License-Identifier: MPL-2.0
"""Conjecture harness: winding histograms against Ehrhart h*-vectors.

For one family instance ``verify_instance`` enumerates the admissible partitions,
grades them by winding number and compares the histogram with the h*-vector obtained
independently by lattice-point counting. A disagreement is recorded in the report,
never raised: a mismatch is either a counterexample or a bug, and the diagnostic dump
is there to tell which.
"""
from __future__ import annotations

import time
from collections import Counter
from collections.abc import Iterable, Sequence
from functools import partial
from multiprocessing import Pool
from typing import Any, Optional, Union

from .ehrhart import eulerian, hstar_simplex, hstar_slice
from .errors import InvalidRange, PartitionError, WindingError
from .logging import get_log_level, get_logger, get_trace_id, worker_initializer
from .models import (
    CheckOutcome,
    DecoratedOSP,
    FamilyKind,
    FamilySpec,
    HStarVector,
    VerificationReport,
)
from .partitions import (
    count_admissible,
    cyclic_winding,
    enumerate_partitions,
    format_partition,
    is_admissible,
    modular_section,
    modular_section_layers,
    position_labels,
    unwind,
    validate,
    winding_vector,
)
from .plans import FamilyRange, SweepPlan

__all__ = [
    "DEFAULT_DUMP_LIMIT",
    "check_bijection_simplex",
    "ehrhart_side",
    "expected_count",
    "report_to_dict",
    "sweep",
    "verify_instance",
]

logger = get_logger(__name__).bind(component="verify")

DEFAULT_DUMP_LIMIT = 20

SweepInput = Union[SweepPlan, FamilyRange, Sequence[FamilySpec]]


def expected_count(family: FamilySpec) -> Optional[int]:
    """Known cardinality of the admissible set: Eulerian for B_{a,b}, r^(n-1) for simplices."""

    if family.kind is FamilyKind.HYPERSIMPLEX:
        return eulerian(family.n - 1, family.s - 1)
    if family.kind is FamilyKind.DILATED_SIMPLEX:
        return family.r ** (family.n - 1)
    return None


def ehrhart_side(family: FamilySpec) -> HStarVector:
    """h*-vector of the polytope behind ``family``, all three as cube slices."""

    return hstar_slice(family.r, family.s, family.n)


def _bijection_outcome(
    image: Iterable[tuple[int, ...]], r: int, n: int
) -> CheckOutcome:
    vectors = set(image)
    section = modular_section(r, n)
    stray = sorted(vectors - section)
    if stray:
        return CheckOutcome(
            name="bijection",
            passed=False,
            detail="winding vector outside the modular section",
            witness=stray[0],
        )
    unhit = sorted(section - vectors)
    if unhit:
        return CheckOutcome(
            name="bijection",
            passed=False,
            detail="modular section point without a preimage",
            witness=unhit[0],
        )
    return CheckOutcome(name="bijection", passed=True, detail=f"{len(section)} points")


def check_bijection_simplex(r: int, n: int) -> CheckOutcome:
    """Winding image of the dilated simplex partitions versus the modular section."""

    family = FamilySpec.dilated_simplex(r, n)
    image = (winding_vector(p, family).winding_vector for p in enumerate_partitions(family))
    return _bijection_outcome(image, r, n)


def _outcome(name: str, witness: Optional[DecoratedOSP], detail: str) -> CheckOutcome:
    if witness is None:
        return CheckOutcome(name=name, passed=True)
    return CheckOutcome(name=name, passed=False, detail=f"{detail}: {format_partition(witness)}")


def verify_instance(
    family: FamilySpec, dump_limit: int = DEFAULT_DUMP_LIMIT
) -> VerificationReport:
    """Compare both sides of the conjecture for ``family`` and run the property checks."""

    start = time.perf_counter()
    call_logger = logger.bind(family=family.label)
    modulus = family.winding_modulus

    partitions = list(enumerate_partitions(family))
    invalid: Optional[DecoratedOSP] = None
    indivisible: Optional[DecoratedOSP] = None
    out_of_bounds: Optional[DecoratedOSP] = None
    not_unwound: Optional[DecoratedOSP] = None
    numbers: list[int] = []
    vectors: list[tuple[int, ...]] = []

    for partition in partitions:
        try:
            validate(partition)
        except PartitionError:
            invalid = invalid or partition
        if not is_admissible(partition, family):
            invalid = invalid or partition

        vector, level = cyclic_winding(position_labels(partition, modulus), modulus)
        if level % modulus:
            indivisible = indivisible or partition
        number = level // modulus
        if not 0 <= number <= family.n - 1:
            out_of_bounds = out_of_bounds or partition
        numbers.append(number)
        vectors.append(vector)

        try:
            if unwind(vector, modulus) != partition:
                not_unwound = not_unwound or partition
        except WindingError:
            not_unwound = not_unwound or partition

    by_number = Counter(numbers)
    width = max([family.hstar_length, *(k + 1 for k in by_number)])
    histogram = HStarVector(coeffs=tuple(by_number.get(j, 0) for j in range(width)))
    hstar = ehrhart_side(family)
    match = histogram.trimmed() == hstar.trimmed()

    checks = [
        _outcome("partition-validity", invalid, "not a valid admissible partition"),
        _outcome("level-divisibility", indivisible, f"level not divisible by {modulus}"),
        _outcome("winding-bound", out_of_bounds, f"winding number outside 0..{family.n - 1}"),
        CheckOutcome(
            name="injectivity",
            passed=len(set(vectors)) == len(vectors),
            detail=f"{len(set(vectors))} distinct vectors for {len(vectors)} partitions",
        ),
        _outcome("unwind-roundtrip", not_unwound, "unwind does not invert the winding map"),
    ]

    counted = count_admissible(family)
    checks.append(
        CheckOutcome(
            name="count-admissible",
            passed=counted == len(partitions),
            detail=f"counted {counted}, enumerated {len(partitions)}",
        )
    )
    expected = expected_count(family)
    if expected is not None:
        checks.append(
            CheckOutcome(
                name="count-identity",
                passed=expected == len(partitions),
                detail=f"expected {expected}, enumerated {len(partitions)}",
            )
        )

    if family.kind is FamilyKind.DILATED_SIMPLEX:
        checks.append(_bijection_outcome(vectors, family.r, family.n))
        layers = modular_section_layers(family.r, family.n)
        layer_sizes = HStarVector(
            coeffs=tuple(len(layers.get(j, ())) for j in range(family.n))
        )
        checks.append(
            CheckOutcome(
                name="section-layers",
                passed=layer_sizes.trimmed() == histogram.trimmed(),
                detail=f"layer sizes {layer_sizes.render()}",
            )
        )
        closed_form = hstar_simplex(family.r, family.n)
        checks.append(
            CheckOutcome(
                name="closed-form-series",
                passed=closed_form.trimmed() == hstar.trimmed(),
                detail=f"series numerator {closed_form.render()}",
            )
        )

    complement = hstar_slice(family.r, family.r * family.n - family.s, family.n)
    checks.append(
        CheckOutcome(
            name="complement-symmetry",
            passed=complement.trimmed() == hstar.trimmed(),
            detail=f"h* at s={family.r * family.n - family.s} is {complement.render()}",
        )
    )

    diagnostics: dict[int, tuple[str, ...]] = {}
    if not match or any(not c.passed for c in checks):
        classes: dict[int, list[str]] = {}
        for partition, number in zip(partitions, numbers):
            members = classes.setdefault(number, [])
            if len(members) < dump_limit:
                members.append(format_partition(partition))
        diagnostics = {k: tuple(v) for k, v in sorted(classes.items())}

    report = VerificationReport(
        family=family,
        histogram=histogram,
        hstar=hstar,
        match=match,
        total_count=len(partitions),
        expected_count=expected,
        checks=tuple(checks),
        elapsed=time.perf_counter() - start,
        diagnostics=diagnostics,
    )
    if report.ok:
        call_logger.debug("instance-verified", histogram=histogram.render(), total=len(partitions))
    else:
        call_logger.warning(
            "instance-mismatch",
            histogram=histogram.render(),
            hstar=hstar.render(),
            failed_checks=[c.name for c in report.failed_checks],
        )
    return report


def _resolve_instances(ranges: SweepInput) -> list[FamilySpec]:
    if isinstance(ranges, (SweepPlan, FamilyRange)):
        return ranges.instances()
    return sorted(set(ranges), key=lambda spec: spec.sort_key)


def sweep(
    ranges: SweepInput, workers: int = 1, dump_limit: int = DEFAULT_DUMP_LIMIT
) -> list[VerificationReport]:
    """Verify every instance in ``ranges``; the result order never depends on ``workers``."""

    if workers < 1:
        raise InvalidRange(f"workers must be positive, got {workers}")
    specs = _resolve_instances(ranges)
    logger.info("sweep-start", instances=len(specs), workers=workers)

    task = partial(verify_instance, dump_limit=dump_limit)
    if workers == 1 or len(specs) <= 1:
        reports = [task(spec) for spec in specs]
    else:
        with Pool(
            processes=min(workers, len(specs)),
            initializer=worker_initializer,
            initargs=(get_trace_id(), get_log_level()),
        ) as pool:
            reports = list(pool.imap_unordered(task, specs))
    reports.sort(key=lambda report: report.family.sort_key)

    logger.info(
        "sweep-complete",
        instances=len(reports),
        mismatches=sum(not r.match for r in reports),
        failed=sum(not r.ok for r in reports),
    )
    return reports


def report_to_dict(report: VerificationReport, include_timing: bool = False) -> dict[str, Any]:
    """Stable JSON-ready view of a report; elapsed time only on request."""

    record: dict[str, Any] = {
        "family": {"kind": report.family.kind.value, "params": report.family.params},
        "histogram": list(report.histogram.trimmed().coeffs),
        "hstar": list(report.hstar.trimmed().coeffs),
        "match": report.match,
        "ok": report.ok,
        "total_count": report.total_count,
        "expected_count": report.expected_count,
        "checks": [c.model_dump(mode="json") for c in report.checks],
        "diagnostics": {str(k): list(v) for k, v in report.diagnostics.items()},
    }
    if include_timing:
        record["elapsed_seconds"] = round(report.elapsed, 6)
    return record
