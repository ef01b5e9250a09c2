# SPDX-License-Identifier: MPL-2.0
"""ospwind command-line interface.

Examples:

    # List the partitions of the hypersimplex B_{2,2} with their winding data
    ospwind enumerate --family hypersimplex --a 2 --b 2 --with-winding

    # Both sides of the conjecture for the tetrahedron dilated by 4
    ospwind hstar --family simplex --r 4 --n 4 --method both

    # Sweep every slice of [0,2]^3 on 8 worker processes, as JSON
    ospwind verify --family slice --r 2 --n 3 --jobs 8 --format json

Exit codes: 0 success, 1 conjecture mismatch or failed property check (verify only)
or internal error, 2 invalid flags or parameters.
"""
from __future__ import annotations

import csv
import json
import os
import sys
from collections.abc import Iterable, Iterator
from enum import Enum
from pathlib import Path
from typing import Annotated, Any, Optional

import typer
import yaml
from pydantic import ValidationError
from rich.console import Console
from rich.measure import Measurement
from rich.table import Table

from .ehrhart import hstar_slice
from .errors import InvalidFamily, InvalidRange, OspwindError
from .logging import bind_context, bind_trace, configure_logging, get_logger
from .models import DecoratedOSP, FamilyKind, FamilySpec, OutputRecord, VerificationReport
from .partitions import (
    enumerate_partitions,
    format_partition,
    grading_histogram,
    winding_classes,
    winding_vector,
)
from .plans import FamilyRange, SweepPlan, load_sweep_plan
from .provenance import capture_provenance, save_provenance
from .verify import DEFAULT_DUMP_LIMIT, report_to_dict, sweep

console = Console(highlight=False)
err_console = Console(stderr=True, highlight=False)

app = typer.Typer(
    name="ospwind",
    help="Winding-graded decorated ordered set partitions versus Ehrhart h*-vectors",
    no_args_is_help=True,
    add_completion=False,
)

configure_logging()
TRACE_ID = bind_trace()
bind_context(subsystem="cli")
cli_logger = get_logger(__name__).bind(subsystem="cli")

ENUMERATE_COLUMNS = ("partition", "positions", "winding_vector", "level", "winding_number")


class OutputFormat(str, Enum):
    """Supported output formats for the CLI."""

    TABLE = "table"
    JSON = "json"
    CSV = "csv"


class Method(str, Enum):
    """Which side of the conjecture ``hstar`` computes."""

    WINDING = "winding"
    EHRHART = "ehrhart"
    BOTH = "both"


FamilyOption = Annotated[
    FamilyKind,
    typer.Option("--family", "-f", case_sensitive=False, help="Polytope family"),
]
AOption = Annotated[Optional[int], typer.Option("--a", help="Hypersimplex: number of ones")]
BOption = Annotated[Optional[int], typer.Option("--b", help="Hypersimplex: number of zeros")]
ROption = Annotated[Optional[int], typer.Option("--r", help="Dilation factor / cube side")]
NOption = Annotated[Optional[int], typer.Option("--n", help="Ambient dimension")]
SOption = Annotated[Optional[int], typer.Option("--s", help="Slice level")]
FormatOption = Annotated[
    OutputFormat,
    typer.Option("--format", case_sensitive=False, help="Output format"),
]


@app.callback()
def session() -> None:
    """Winding-graded decorated ordered set partitions versus Ehrhart h*-vectors."""
    cli_logger.info("cli-session-start", trace_id=TRACE_ID)


def _require(value: Optional[int], flag: str, family: FamilyKind) -> int:
    if value is None:
        raise typer.BadParameter(f"{flag} is required for --family {family.value}", param_hint=flag)
    return value


def family_from_options(
    family: FamilyKind,
    a: Optional[int],
    b: Optional[int],
    r: Optional[int],
    n: Optional[int],
    s: Optional[int],
) -> FamilySpec:
    """Build a FamilySpec from CLI flags; bad parameters become usage errors (exit 2)."""

    try:
        if family is FamilyKind.HYPERSIMPLEX:
            return FamilySpec.hypersimplex(_require(a, "--a", family), _require(b, "--b", family))
        if family is FamilyKind.DILATED_SIMPLEX:
            return FamilySpec.dilated_simplex(
                _require(r, "--r", family), _require(n, "--n", family)
            )
        return FamilySpec.cube_slice(
            _require(r, "--r", family), _require(n, "--n", family), _require(s, "--s", family)
        )
    except InvalidFamily as e:
        raise typer.BadParameter(str(e)) from e


def family_record(family: FamilySpec) -> dict[str, Any]:
    return {"kind": family.kind.value, "params": family.params}


def _tuple_text(values: Iterable[int]) -> str:
    return "(" + ",".join(str(v) for v in values) + ")"


def _print_unclipped(table: Table) -> None:
    """Print ``table`` at its natural width; vectors are never ellipsised or folded."""
    natural = Measurement.get(console, console.options.update(width=10_000), table).maximum
    Console(highlight=False, width=max(console.width, natural)).print(table)


def _emit_json(record: OutputRecord) -> None:
    typer.echo(json.dumps(record.model_dump(mode="json"), indent=2))


def _partition_row(
    partition: DecoratedOSP, family: FamilySpec, with_winding: bool
) -> dict[str, Any]:
    row: dict[str, Any] = {"partition": format_partition(partition)}
    if with_winding:
        data = winding_vector(partition, family)
        row["positions"] = list(data.positions)
        row["winding_vector"] = list(data.winding_vector)
        row["level"] = data.level
        row["winding_number"] = data.winding_number
    return row


def _flat_cell(value: Any) -> str:
    return _tuple_text(value) if isinstance(value, list) else str(value)


@app.command("enumerate")
def cmd_enumerate(
    family: FamilyOption,
    a: AOption = None,
    b: BOption = None,
    r: ROption = None,
    n: NOption = None,
    s: SOption = None,
    output_format: FormatOption = OutputFormat.TABLE,
    with_winding: Annotated[
        bool,
        typer.Option("--with-winding", help="Add positions, winding vector, level, winding number"),
    ] = False,
    group_by_winding: Annotated[
        bool,
        typer.Option("--group-by-winding", help="Order rows by winding class"),
    ] = False,
) -> None:
    """Print every canonical admissible partition of a family instance."""
    spec = family_from_options(family, a, b, r, n, s)
    cli_logger.info("cli-enumerate-start", family=spec.label, format=output_format.value)

    partitions: Iterator[DecoratedOSP]
    if group_by_winding:
        partitions = (p for members in winding_classes(spec).values() for p in members)
    else:
        partitions = enumerate_partitions(spec)
    rows = (_partition_row(p, spec, with_winding) for p in partitions)
    columns = ENUMERATE_COLUMNS if with_winding else ENUMERATE_COLUMNS[:1]

    count = 0
    if output_format is OutputFormat.JSON:
        collected = list(rows)
        count = len(collected)
        _emit_json(
            OutputRecord(
                command="enumerate",
                family=family_record(spec),
                payload={"count": count, "partitions": collected},
            )
        )
    elif output_format is OutputFormat.CSV:
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_flat_cell(row[c]) for c in columns])
            count += 1
    else:
        console.print("\t".join(columns), markup=False)
        for row in rows:
            line = "\t".join(_flat_cell(row[c]) for c in columns)
            console.print(line, markup=False, soft_wrap=True)
            count += 1

    cli_logger.info("cli-enumerate-complete", family=spec.label, count=count)


@app.command("hstar")
def cmd_hstar(
    family: FamilyOption,
    a: AOption = None,
    b: BOption = None,
    r: ROption = None,
    n: NOption = None,
    s: SOption = None,
    method: Annotated[
        Method,
        typer.Option("--method", case_sensitive=False, help="winding, ehrhart or both"),
    ] = Method.BOTH,
    output_format: FormatOption = OutputFormat.TABLE,
) -> None:
    """Compute the winding histogram and/or the Ehrhart h*-vector.

    The exit code is 0 whether or not the two agree; use ``verify`` for a gated check.
    """
    spec = family_from_options(family, a, b, r, n, s)
    cli_logger.info("cli-hstar-start", family=spec.label, method=method.value)

    vectors: dict[str, list[int]] = {}
    if method in (Method.WINDING, Method.BOTH):
        vectors["winding"] = list(grading_histogram(spec).trimmed().coeffs)
    if method in (Method.EHRHART, Method.BOTH):
        vectors["ehrhart"] = list(hstar_slice(spec.r, spec.s, spec.n).trimmed().coeffs)
    match = vectors["winding"] == vectors["ehrhart"] if method is Method.BOTH else None

    if output_format is OutputFormat.JSON:
        payload: dict[str, Any] = dict(vectors)
        if match is not None:
            payload["match"] = match
        _emit_json(OutputRecord(command="hstar", family=family_record(spec), payload=payload))
    elif output_format is OutputFormat.CSV:
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(["method", "hstar", "volume"])
        for name, coeffs in vectors.items():
            writer.writerow([name, _tuple_text(coeffs), sum(coeffs)])
    else:
        table = Table("Method", "h*-vector", "Volume", title=spec.label, header_style="bold")
        for name, coeffs in vectors.items():
            table.add_row(name, _tuple_text(coeffs), str(sum(coeffs)))
        _print_unclipped(table)
        if match is not None:
            console.print("match: " + ("[green]true[/]" if match else "[red]false[/]"))

    cli_logger.info("cli-hstar-complete", family=spec.label, match=match)


def _verify_table(reports: list[VerificationReport], timings: bool) -> Table:
    columns = ["Family", "Histogram", "h*", "Match", "Count", "Checks"]
    if timings:
        columns.append("Seconds")
    table = Table(*columns, title="[bold]Verification[/]", header_style="bold", box=None)
    for report in reports:
        failed = [c.name for c in report.failed_checks]
        row = [
            report.family.label,
            report.histogram.render(),
            report.hstar.render(),
            "[green]yes[/]" if report.match else "[red]NO[/]",
            str(report.total_count),
            "[green]ok[/]" if not failed else "[red]" + ",".join(failed) + "[/]",
        ]
        if timings:
            row.append(f"{report.elapsed:.3f}")
        table.add_row(*row)
    return table


def _resolve_plan(
    plan_path: Optional[Path],
    family: Optional[FamilyKind],
    bounds: dict[str, Optional[int]],
) -> SweepPlan:
    try:
        if plan_path is not None:
            return load_sweep_plan(plan_path)
        if family is None:
            raise typer.BadParameter("either --family or --plan is required", param_hint="--family")
        return SweepPlan(sweeps=[FamilyRange(family=family, **bounds)])
    except (InvalidRange, InvalidFamily, ValidationError, yaml.YAMLError, OSError) as e:
        raise typer.BadParameter(str(e)) from e


@app.command("verify")
def cmd_verify(
    family: Annotated[
        Optional[FamilyKind],
        typer.Option("--family", "-f", case_sensitive=False, help="Polytope family to sweep"),
    ] = None,
    n: Annotated[Optional[int], typer.Option("--n", help="Fix n")] = None,
    min_n: Annotated[Optional[int], typer.Option("--min-n")] = None,
    max_n: Annotated[Optional[int], typer.Option("--max-n")] = None,
    r: Annotated[Optional[int], typer.Option("--r", help="Fix r")] = None,
    min_r: Annotated[Optional[int], typer.Option("--min-r")] = None,
    max_r: Annotated[Optional[int], typer.Option("--max-r")] = None,
    s: Annotated[Optional[int], typer.Option("--s", help="Fix the slice level")] = None,
    a: Annotated[Optional[int], typer.Option("--a", help="Fix the hypersimplex a")] = None,
    plan_path: Annotated[
        Optional[Path],
        typer.Option("--plan", help="YAML sweep plan instead of range flags", dir_okay=False),
    ] = None,
    jobs: Annotated[
        Optional[int],
        typer.Option("--jobs", "-j", envvar="OSPWIND_JOBS", help="Worker processes"),
    ] = None,
    output_format: FormatOption = OutputFormat.TABLE,
    timings: Annotated[
        bool, typer.Option("--timings", help="Include elapsed seconds per report")
    ] = False,
    provenance_path: Annotated[
        Optional[Path],
        typer.Option("--provenance", help="Write a provenance sidecar here", dir_okay=False),
    ] = None,
    dump_limit: Annotated[
        int,
        typer.Option("--dump-limit", help="Partitions dumped per winding class on failure"),
    ] = DEFAULT_DUMP_LIMIT,
) -> None:
    """Check the conjecture over a parameter sweep.

    Exits 0 when every instance matches and passes its property checks, 1 otherwise.
    """
    bounds = {
        "min_n": n if n is not None else min_n,
        "max_n": n if n is not None else max_n,
        "min_r": r if r is not None else min_r,
        "max_r": r if r is not None else max_r,
        "min_s": s,
        "max_s": s,
        "min_a": a,
        "max_a": a,
    }
    plan = _resolve_plan(plan_path, family, {k: v for k, v in bounds.items() if v is not None})
    workers = jobs if jobs is not None else (plan.jobs or os.cpu_count() or 1)
    if workers < 1:
        raise typer.BadParameter(f"--jobs must be positive, got {workers}", param_hint="--jobs")
    if dump_limit < 0:
        raise typer.BadParameter("--dump-limit must be nonnegative", param_hint="--dump-limit")

    cli_logger.info("cli-verify-start", instances=len(plan.instances()), workers=workers)
    try:
        reports = sweep(plan, workers=workers, dump_limit=dump_limit)
    except OspwindError as e:
        cli_logger.exception("cli-verify-error", error=str(e))
        err_console.print(f"[red]Error: {e}")
        raise typer.Exit(1) from e

    if provenance_path is not None:
        save_provenance(capture_provenance(plan, workers=workers), provenance_path)

    records = [report_to_dict(report, include_timing=timings) for report in reports]
    if output_format is OutputFormat.JSON:
        _emit_json(
            OutputRecord(
                command="verify",
                payload={
                    "reports": records,
                    "summary": {
                        "instances": len(reports),
                        "matches": sum(rep.match for rep in reports),
                        "failed": sum(not rep.ok for rep in reports),
                    },
                },
            )
        )
    elif output_format is OutputFormat.CSV:
        header = ["family", "params", "histogram", "hstar", "match", "ok", "total_count",
                  "expected_count", "failed_checks"]
        if timings:
            header.append("elapsed_seconds")
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(header)
        for report, record in zip(reports, records):
            row = [
                record["family"]["kind"],
                ";".join(f"{k}={v}" for k, v in record["family"]["params"].items()),
                _tuple_text(record["histogram"]),
                _tuple_text(record["hstar"]),
                str(record["match"]).lower(),
                str(record["ok"]).lower(),
                record["total_count"],
                "" if record["expected_count"] is None else record["expected_count"],
                ";".join(c.name for c in report.failed_checks),
            ]
            if timings:
                row.append(record["elapsed_seconds"])
            writer.writerow(row)
    else:
        _print_unclipped(_verify_table(reports, timings))

    failed = [rep for rep in reports if not rep.ok]
    cli_logger.info("cli-verify-complete", instances=len(reports), failed=len(failed))
    if failed:
        raise typer.Exit(1)


def main() -> None:
    """Entry point for the CLI."""
    try:
        app()
    except KeyboardInterrupt:
        err_console.print("\n[yellow]Operation cancelled by user")
        raise typer.Exit(1) from None


if __name__ == "__main__":
    main()
