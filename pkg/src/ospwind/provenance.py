# SPDX-License-Identifier: MPL-2.0
"""Provenance sidecars for verification sweeps.

A sweep is reproducible from its plan, the package versions and the code revision, so
the sidecar records exactly those plus a fingerprint of the plan. It is written next
to, never into, the report stream so that report output stays byte-identical across
runs.

Example:
    >>> from ospwind.plans import FamilyRange, SweepPlan
    >>> plan = SweepPlan(sweeps=[FamilyRange(family="slice", min_r=2, max_r=2)])
    >>> prov = capture_provenance(plan, workers=4, include_git_info=False)
    >>> prov["plan"]["instances"] > 0
    True
"""
from __future__ import annotations

import hashlib
import importlib.metadata
import json
import platform
import subprocess
import sys
import uuid
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Optional

import yaml

from .plans import SweepPlan

__all__ = ["capture_provenance", "plan_fingerprint", "save_provenance"]

_TRACKED_PACKAGES = ("ospwind", "pydantic", "typer", "structlog", "PyYAML", "rich")


def _package_versions(packages: tuple[str, ...]) -> dict[str, str]:
    versions = {}
    for pkg in packages:
        try:
            versions[pkg] = importlib.metadata.version(pkg)
        except importlib.metadata.PackageNotFoundError:
            versions[pkg] = "not installed"
    return versions


def _system_info() -> dict[str, Any]:
    return {
        "platform": f"{platform.system()} {platform.release()}",
        "machine": platform.machine(),
        "python": platform.python_version(),
        "implementation": platform.python_implementation(),
        "executable": sys.executable,
    }


def _git(*args: str) -> str:
    return subprocess.check_output(["git", *args], stderr=subprocess.DEVNULL).decode().strip()


def _git_info() -> Optional[dict[str, Any]]:
    """Revision of the working tree, or None outside a git checkout."""
    try:
        return {
            "commit": _git("rev-parse", "HEAD"),
            "branch": _git("rev-parse", "--abbrev-ref", "HEAD"),
            "dirty": bool(_git("status", "--porcelain")),
        }
    except (subprocess.CalledProcessError, FileNotFoundError):
        return None


def plan_fingerprint(plan: SweepPlan) -> str:
    """sha256 of the canonical JSON form of the plan's instance list."""

    canonical = json.dumps(
        [spec.model_dump(mode="json") for spec in plan.instances()],
        sort_keys=True,
        separators=(",", ":"),
    )
    return hashlib.sha256(canonical.encode()).hexdigest()


def capture_provenance(
    plan: SweepPlan,
    workers: int,
    include_system_info: bool = True,
    include_git_info: bool = True,
) -> dict[str, Any]:
    provenance: dict[str, Any] = {
        "provenance_id": str(uuid.uuid4()),
        "timestamp": datetime.now(timezone.utc).isoformat(),
        "tool": {"name": "ospwind", "version": _package_versions(("ospwind",))["ospwind"]},
        "plan": {
            "sha256": plan_fingerprint(plan),
            "instances": len(plan.instances()),
            "document": plan.model_dump(mode="json", exclude_none=True),
        },
        "workers": workers,
        "dependencies": _package_versions(_TRACKED_PACKAGES),
    }
    if include_system_info:
        provenance["system"] = _system_info()
    if include_git_info:
        provenance["repository"] = _git_info()
    return provenance


def save_provenance(provenance: dict[str, Any], output_path: str | Path) -> Path:
    """Write the sidecar as YAML for ``.yaml``/``.yml`` paths, JSON otherwise."""

    output_path = Path(output_path)
    output_path.parent.mkdir(parents=True, exist_ok=True)
    if output_path.suffix in {".yaml", ".yml"}:
        output_path.write_text(yaml.safe_dump(provenance, sort_keys=False))
    else:
        output_path.write_text(json.dumps(provenance, indent=2))
    return output_path
