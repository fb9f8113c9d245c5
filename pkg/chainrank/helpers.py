"""Helpers for mapping results to JSON and loading generator files."""

from __future__ import annotations

import logging
from pathlib import Path
from typing import Any

from .const import REPORT_INVARIANT_KEYS
from .exceptions import InvalidGeneratorFile
from .groups import FinGroup, Permutation, generate_group, parse_cycles
from .models import CatalogEntry, Limits, RankReport, VerifyOutcome
from .ordinal import Ordinal

LOGGER = logging.getLogger(__name__)

REPORT_SCHEMA: dict[str, set[str]] = {
    "": {"group", "marking", "invariants", "state_counts"},
    "group": {"order", "degree", "generators"},
    "marking": {"length", "seed"},
}


def _value(value: Ordinal | int) -> str | int:
    return str(value) if isinstance(value, Ordinal) else value


def report_to_dict(report: RankReport, timings: bool = False) -> dict[str, Any]:
    """Return the JSON form of a report; ``elapsed_ms`` only with timings."""
    data: dict[str, Any] = {
        "group": {
            "order": report.order,
            "degree": report.degree,
            "generators": list(report.generators),
        },
        "marking": {"length": report.marking_length, "seed": report.marking_seed},
        "invariants": {
            REPORT_INVARIANT_KEYS[key]: _value(value)
            for key, value in report.invariants.items()
        },
        "state_counts": {
            REPORT_INVARIANT_KEYS[key]: count for key, count in report.state_counts.items()
        },
    }
    if report.expression is not None:
        data["expression"] = report.expression
    if timings:
        data["elapsed_ms"] = {
            REPORT_INVARIANT_KEYS[key]: round(ms, 3)
            for key, ms in report.elapsed_ms.items()
        }
    return data


def validate_report_dict(data: dict[str, Any]) -> list[str]:
    """Return the schema violations of a report dict; empty when valid."""
    problems = [f"missing {key!r}" for key in REPORT_SCHEMA[""] if key not in data]
    for section in ("group", "marking"):
        if isinstance(data.get(section), dict):
            problems += [
                f"missing {section}.{key}"
                for key in REPORT_SCHEMA[section]
                if key not in data[section]
            ]
    for name, value in data.get("invariants", {}).items():
        if name not in REPORT_INVARIANT_KEYS.values():
            problems.append(f"unknown invariant {name!r}")
        elif name == "deg":
            if not isinstance(value, int):
                problems.append("deg must be an integer")
        else:
            try:
                Ordinal.parse(value)
            except (TypeError, ValueError):
                problems.append(f"{name} is not an ordinal string: {value!r}")
    return problems


def outcome_to_dict(outcome: VerifyOutcome) -> dict[str, Any]:
    """Return the JSON form of a verification outcome."""
    return {
        "suite": str(outcome.suite),
        "cases_run": outcome.cases_run,
        "skipped": outcome.skipped,
        "passed": outcome.passed,
        "failures": [
            {
                "group": failure.group,
                "lemma": failure.lemma,
                "expected": failure.expected,
                "observed": failure.observed,
            }
            for failure in outcome.failures
        ],
    }


def catalog_to_dict(entry: CatalogEntry) -> dict[str, Any]:
    """Return the JSON form of a catalog entry."""
    return {
        "name": entry.name,
        "expression": entry.expression,
        "expected_order": entry.expected_order,
    }


def parse_generator_text(text: str) -> tuple[int, list[Permutation]]:
    """Parse a ``degree N`` header followed by one permutation per line."""
    degree: int | None = None
    perms: list[Permutation] = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if degree is None:
            parts = line.split()
            if len(parts) != 2 or parts[0] != "degree" or not parts[1].isdigit():
                raise InvalidGeneratorFile(
                    f"Line {number}: expected 'degree N', got {line!r}"
                )
            degree = int(parts[1])
            if degree < 1:
                raise InvalidGeneratorFile(f"Line {number}: degree must be positive")
            continue
        perms.append(parse_cycles(line, degree))
    if degree is None:
        raise InvalidGeneratorFile("Generator file has no 'degree N' line")
    LOGGER.debug("Parsed %s generators of degree %s", len(perms), degree)
    return degree, perms


def load_generator_file(path: Path, limits: Limits | None = None) -> FinGroup:
    """Load a generator file and close it to a group."""
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as err:
        raise InvalidGeneratorFile(f"Cannot read {path}: {err}") from err
    degree, perms = parse_generator_text(text)
    return generate_group(degree, perms, limits)


def render_table(rows: list[tuple[str, str]]) -> str:
    """Render two-column rows with the first column padded."""
    if not rows:
        return ""
    width = max(len(name) for name, _ in rows)
    return "\n".join(f"{name.ljust(width)}  {value}" for name, value in rows) + "\n"


def report_table_rows(data: dict[str, Any]) -> list[tuple[str, str]]:
    """Flatten a report dict into table rows."""
    rows = [
        ("order", str(data["group"]["order"])),
        ("degree", str(data["group"]["degree"])),
        ("generators", " ".join(data["group"]["generators"]) or "()"),
        ("marking length", str(data["marking"]["length"])),
    ]
    rows += [(name, str(value)) for name, value in data["invariants"].items()]
    return rows
