"""Canonical JSON and fixed-width text rendering for reports.

Reports double as regression fixtures, so serialization is pinned: keys
keep their construction order, floats print with 17 significant digits
(full round-trip precision for doubles), and there is no whitespace.
Running the same scenario on the same build therefore yields byte-identical
output.
"""

from __future__ import annotations

import json
import math

import numpy as np


def _format_float(x: float) -> str:
    if math.isnan(x) or math.isinf(x):
        raise ValueError(f"non-finite float {x!r} cannot be serialized")
    return format(x, ".17g")


def canonical_json(value) -> str:
    """Serialize to canonical JSON text (no trailing newline)."""
    if isinstance(value, bool) or isinstance(value, np.bool_):
        return "true" if value else "false"
    if value is None:
        return "null"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return _format_float(float(value))
    if isinstance(value, str):
        return json.dumps(value, ensure_ascii=False)
    if isinstance(value, dict):
        parts = []
        for key, item in value.items():
            if not isinstance(key, str):
                raise TypeError(f"JSON object keys must be strings, got {key!r}")
            parts.append(f"{json.dumps(key, ensure_ascii=False)}:{canonical_json(item)}")
        return "{" + ",".join(parts) + "}"
    if isinstance(value, (list, tuple)):
        return "[" + ",".join(canonical_json(item) for item in value) + "]"
    if isinstance(value, np.ndarray):
        return canonical_json(value.tolist())
    raise TypeError(f"cannot serialize {type(value).__name__} to JSON")


def render_report_lines(reports: list[dict]) -> str:
    """One canonical JSON object per line, one line per check report."""
    return "".join(canonical_json(r) + "\n" for r in reports)


def render_report_table(reports: list[dict]) -> str:
    """Fixed-width table: check id, max residual, pass/fail."""
    lines = [f"{'CHECK':<8} {'MAX RESIDUAL':>14}  RESULT"]
    for r in reports:
        worst = max(r["residuals"].values(), default=0.0)
        status = "PASS" if r["passed"] else "FAIL"
        lines.append(f"{r['check_id']:<8} {worst:>14.6e}  {status}")
    return "\n".join(lines) + "\n"


def render_sweep_table(aggregate: dict) -> str:
    """Fixed-width sweep summary with one row per check id."""
    lines = [
        f"scenarios run: {aggregate['scenarios_run']}  "
        f"passed: {aggregate['scenarios_passed']}",
        f"{'CHECK':<8} {'RUNS':>6} {'PASSED':>7} {'MAX RESIDUAL':>14}",
    ]
    for check_id, stats in aggregate["checks"].items():
        worst = stats["max_residual"]
        worst_s = f"{worst:>14.6e}" if worst is not None else f"{'-':>14}"
        lines.append(
            f"{check_id:<8} {stats['runs']:>6} {stats['passed']:>7} {worst_s}"
        )
    if aggregate["negative_controls"]:
        lines.append(f"{'NEGATIVE':<8} {'RUNS':>6} {'FAILED*':>7} {'MIN RESIDUAL':>14}")
        for check_id, stats in aggregate["negative_controls"].items():
            low = stats["min_residual"]
            low_s = f"{low:>14.6e}" if low is not None else f"{'-':>14}"
            lines.append(
                f"{check_id:<8} {stats['runs']:>6} {stats['failed_as_expected']:>7} {low_s}"
            )
        lines.append("(* negative controls are expected to fail)")
    lines.append("all passed" if aggregate["all_passed"] else "FAILURES PRESENT")
    return "\n".join(lines) + "\n"
